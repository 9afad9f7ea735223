#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ppac/simulation.hpp"

namespace ppac::cli {

// JSON experiment description. Either a complete document or one naming a
// built-in preset under "base" and overriding any subset of its fields:
//
//   {
//     "base": "1a/ideal",
//     "box": {"a": [[0, 2], [1, 3]], "b": [[0, 1], [-5, -2]]},
//     "plant": {"a": [2, {"offset": 1, "amplitude": 1, "freq": 0.001}], "b": [1, -2]},
//     "estimator": {"type": "ideal", "delta": "inf"} | {"type": "classical", "alpha": 1, "beta": 1},
//     "target": [1, 0, 0, 0, 0],
//     "mode": "standard" | "step_tracking",
//     "disturbance": <signal>, "input_disturbance": <signal>, "reference": <signal>,
//     "phi0": [...], "initial_estimate": {"a": [...], "b": [...]},
//     "t0": 0, "horizon": 2000,
//     "unmodelled": {"beta": 0.75, "m0": 0, "gains": [[5000, 0.025]]}
//   }
//
// <signal> is {"type": "zero" | "constant" | "sinusoid" | "square" |
// "piecewise_sinusoid" | "samples", ...}. Any malformed field raises
// ppac::Error(ConfigInvalid) naming its JSON path.
[[nodiscard]] SimConfig config_from_json(const nlohmann::json& doc);
[[nodiscard]] nlohmann::json config_to_json(const SimConfig& config);

// "1a/ideal", "1a/classical", "1b/ideal", "1b/classical", "2/ideal",
// "3/ideal", "deadbeat_exact", "step_tracking".
[[nodiscard]] std::vector<std::string> preset_names();
[[nodiscard]] SimConfig preset(std::string_view name);

}  // namespace ppac::cli
