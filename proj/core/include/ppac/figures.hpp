#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ppac/simulation.hpp"

namespace ppac {

// Second-order example: a1 in [0,2], a2 in [1,3], b1 in [0,1], b2 in [-5,-2].
// Every model in the box is open-loop unstable and non-minimum phase.
[[nodiscard]] ThetaBox example_box();
// Step-tracking sub-box: a2 = 1 and b2 = -3.5 fixed.
[[nodiscard]] ThetaBox tracking_box();

// True plant for the stability runs: (a1, a2, b1, b2) = (2, 3, 1, -2).
[[nodiscard]] Eigen::VectorXd example_theta_star();

inline constexpr long kFig1Horizon = 2000;
inline constexpr long kFig2Horizon = 10000;
inline constexpr long kFig3Horizon = 5000;
inline constexpr long kStepHorizon = 2000;

// y(0) = y(-1) = 0.01, u = 0 in phi0, no noise, deadbeat target.
[[nodiscard]] SimConfig fig1a_config(const EstimatorVariant& estimator);
// zero initial state, d(t) = amplitude sin(5t)
[[nodiscard]] SimConfig fig1b_config(const EstimatorVariant& estimator, double noise_amplitude = 0.01);
// drifting plant, d = 0.01 sin(5t), unmodelled block switched on at t = 5000
[[nodiscard]] SimConfig fig2_config();
// step-tracking design, drifting a1/b1, square-wave reference, noise 0.01 -> 0.05 at t = 2500
[[nodiscard]] SimConfig fig3_config();
// fig1a plant started from the exact estimate
[[nodiscard]] SimConfig deadbeat_exact_config();
// step-tracking design, constant plant in the sub-box, d = 0, y* = 1
[[nodiscard]] SimConfig step_tracking_config();

struct FigureSeries {
  std::string name;
  SimConfig config;
};

// Series plotted in each figure ("1a", "1b", "2", "3"); ConfigInvalid for
// unknown ids.
[[nodiscard]] std::vector<FigureSeries> figure_series(std::string_view id);

}  // namespace ppac
