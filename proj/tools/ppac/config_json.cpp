#include "config_json.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "ppac/error.hpp"
#include "ppac/figures.hpp"

namespace ppac::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ConfigInvalid, path + ": " + what);
}

void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(path, "expected an object");
  const std::set<std::string> known(keys.begin(), keys.end());
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) fail(path + "." + key, "unknown field");
  }
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

double number_or(const json& obj, const char* key, const std::string& path, double fallback) {
  return obj.contains(key) ? number(obj.at(key), path + "." + key) : fallback;
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Eigen::VectorXd vector_of(const json& j, const std::string& path) {
  const auto v = numbers(j, path);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json vector_json(const Eigen::VectorXd& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

// [[t, value], ...]
template <class Out, class Make>
std::vector<Out> pairs(const json& j, const std::string& path, Make make) {
  if (!j.is_array()) fail(path, "expected an array of [time, value] pairs");
  std::vector<Out> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) fail(at, "expected [time, value]");
    out.push_back(make(integer(j[i][0], at + "[0]"), number(j[i][1], at + "[1]")));
  }
  return out;
}

std::vector<Interval> intervals(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of [lo, hi] pairs");
  std::vector<Interval> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto pair = numbers(j[i], path + "[" + std::to_string(i) + "]");
    if (pair.size() != 2) fail(path + "[" + std::to_string(i) + "]", "expected [lo, hi]");
    out.push_back({pair[0], pair[1]});
  }
  return out;
}

ThetaBox box_from(const json& j, const std::string& path) {
  allow_keys(j, path, {"a", "b"});
  if (!j.contains("a") || !j.contains("b")) fail(path, "needs both \"a\" and \"b\"");
  const auto a = intervals(j.at("a"), path + ".a");
  const auto b = intervals(j.at("b"), path + ".b");
  if (a.size() != b.size()) fail(path, "\"a\" and \"b\" must have the same length");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].lo > a[i].hi || b[i].lo > b[i].hi) fail(path, "interval " + std::to_string(i) + " has lo > hi");
  }
  return ThetaBox::from_intervals(a, b);
}

json box_json(const ThetaBox& box) {
  json a = json::array();
  json b = json::array();
  const Eigen::Index n = box.order();
  for (Eigen::Index i = 0; i < n; ++i) {
    a.push_back({-box.hi()(i), -box.lo()(i)});
    b.push_back({box.lo()(n + i), box.hi()(n + i)});
  }
  return {{"a", a}, {"b", b}};
}

CoefficientPath path_from(const json& j, const std::string& path) {
  if (j.is_number()) return CoefficientPath::constant(number(j, path));
  allow_keys(j, path, {"offset", "amplitude", "freq", "wave", "jumps"});
  CoefficientPath p;
  p.offset = number_or(j, "offset", path, 0.0);
  p.amplitude = number_or(j, "amplitude", path, 0.0);
  p.angular_freq = number_or(j, "freq", path, 0.0);
  if (j.contains("wave")) {
    const json& w = j.at("wave");
    if (w == "sin") {
      p.wave = Wave::Sin;
    } else if (w == "cos") {
      p.wave = Wave::Cos;
    } else {
      fail(path + ".wave", "expected \"sin\" or \"cos\"");
    }
  }
  if (j.contains("jumps")) {
    p.jumps = pairs<CoefficientPath::Jump>(j.at("jumps"), path + ".jumps",
                                           [](long t, double v) { return CoefficientPath::Jump{t, v}; });
  }
  return p;
}

json path_json(const CoefficientPath& p) {
  if (p.is_constant()) return p.offset;
  json j = {{"offset", p.offset}, {"amplitude", p.amplitude}, {"freq", p.angular_freq},
            {"wave", p.wave == Wave::Sin ? "sin" : "cos"}};
  if (!p.jumps.empty()) {
    json jumps = json::array();
    for (const auto& jump : p.jumps) jumps.push_back({jump.t, jump.size});
    j["jumps"] = jumps;
  }
  return j;
}

ParamSchedule schedule_from(const json& j, const std::string& path) {
  allow_keys(j, path, {"a", "b"});
  if (!j.contains("a") || !j.contains("b") || !j.at("a").is_array() || !j.at("b").is_array()) {
    fail(path, "needs arrays \"a\" and \"b\"");
  }
  std::vector<CoefficientPath> a;
  std::vector<CoefficientPath> b;
  for (std::size_t i = 0; i < j.at("a").size(); ++i) a.push_back(path_from(j.at("a")[i], path + ".a[" + std::to_string(i) + "]"));
  for (std::size_t i = 0; i < j.at("b").size(); ++i) b.push_back(path_from(j.at("b")[i], path + ".b[" + std::to_string(i) + "]"));
  if (a.empty() || a.size() != b.size()) fail(path, "\"a\" and \"b\" must be non-empty and equally long");
  return ParamSchedule(std::move(a), std::move(b));
}

json schedule_json(const ParamSchedule& s) {
  json a = json::array();
  json b = json::array();
  for (const auto& p : s.a()) a.push_back(path_json(p));
  for (const auto& p : s.b()) b.push_back(path_json(p));
  return {{"a", a}, {"b", b}};
}

EstimatorVariant estimator_from(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("type")) fail(path, "needs a \"type\"");
  const json& type = j.at("type");
  if (type == "ideal") {
    allow_keys(j, path, {"type", "delta"});
    IdealVariant v;
    if (j.contains("delta")) {
      const json& d = j.at("delta");
      if (d.is_null() || d == "inf") {
        v.delta = std::numeric_limits<double>::infinity();
      } else {
        v.delta = number(d, path + ".delta");
      }
    }
    return v;
  }
  if (type == "classical") {
    allow_keys(j, path, {"type", "alpha", "beta"});
    return ClassicalVariant{number_or(j, "alpha", path, 1.0), number_or(j, "beta", path, 1.0)};
  }
  fail(path + ".type", "expected \"ideal\" or \"classical\"");
}

json estimator_json(const EstimatorVariant& v) {
  if (const auto* ideal = std::get_if<IdealVariant>(&v)) {
    return {{"type", "ideal"}, {"delta", std::isinf(ideal->delta) ? json("inf") : json(ideal->delta)}};
  }
  const auto& c = std::get<ClassicalVariant>(v);
  return {{"type", "classical"}, {"alpha", c.alpha}, {"beta", c.beta}};
}

Signal signal_from(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("type")) fail(path, "needs a \"type\"");
  const json& type = j.at("type");
  if (type == "zero") {
    allow_keys(j, path, {"type"});
    return ZeroSignal{};
  }
  if (type == "constant") {
    allow_keys(j, path, {"type", "value"});
    return ConstantSignal{number_or(j, "value", path, 0.0)};
  }
  if (type == "sinusoid") {
    allow_keys(j, path, {"type", "amplitude", "freq"});
    return Sinusoid{number_or(j, "amplitude", path, 0.0), number_or(j, "freq", path, 0.0)};
  }
  if (type == "square") {
    allow_keys(j, path, {"type", "amplitude", "freq"});
    return SquareSign{number_or(j, "freq", path, 0.0), number_or(j, "amplitude", path, 1.0)};
  }
  if (type == "piecewise_sinusoid") {
    allow_keys(j, path, {"type", "freq", "amplitudes"});
    PiecewiseAmplitude p;
    p.angular_freq = number_or(j, "freq", path, 0.0);
    if (j.contains("amplitudes")) {
      p.breakpoints = pairs<PiecewiseAmplitude::Breakpoint>(
          j.at("amplitudes"), path + ".amplitudes",
          [](long t, double v) { return PiecewiseAmplitude::Breakpoint{t, v}; });
    }
    return p;
  }
  if (type == "samples") {
    allow_keys(j, path, {"type", "start", "values"});
    Samples s;
    s.start = j.contains("start") ? integer(j.at("start"), path + ".start") : 0;
    if (j.contains("values")) s.values = numbers(j.at("values"), path + ".values");
    return s;
  }
  fail(path + ".type", "unknown signal type");
}

json signal_json(const Signal& s) {
  return std::visit(
      [](const auto& k) -> json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ZeroSignal>) {
          return {{"type", "zero"}};
        } else if constexpr (std::is_same_v<K, ConstantSignal>) {
          return {{"type", "constant"}, {"value", k.value}};
        } else if constexpr (std::is_same_v<K, Sinusoid>) {
          return {{"type", "sinusoid"}, {"amplitude", k.amplitude}, {"freq", k.angular_freq}};
        } else if constexpr (std::is_same_v<K, SquareSign>) {
          return {{"type", "square"}, {"amplitude", k.amplitude}, {"freq", k.angular_freq}};
        } else if constexpr (std::is_same_v<K, PiecewiseAmplitude>) {
          json amps = json::array();
          for (const auto& b : k.breakpoints) amps.push_back({b.start, b.amplitude});
          return {{"type", "piecewise_sinusoid"}, {"freq", k.angular_freq}, {"amplitudes", amps}};
        } else {
          return {{"type", "samples"}, {"start", k.start}, {"values", k.values}};
        }
      },
      s.kind());
}

Eigen::VectorXd estimate_from(const json& j, const std::string& path) {
  allow_keys(j, path, {"a", "b"});
  if (!j.contains("a") || !j.contains("b")) fail(path, "needs both \"a\" and \"b\"");
  const auto a = numbers(j.at("a"), path + ".a");
  const auto b = numbers(j.at("b"), path + ".b");
  if (a.size() != b.size()) fail(path, "\"a\" and \"b\" must have the same length");
  return theta_from_ab(a, b);
}

json estimate_json(const Eigen::VectorXd& theta) {
  const Eigen::Index n = theta.size() / 2;
  std::vector<double> a;
  std::vector<double> b;
  for (Eigen::Index i = 0; i < n; ++i) {
    a.push_back(-theta(i));
    b.push_back(theta(n + i));
  }
  return {{"a", a}, {"b", b}};
}

UnmodelledBlock unmodelled_from(const json& j, const std::string& path) {
  allow_keys(j, path, {"beta", "m0", "gains"});
  UnmodelledBlock u;
  u.beta = number_or(j, "beta", path, u.beta);
  u.m = number_or(j, "m0", path, 0.0);
  if (!(u.beta >= 0.0 && u.beta < 1.0)) fail(path + ".beta", "must lie in [0, 1)");
  if (j.contains("gains")) {
    u.gains = pairs<UnmodelledBlock::GainStep>(j.at("gains"), path + ".gains",
                                               [](long t, double g) { return UnmodelledBlock::GainStep{t, g}; });
  }
  return u;
}

json unmodelled_json(const UnmodelledBlock& u) {
  json gains = json::array();
  for (const auto& g : u.gains) gains.push_back({g.start, g.gain});
  return {{"beta", u.beta}, {"m0", u.m}, {"gains", gains}};
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"1a/ideal", "1a/classical", "1b/ideal", "1b/classical", "2/ideal", "3/ideal", "deadbeat_exact",
          "step_tracking"};
}

SimConfig preset(std::string_view name) {
  if (name == "deadbeat_exact") return deadbeat_exact_config();
  if (name == "step_tracking") return step_tracking_config();
  const std::string full(name);
  const auto slash = full.find('/');
  if (slash != std::string::npos) {
    const std::string series = full.substr(slash + 1);
    for (auto& s : figure_series(full.substr(0, slash))) {
      if (s.name == series) return std::move(s.config);
    }
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown preset \"" + std::string(name) + "\"");
}

SimConfig config_from_json(const json& doc) {
  allow_keys(doc, "$", {"base", "box", "plant", "estimator", "target", "mode", "disturbance", "input_disturbance",
                        "reference", "phi0", "initial_estimate", "t0", "horizon", "unmodelled"});
  const bool has_base = doc.contains("base");
  if (has_base && !doc.at("base").is_string()) fail("$.base", "expected a preset name");
  if (!has_base) {
    for (const char* key : {"box", "plant", "horizon"}) {
      if (!doc.contains(key)) fail(std::string("$.") + key, "required when no \"base\" is given");
    }
  }
  SimConfig cfg = has_base ? preset(doc.at("base").get<std::string>())
                           : SimConfig{.box = box_from(doc.at("box"), "$.box"),
                                       .schedule = schedule_from(doc.at("plant"), "$.plant")};
  if (doc.contains("box")) cfg.box = box_from(doc.at("box"), "$.box");
  if (doc.contains("plant")) cfg.schedule = schedule_from(doc.at("plant"), "$.plant");
  if (doc.contains("estimator")) cfg.estimator = estimator_from(doc.at("estimator"), "$.estimator");
  if (doc.contains("target")) {
    const auto c = numbers(doc.at("target"), "$.target");
    if (c.empty()) fail("$.target", "must not be empty");
    cfg.a_star = Poly(c);
  }
  if (doc.contains("mode")) {
    const json& m = doc.at("mode");
    if (m == "standard") {
      cfg.mode = ControlMode::Standard;
    } else if (m == "step_tracking") {
      cfg.mode = ControlMode::StepTracking;
    } else {
      fail("$.mode", "expected \"standard\" or \"step_tracking\"");
    }
  }
  if (doc.contains("disturbance")) cfg.disturbance = signal_from(doc.at("disturbance"), "$.disturbance");
  if (doc.contains("input_disturbance")) {
    const json& j = doc.at("input_disturbance");
    if (j.is_null()) {
      cfg.input_disturbance.reset();
    } else {
      cfg.input_disturbance = signal_from(j, "$.input_disturbance");
    }
  }
  if (doc.contains("reference")) cfg.reference = signal_from(doc.at("reference"), "$.reference");
  if (doc.contains("t0")) cfg.t0 = integer(doc.at("t0"), "$.t0");
  if (doc.contains("horizon")) cfg.horizon = integer(doc.at("horizon"), "$.horizon");
  if (doc.contains("unmodelled")) {
    const json& j = doc.at("unmodelled");
    if (j.is_null()) {
      cfg.unmodelled.reset();
    } else {
      cfg.unmodelled = unmodelled_from(j, "$.unmodelled");
    }
  }

  const Eigen::Index dim = cfg.box.dim();
  if (doc.contains("phi0")) {
    cfg.phi0 = vector_of(doc.at("phi0"), "$.phi0");
  } else if (!has_base || cfg.phi0.size() != dim) {
    cfg.phi0 = Eigen::VectorXd::Zero(dim);
  }
  if (doc.contains("initial_estimate")) {
    cfg.theta0 = estimate_from(doc.at("initial_estimate"), "$.initial_estimate");
  } else if (!has_base || cfg.theta0.size() != dim) {
    cfg.theta0 = cfg.box.midpoint();
  }
  if (cfg.schedule.order() != cfg.box.order()) fail("$.plant", "order differs from the box");
  if (cfg.phi0.size() != dim) fail("$.phi0", "expected " + std::to_string(dim) + " entries");
  if (cfg.horizon < 1) fail("$.horizon", "must be at least 1");
  return cfg;
}

json config_to_json(const SimConfig& cfg) {
  json doc = {{"box", box_json(cfg.box)},
              {"plant", schedule_json(cfg.schedule)},
              {"estimator", estimator_json(cfg.estimator)},
              {"target", cfg.a_star.coeffs()},
              {"mode", cfg.mode == ControlMode::Standard ? "standard" : "step_tracking"},
              {"disturbance", signal_json(cfg.disturbance)},
              {"reference", signal_json(cfg.reference)},
              {"phi0", vector_json(cfg.phi0)},
              {"initial_estimate", estimate_json(cfg.theta0)},
              {"t0", cfg.t0},
              {"horizon", cfg.horizon}};
  if (cfg.input_disturbance) doc["input_disturbance"] = signal_json(*cfg.input_disturbance);
  if (cfg.unmodelled) doc["unmodelled"] = unmodelled_json(*cfg.unmodelled);
  return doc;
}

}  // namespace ppac::cli
