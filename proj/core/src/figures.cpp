#include "ppac/figures.hpp"

#include <array>
#include <string>

#include "ppac/error.hpp"

namespace ppac {

ThetaBox example_box() {
  const std::array<Interval, 2> a{{{0.0, 2.0}, {1.0, 3.0}}};
  const std::array<Interval, 2> b{{{0.0, 1.0}, {-5.0, -2.0}}};
  return ThetaBox::from_intervals(a, b);
}

ThetaBox tracking_box() {
  const std::array<Interval, 2> a{{{0.0, 2.0}, {1.0, 1.0}}};
  const std::array<Interval, 2> b{{{0.0, 1.0}, {-3.5, -3.5}}};
  return ThetaBox::from_intervals(a, b);
}

Eigen::VectorXd example_theta_star() {
  const std::array<double, 2> a{2.0, 3.0};
  const std::array<double, 2> b{1.0, -2.0};
  return theta_from_ab(a, b);
}

namespace {

SimConfig example_base(const EstimatorVariant& estimator, long horizon) {
  const std::array<double, 2> a{2.0, 3.0};
  const std::array<double, 2> b{1.0, -2.0};
  ThetaBox box = example_box();
  Eigen::VectorXd mid = box.midpoint();
  return SimConfig{
      .box = std::move(box),
      .schedule = ParamSchedule::constant(a, b),
      .estimator = estimator,
      .a_star = Poly{1.0},
      .mode = ControlMode::Standard,
      .disturbance = ZeroSignal{},
      .input_disturbance = std::nullopt,
      .reference = ZeroSignal{},
      .phi0 = Eigen::VectorXd::Zero(4),
      .theta0 = std::move(mid),
      .t0 = 0,
      .horizon = horizon,
      .unmodelled = std::nullopt,
  };
}

}  // namespace

SimConfig fig1a_config(const EstimatorVariant& estimator) {
  SimConfig c = example_base(estimator, kFig1Horizon);
  c.phi0 = Eigen::Vector4d(0.01, 0.01, 0.0, 0.0);
  return c;
}

SimConfig fig1b_config(const EstimatorVariant& estimator, double noise_amplitude) {
  SimConfig c = example_base(estimator, kFig1Horizon);
  c.disturbance = Sinusoid{noise_amplitude, 5.0};
  return c;
}

SimConfig fig2_config() {
  SimConfig c = example_base(IdealVariant{}, kFig2Horizon);
  c.schedule = ParamSchedule(
      {CoefficientPath{.offset = 1.0, .amplitude = 1.0, .angular_freq = 0.001, .wave = Wave::Sin},
       CoefficientPath{.offset = 2.0, .amplitude = 1.0, .angular_freq = 0.001, .wave = Wave::Cos}},
      {CoefficientPath{.offset = 0.5, .amplitude = 0.5, .angular_freq = 0.005, .wave = Wave::Sin},
       CoefficientPath{.offset = -3.5, .amplitude = -1.5, .angular_freq = 0.005, .wave = Wave::Sin}});
  c.disturbance = Sinusoid{0.01, 5.0};
  c.unmodelled = UnmodelledBlock{.beta = 0.75, .gains = {{5000, 0.025}}, .m = 0.0};
  return c;
}

SimConfig fig3_config() {
  SimConfig c = example_base(IdealVariant{}, kFig3Horizon);
  c.box = tracking_box();
  c.theta0 = c.box.midpoint();
  c.mode = ControlMode::StepTracking;
  c.schedule = ParamSchedule(
      {CoefficientPath{.offset = 1.0, .amplitude = 1.0, .angular_freq = 0.002, .wave = Wave::Sin},
       CoefficientPath::constant(1.0)},
      {CoefficientPath{.offset = 0.5, .amplitude = 0.5, .angular_freq = 0.005, .wave = Wave::Cos},
       CoefficientPath::constant(-3.5)});
  c.disturbance = PiecewiseAmplitude{5.0, {{0, 0.01}, {2500, 0.05}}};
  c.reference = SquareSign{0.01, 1.0};
  return c;
}

SimConfig deadbeat_exact_config() {
  SimConfig c = fig1a_config(IdealVariant{});
  c.theta0 = example_theta_star();
  return c;
}

SimConfig step_tracking_config() {
  SimConfig c = example_base(IdealVariant{}, kStepHorizon);
  c.box = tracking_box();
  c.theta0 = c.box.midpoint();
  c.mode = ControlMode::StepTracking;
  const std::array<double, 2> a{1.5, 1.0};
  const std::array<double, 2> b{0.8, -3.5};
  c.schedule = ParamSchedule::constant(a, b);
  c.reference = ConstantSignal{1.0};
  return c;
}

std::vector<FigureSeries> figure_series(std::string_view id) {
  if (id == "1a") return {{"ideal", fig1a_config(IdealVariant{})}, {"classical", fig1a_config(ClassicalVariant{})}};
  if (id == "1b") return {{"ideal", fig1b_config(IdealVariant{})}, {"classical", fig1b_config(ClassicalVariant{})}};
  if (id == "2") return {{"ideal", fig2_config()}};
  if (id == "3") return {{"ideal", fig3_config()}};
  throw Error(ErrorCode::ConfigInvalid, "unknown figure id '" + std::string(id) + "' (expected 1a, 1b, 2 or 3)");
}

}  // namespace ppac
