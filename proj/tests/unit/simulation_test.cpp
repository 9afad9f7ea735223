#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "ppac/analysis.hpp"
#include "ppac/error.hpp"
#include "ppac/figures.hpp"
#include "ppac/simulation.hpp"
#include "ppac/trace_csv.hpp"

using ppac::ErrorCode;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const ppac::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no ppac::Error thrown";
  return ErrorCode::ConfigInvalid;
}

std::string csv_of(const ppac::Trace& trace) {
  std::ostringstream out;
  ppac::write_trace_csv(out, trace);
  return out.str();
}

ppac::SimConfig short_config(ppac::SimConfig cfg, long horizon) {
  cfg.horizon = horizon;
  return cfg;
}

}  // namespace

TEST(Plant, Step) {
  EXPECT_EQ(ppac::plant_step(Eigen::Vector4d::Zero(), ppac::example_theta_star(), 0.3, 0.2), 0.5);
  const double eps = 0.01;
  EXPECT_DOUBLE_EQ(ppac::plant_step(Eigen::Vector2d(eps, -0.5 * eps), Eigen::Vector2d(2.0, 1.0), 0.0, 0.0), 1.5 * eps);
  EXPECT_DOUBLE_EQ(ppac::plant_step(Eigen::Vector4d(1.0, 0.0, 0.0, 0.0), ppac::example_theta_star(), 0.0, 0.0), -2.0);
}

TEST(Unmodelled, Step) {
  ppac::UnmodelledBlock block{.beta = 0.5, .gains = {{0, 0.1}}, .m = 0.0};
  auto out = ppac::unmodelled_step(block, 2.0, 0);
  EXPECT_DOUBLE_EQ(out.d_delta, 0.2);
  EXPECT_DOUBLE_EQ(out.next.m, 1.0);

  block.gains = {{5000, 0.025}};
  out = ppac::unmodelled_step(block, 2.0, 4999);
  EXPECT_EQ(out.d_delta, 0.0);
  EXPECT_DOUBLE_EQ(out.next.m, 1.0);
  EXPECT_EQ(block.gain_at(5000), 0.025);
}

TEST(Simulate, RowsAndInitialState) {
  const auto cfg = short_config(ppac::fig1a_config(ppac::IdealVariant{}), 50);
  const auto trace = ppac::simulate(cfg);
  ASSERT_EQ(trace.rows.size(), 50u);
  EXPECT_EQ(trace.rows.front().t, 0);
  EXPECT_EQ(trace.rows.front().phi, cfg.phi0);
  EXPECT_EQ(trace.rows.front().theta_hat, cfg.theta0);
  EXPECT_EQ(trace.rows.back().t, 49);
  for (std::size_t k = 1; k < trace.rows.size(); ++k) {
    EXPECT_EQ(trace.rows[k].phi(0), trace.rows[k].y);
    EXPECT_EQ(trace.rows[k].phi(1), trace.rows[k - 1].y);
    EXPECT_EQ(trace.rows[k].phi(2), trace.rows[k].u);
  }
}

TEST(Simulate, EstimateStaysInBox) {
  for (const auto& cfg : {ppac::fig1a_config(ppac::IdealVariant{}), ppac::fig1a_config(ppac::ClassicalVariant{}),
                          ppac::fig2_config()}) {
    const auto trace = ppac::simulate(short_config(cfg, 3000));
    for (const auto& row : trace.rows) EXPECT_TRUE(cfg.box.contains(row.theta_hat)) << row.t;
  }
}

TEST(Simulate, DeadbeatFromExactEstimate) {
  const auto cfg = ppac::deadbeat_exact_config();
  const auto trace = ppac::simulate(short_config(cfg, 40));
  const double phi0 = cfg.phi0.norm();
  for (const auto& row : trace.rows) {
    EXPECT_EQ(row.e, 0.0);
    EXPECT_EQ(row.theta_hat, cfg.theta0);
    if (row.t >= 4) EXPECT_LE(row.phi_norm, 1e-14 * phi0) << row.t;
  }
}

TEST(Simulate, ZeroStateStaysZero) {
  auto cfg = ppac::fig1b_config(ppac::IdealVariant{}, 0.0);
  const auto trace = ppac::simulate(short_config(cfg, 100));
  for (const auto& row : trace.rows) {
    EXPECT_EQ(row.phi_norm, 0.0);
    EXPECT_EQ(row.rho, 0);
  }
}

TEST(Simulate, IdealConvergesOnUnstablePlant) {
  const auto trace = ppac::simulate(ppac::fig1a_config(ppac::IdealVariant{}));
  for (const auto& row : trace.rows) {
    if (row.t >= 100) EXPECT_LT(std::abs(row.y), 1e-6) << row.t;
  }
}

TEST(Simulate, Deterministic) {
  const auto cfg = short_config(ppac::fig2_config(), 6000);
  EXPECT_EQ(csv_of(ppac::simulate(cfg)), csv_of(ppac::simulate(cfg)));
}

TEST(Simulate, KeyEquationAlongTraces) {
  for (const auto& cfg : {ppac::fig1a_config(ppac::IdealVariant{}), ppac::fig1b_config(ppac::IdealVariant{}),
                          ppac::fig1b_config(ppac::ClassicalVariant{}), ppac::fig2_config()}) {
    EXPECT_LE(ppac::keyeq_max_deviation(ppac::simulate(short_config(cfg, 6000))), 1e-10);
  }
}

TEST(Simulate, StepTrackingReachesSetpoint) {
  const auto trace = ppac::simulate(ppac::step_tracking_config());
  for (const auto& row : trace.rows) {
    if (row.t >= 200) EXPECT_NEAR(row.y, 1.0, 1e-8) << row.t;
  }
}

// An input-side disturbance is the same experiment as its output-side image
// sum b_i(t) d_in(t + 1 - i) fed in as a sample sequence (d_in is zero before t0).
TEST(Simulate, InputDisturbanceReduction) {
  auto with_input = short_config(ppac::fig1b_config(ppac::IdealVariant{}, 0.0), 1500);
  with_input.schedule = ppac::fig2_config().schedule;
  with_input.input_disturbance = ppac::Signal(ppac::Sinusoid{0.02, 1.3});
  const auto a = ppac::simulate(with_input);

  ppac::Samples folded{{}, 0};
  for (long t = 0; t < with_input.horizon; ++t) {
    const Eigen::VectorXd th = with_input.schedule.theta_star(t);
    const auto& din = *with_input.input_disturbance;
    folded.values.push_back(th(2) * din(t) + th(3) * (t > 0 ? din(t - 1) : 0.0));
  }
  auto with_output = with_input;
  with_output.input_disturbance.reset();
  with_output.disturbance = folded;
  const auto b = ppac::simulate(with_output);

  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    EXPECT_NEAR(a.rows[k].y, b.rows[k].y, 1e-12 * (1.0 + std::abs(a.rows[k].y)));
    EXPECT_NEAR(a.rows[k].d, b.rows[k].d, 1e-15);
  }
}

TEST(Simulate, ConfigErrors) {
  auto cfg = ppac::fig1a_config(ppac::IdealVariant{});
  auto bad = cfg;
  bad.theta0(0) = 5.0;
  EXPECT_EQ(code_of([&] { (void)ppac::simulate(bad); }), ErrorCode::ConfigInvalid);
  bad = cfg;
  bad.phi0 = Eigen::Vector2d::Zero();
  EXPECT_EQ(code_of([&] { (void)ppac::simulate(bad); }), ErrorCode::ConfigInvalid);
  bad = cfg;
  bad.horizon = 0;
  EXPECT_EQ(code_of([&] { (void)ppac::simulate(bad); }), ErrorCode::ConfigInvalid);
  bad = cfg;
  bad.a_star = ppac::Poly{1, -2};
  EXPECT_EQ(code_of([&] { (void)ppac::simulate(bad); }), ErrorCode::UnstableTarget);
  bad = cfg;
  bad.schedule = ppac::ParamSchedule::constant(std::vector<double>{5.0, 2.0}, std::vector<double>{0.5, -3.0});
  EXPECT_EQ(code_of([&] { (void)ppac::simulate(bad); }), ErrorCode::ConfigInvalid);
}

TEST(Simulate, StepTrackingZeroAtOne) {
  auto cfg = ppac::step_tracking_config();
  cfg.box = ppac::ThetaBox(Eigen::Vector2d(-1.0, -1.0), Eigen::Vector2d(1.0, 1.0));
  cfg.schedule = ppac::ParamSchedule::constant(std::vector<double>{0.5}, std::vector<double>{0.5});
  cfg.theta0 = Eigen::Vector2d(0.5, 0.0);
  cfg.phi0 = Eigen::Vector2d::Zero();
  EXPECT_EQ(code_of([&] { (void)ppac::simulate(cfg); }), ErrorCode::ZeroAtOne);
}
