#include <gtest/gtest.h>

#include <cmath>

#include "ppac/error.hpp"
#include "ppac/estimation.hpp"
#include "ppac/figures.hpp"
#include "ppac/signals.hpp"

using ppac::CoefficientPath;
using ppac::ParamSchedule;
using ppac::Signal;

TEST(Signal, Kinds) {
  EXPECT_EQ(Signal{}(17), 0.0);
  EXPECT_TRUE(Signal{}.is_zero());
  EXPECT_EQ(Signal(ppac::ConstantSignal{1.0})(-3), 1.0);
  EXPECT_DOUBLE_EQ(Signal(ppac::Sinusoid{0.01, 5.0})(3), 0.01 * std::sin(15.0));

  const Signal sq(ppac::SquareSign{0.01, 1.0});
  EXPECT_EQ(sq(0), 0.0);
  EXPECT_EQ(sq(1), 1.0);
  EXPECT_EQ(sq(315), -1.0);

  const Signal pw(ppac::PiecewiseAmplitude{5.0, {{0, 0.01}, {2500, 0.05}}});
  EXPECT_EQ(pw(-1), 0.0);
  EXPECT_DOUBLE_EQ(pw(2499), 0.01 * std::sin(5.0 * 2499));
  EXPECT_DOUBLE_EQ(pw(2500), 0.05 * std::sin(5.0 * 2500));

  const Signal s(ppac::Samples{{1.0, 2.0, 3.0}, 10});
  EXPECT_EQ(s(9), 0.0);
  EXPECT_EQ(s(11), 2.0);
  EXPECT_EQ(s(13), 0.0);
}

TEST(CoefficientPath, Evaluation) {
  const CoefficientPath p{.offset = 1.0, .amplitude = 0.5, .angular_freq = 0.01, .wave = ppac::Wave::Cos,
                          .jumps = {{100, 0.25}}};
  EXPECT_DOUBLE_EQ(p.at(0), 1.5);
  EXPECT_DOUBLE_EQ(p.at(100), 1.0 + 0.5 * std::cos(1.0) + 0.25);
  EXPECT_FALSE(p.is_constant());
  EXPECT_TRUE(CoefficientPath::constant(2.0).is_constant());
}

TEST(ParamSchedule, ThetaStarCoordinates) {
  const std::vector<double> a{2.0, 3.0};
  const std::vector<double> b{1.0, -2.0};
  const ParamSchedule s = ParamSchedule::constant(a, b);
  EXPECT_TRUE(s.is_constant());
  EXPECT_EQ(s.theta_star(42), Eigen::Vector4d(-2.0, -3.0, 1.0, -2.0));
  EXPECT_EQ(s.theta_star(0), ppac::example_theta_star());
}

TEST(ParamSchedule, ValidateRejectsExcursion) {
  const ParamSchedule s({CoefficientPath{.offset = 1.0, .amplitude = 1.5, .angular_freq = 0.01},
                         CoefficientPath::constant(2.0)},
                        {CoefficientPath::constant(0.5), CoefficientPath::constant(-3.0)});
  try {
    s.validate(ppac::example_box(), 0, 1000);
    FAIL() << "expected ConfigInvalid";
  } catch (const ppac::Error& e) {
    EXPECT_EQ(e.code(), ppac::ErrorCode::ConfigInvalid);
  }
  EXPECT_NO_THROW(s.validate(ppac::example_box(), 0, 30));
}

TEST(VariationBudget, ConstantScheduleIsFree) {
  const std::vector<double> a{1.0, 2.0};
  const std::vector<double> b{0.5, -3.0};
  const auto fit = ppac::variation_budget(ParamSchedule::constant(a, b), 0, 500);
  EXPECT_EQ(fit.c0, 0.0);
  EXPECT_EQ(fit.eps, 0.0);
}

TEST(VariationBudget, SingleJumpIsPureOffset) {
  const ParamSchedule s({CoefficientPath{.offset = 1.0, .jumps = {{200, 0.3}}}, CoefficientPath::constant(2.0)},
                        {CoefficientPath::constant(0.5), CoefficientPath::constant(-3.0)});
  const auto fit = ppac::variation_budget(s, 0, 500);
  EXPECT_NEAR(fit.c0, 0.3, 1e-15);
  EXPECT_EQ(fit.eps, 0.0);
}

TEST(VariationBudget, DriftingScheduleIsSlow) {
  const auto cfg = ppac::fig2_config();
  const auto fit = ppac::variation_budget(cfg.schedule, 0, ppac::kFig2Horizon);
  EXPECT_LE(fit.eps, 0.012);
  EXPECT_GT(fit.eps, 0.0);
  EXPECT_TRUE(std::isfinite(fit.c0));
}

// Brute-force check of sum_{window} ||dtheta|| <= c0 + eps * length on every subwindow.
TEST(VariationBudget, BoundHoldsOnEverySubwindow) {
  const ParamSchedule s({CoefficientPath{.offset = 1.0, .amplitude = 0.8, .angular_freq = 0.05,
                                         .jumps = {{40, 0.1}, {170, -0.05}}},
                         CoefficientPath{.offset = 2.0, .amplitude = 0.5, .angular_freq = 0.02, .wave = ppac::Wave::Cos}},
                        {CoefficientPath{.offset = 0.5, .amplitude = 0.3, .angular_freq = 0.11},
                         CoefficientPath::constant(-3.0)});
  const long t1 = 0;
  const long t2 = 240;
  const auto fit = ppac::variation_budget(s, t1, t2);
  std::vector<double> step;
  for (long t = t1; t < t2; ++t) step.push_back((s.theta_star(t + 1) - s.theta_star(t)).norm());
  for (std::size_t i = 0; i < step.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j = i; j < step.size(); ++j) {
      sum += step[j];
      EXPECT_LE(sum, fit.c0 + fit.eps * static_cast<double>(j - i + 1) + 1e-12);
    }
  }
  EXPECT_LE(ppac::variation_offset(s, t1, t2, fit.eps), fit.c0 + 1e-15);
  EXPECT_GE(ppac::variation_offset(s, t1, t2, 0.0), fit.c0);
}
