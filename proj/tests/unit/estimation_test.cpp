#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "ppac/error.hpp"
#include "ppac/estimation.hpp"

using ppac::ErrorCode;
using ppac::Interval;
using ppac::ThetaBox;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ThetaBox unit_pair_box() {
  return ThetaBox(Eigen::Vector2d(1.0, 1.0), Eigen::Vector2d(2.0, 2.0));
}

ppac::EstimatorState ideal_state(Eigen::VectorXd theta, double delta = kInf) {
  return ppac::EstimatorState::make(std::move(theta), ppac::IdealVariant{delta}, unit_pair_box());
}

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

Eigen::VectorXd uniform_in(std::mt19937_64& gen, const ThetaBox& box) {
  Eigen::VectorXd v(box.dim());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v(i) = std::uniform_real_distribution<double>(box.lo()(i), box.hi()(i))(gen);
  }
  return v;
}

Eigen::VectorXd gaussian(std::mt19937_64& gen, Eigen::Index n, double scale) {
  std::normal_distribution<double> dist(0.0, scale);
  Eigen::VectorXd v(n);
  for (auto& x : v) x = dist(gen);
  return v;
}

}  // namespace

TEST(ThetaBox, IntervalsMapToThetaCoordinates) {
  const std::vector<Interval> a{{0.0, 2.0}, {1.0, 3.0}};
  const std::vector<Interval> b{{0.0, 1.0}, {-5.0, -2.0}};
  const ThetaBox box = ThetaBox::from_intervals(a, b);
  EXPECT_EQ(box.order(), 2);
  EXPECT_EQ(box.lo(), Eigen::Vector4d(-2.0, -3.0, 0.0, -5.0));
  EXPECT_EQ(box.hi(), Eigen::Vector4d(0.0, -1.0, 1.0, -2.0));
  EXPECT_DOUBLE_EQ(box.set_norm(), std::sqrt(4.0 + 9.0 + 1.0 + 25.0));
  EXPECT_DOUBLE_EQ(unit_pair_box().set_norm(), std::sqrt(8.0));
}

TEST(ThetaBox, RejectsInvalidBounds) {
  EXPECT_EQ(code_of([] { ThetaBox(Eigen::Vector2d(1.0, 3.0), Eigen::Vector2d(2.0, 2.0)); }),
            ErrorCode::ConfigInvalid);
  EXPECT_EQ(code_of([] { ThetaBox(Eigen::Vector3d::Zero(), Eigen::Vector3d::Ones()); }),
            ErrorCode::DimensionMismatch);
}

TEST(Estimator, PredictionError) {
  const Eigen::Vector2d phi(1.0, 2.0);
  EXPECT_DOUBLE_EQ(ppac::prediction_error(phi, 3.0, ideal_state(Eigen::Vector2d(1.0, 1.0))), 0.0);
  EXPECT_DOUBLE_EQ(ppac::prediction_error(phi, 3.0, ideal_state(Eigen::Vector2d(1.0, 2.0))), -2.0);
}

TEST(Estimator, DeadzoneIndicator) {
  const auto plain = ideal_state(Eigen::Vector2d(1.5, 1.5));
  const Eigen::Vector2d phi(3.0, 4.0);
  EXPECT_EQ(ppac::rho(phi, 1e9, plain), 1);
  EXPECT_EQ(ppac::rho(Eigen::Vector2d::Zero(), 1.0, plain), 0);
  EXPECT_EQ(ppac::rho(Eigen::Vector2d::Zero(), 0.0, plain), 0);

  const auto dz = ideal_state(Eigen::Vector2d(1.5, 1.5), 1.0);
  const double threshold = 2.0 * std::sqrt(8.0) + 1.0;
  EXPECT_EQ(ppac::rho(phi, 7.0 * 5.0, dz), 0);
  EXPECT_EQ(ppac::rho(phi, 6.0 * 5.0, dz), 1);
  EXPECT_EQ(ppac::rho(phi, threshold * 5.0, dz), 0);
}

TEST(Estimator, IdealUpdateLandsOnHyperplane) {
  for (double eps : {1.0, 0.01, 1e-100, 1e-200}) {
    const Eigen::Vector2d phi(eps, -0.5 * eps);
    const auto next = ppac::update_ideal(ideal_state(Eigen::Vector2d(1.0, 2.0)), phi, 1.5 * eps);
    EXPECT_NEAR(next.theta_hat(0), 2.0, 1e-15) << eps;
    EXPECT_NEAR(next.theta_hat(1), 1.4, 1e-15) << eps;
  }
}

TEST(Estimator, IdealUpdateHoldsOnZeroRegressor) {
  const auto s = ideal_state(Eigen::Vector2d(1.2, 1.7));
  const auto next = ppac::update_ideal(s, Eigen::Vector2d::Zero(), 0.0);
  EXPECT_EQ(next.theta_hat, s.theta_hat);
}

TEST(Estimator, ClassicalUpdateFirstStep) {
  const double eps = 0.01;
  auto s = ppac::EstimatorState::make(Eigen::Vector2d(1.0, 2.0), ppac::ClassicalVariant{}, unit_pair_box());
  const auto next = ppac::update_classical(s, Eigen::Vector2d(eps, -0.5 * eps), 1.5 * eps);
  EXPECT_NEAR(next.theta_hat(0), 1.0001499812523436, 1e-15);
  EXPECT_NEAR(next.theta_hat(1), 1.9999250093738283, 1e-15);
}

TEST(Estimator, UpdateDispatchReportsErrorAndFlag) {
  const auto step = ppac::update(ideal_state(Eigen::Vector2d(1.0, 2.0)), Eigen::Vector2d(1.0, -0.5), 1.5);
  EXPECT_DOUBLE_EQ(step.e, 1.5);
  EXPECT_EQ(step.rho, 1);
}

TEST(Estimator, ModeMismatch) {
  auto classical = ppac::EstimatorState::make(Eigen::Vector2d(1.0, 2.0), ppac::ClassicalVariant{}, unit_pair_box());
  EXPECT_EQ(code_of([&] { (void)ppac::update_ideal(classical, Eigen::Vector2d(1, 1), 0.0); }),
            ErrorCode::ModeMismatch);
  EXPECT_EQ(code_of([&] { (void)ppac::update_classical(ideal_state(Eigen::Vector2d(1, 1)), Eigen::Vector2d(1, 1), 0.0); }),
            ErrorCode::ModeMismatch);
}

TEST(Estimator, MakeValidates) {
  EXPECT_EQ(code_of([] { (void)ideal_state(Eigen::Vector2d(0.0, 1.5)); }), ErrorCode::ConfigInvalid);
  EXPECT_EQ(code_of([] { (void)ideal_state(Eigen::Vector2d(1.5, 1.5), 0.0); }), ErrorCode::ConfigInvalid);
  EXPECT_EQ(code_of([] {
              (void)ppac::EstimatorState::make(Eigen::Vector2d(1.5, 1.5), ppac::ClassicalVariant{2.0, 1.0},
                                               unit_pair_box());
            }),
            ErrorCode::ConfigInvalid);
  EXPECT_EQ(code_of([] {
              (void)ppac::EstimatorState::make(Eigen::Vector2d(1.5, 1.5), ppac::ClassicalVariant{1.0, 0.0},
                                               unit_pair_box());
            }),
            ErrorCode::ConfigInvalid);
  EXPECT_EQ(code_of([] { (void)ideal_state(Eigen::Vector3d(1.5, 1.5, 1.5)); }), ErrorCode::DimensionMismatch);
}

TEST(Projection, Examples) {
  const ThetaBox box = unit_pair_box();
  EXPECT_EQ(ppac::project_box(Eigen::Vector2d(3.0, 0.0), box), Eigen::Vector2d(2.0, 1.0));
  EXPECT_EQ(ppac::project_box(Eigen::Vector2d(1.5, 1.5), box), Eigen::Vector2d(1.5, 1.5));
}

TEST(Projection, NonExpansiveTowardBoxPoints) {
  std::mt19937_64 gen(9);
  const ThetaBox box = ThetaBox::from_intervals(std::vector<Interval>{{0, 2}, {1, 3}},
                                                std::vector<Interval>{{0, 1}, {-5, -2}});
  for (int trial = 0; trial < 2000; ++trial) {
    const Eigen::VectorXd v = gaussian(gen, 4, 5.0);
    const Eigen::VectorXd w = gaussian(gen, 4, 5.0);
    const Eigen::VectorXd inside = uniform_in(gen, box);
    const Eigen::VectorXd pv = ppac::project_box(v, box);
    EXPECT_TRUE(box.contains(pv));
    EXPECT_LE((pv - inside).norm(), (v - inside).norm() + 1e-12);
    EXPECT_LE((pv - ppac::project_box(w, box)).norm(), (v - w).norm() + 1e-12);
  }
}

TEST(Lyapunov, Examples) {
  EXPECT_DOUBLE_EQ(ppac::lyapunov_v(ideal_state(Eigen::Vector2d(1.5, 1.5)), Eigen::Vector2d(1.5, 1.5)), 0.0);
  EXPECT_DOUBLE_EQ(ppac::lyapunov_v(ideal_state(Eigen::Vector2d(1.0, 2.0)), Eigen::Vector2d(2.0, 1.0)), 2.0);
}

// Per-step drift and energy inequalities of the deadzone projection update,
// with the plant y = phi'theta* + d and any theta_hat in the box.
TEST(Estimator, StepwiseDriftAndEnergyBounds) {
  std::mt19937_64 gen(31);
  const ThetaBox box = ThetaBox::from_intervals(std::vector<Interval>{{0, 2}, {1, 3}},
                                                std::vector<Interval>{{0, 1}, {-5, -2}});
  for (double delta : {kInf, 0.5, 0.0 + 1e-3}) {
    for (int trial = 0; trial < 3000; ++trial) {
      const Eigen::VectorXd theta_star = uniform_in(gen, box);
      const auto state = ppac::EstimatorState::make(uniform_in(gen, box), ppac::IdealVariant{delta}, box);
      const Eigen::VectorXd phi = gaussian(gen, 4, std::pow(10.0, std::uniform_real_distribution<double>(-6, 3)(gen)));
      const double d = std::normal_distribution<double>(0.0, 1.0)(gen) * phi.norm() *
                       std::uniform_real_distribution<double>(0.0, delta == kInf ? 0.0 : delta)(gen);
      const double y = phi.dot(theta_star) + d;
      const auto step = ppac::update(state, phi, y);
      const double nrm = phi.norm();
      const double drift = (step.state.theta_hat - state.theta_hat).norm();
      EXPECT_LE(drift, step.rho * std::abs(step.e) / nrm * (1 + 1e-12) + 1e-15);
      const double dv = ppac::lyapunov_v(step.state, theta_star) - ppac::lyapunov_v(state, theta_star);
      const double bound = step.rho * (-0.5 * step.e * step.e + 2.0 * d * d) / (nrm * nrm);
      EXPECT_LE(dv, bound + 1e-9 * (1.0 + ppac::lyapunov_v(state, theta_star)));
      EXPECT_TRUE(box.contains(step.state.theta_hat));
    }
  }
}

// W1 = I - phi phi' / phi'phi and W2 = phi phi' / phi'phi split the update.
TEST(Estimator, ProjectorIdentities) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 500; ++trial) {
    const Eigen::VectorXd phi = gaussian(gen, 4, 3.0);
    const Eigen::MatrixXd w2 = phi * phi.transpose() / phi.squaredNorm();
    const Eigen::MatrixXd w1 = Eigen::MatrixXd::Identity(4, 4) - w2;
    EXPECT_LE((w1 * w1 - w1).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((w1 * w2).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((w2 * w2 - w2).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Estimator, InnovationEnergyBoundedByInitialError) {
  std::mt19937_64 gen(8);
  const ThetaBox box = ThetaBox::from_intervals(std::vector<Interval>{{0, 2}, {1, 3}},
                                                std::vector<Interval>{{0, 1}, {-5, -2}});
  for (int run = 0; run < 50; ++run) {
    const Eigen::VectorXd theta_star = uniform_in(gen, box);
    auto state = ppac::EstimatorState::make(uniform_in(gen, box), ppac::IdealVariant{}, box);
    const double v0 = ppac::lyapunov_v(state, theta_star);
    double energy = 0.0;
    for (int t = 0; t < 500; ++t) {
      const Eigen::VectorXd phi = gaussian(gen, 4, 1.0);
      const auto step = ppac::update(state, phi, phi.dot(theta_star));
      energy += step.rho * step.e * step.e / phi.squaredNorm();
      state = step.state;
    }
    EXPECT_LE(energy, 2.0 * v0 + 1e-9);
    EXPECT_LE(energy, 8.0 * box.set_norm() * box.set_norm());
  }
}

TEST(ThetaBox, ExampleBoxIsSampledCoprime) {
  const ThetaBox box = ThetaBox::from_intervals(std::vector<Interval>{{0, 2}, {1, 3}},
                                                std::vector<Interval>{{0, 1}, {-5, -2}});
  EXPECT_GT(box.min_sampled_coprimeness(), 0.05);
}
