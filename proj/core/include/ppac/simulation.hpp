#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ppac/estimation.hpp"
#include "ppac/polynomial.hpp"
#include "ppac/signals.hpp"
#include "ppac/synthesis.hpp"

namespace ppac {

// Output-side surrogate for unmodelled dynamics:
//   d_delta(t) = g(t) (m(t) + ||phi(t)||),  m(t+1) = beta m(t) + beta ||phi(t)||
// with g piecewise constant (zero before the first step).
struct UnmodelledBlock {
  struct GainStep {
    long start = 0;
    double gain = 0.0;
  };
  double beta = 0.5;
  std::vector<GainStep> gains;
  double m = 0.0;

  [[nodiscard]] double gain_at(long t) const noexcept;
};

struct UnmodelledOutput {
  double d_delta = 0.0;
  UnmodelledBlock next;
};

[[nodiscard]] UnmodelledOutput unmodelled_step(const UnmodelledBlock& block, double phi_norm, long t);

// y(t+1) = phi(t)' theta*(t) + d(t) + d_delta(t)
[[nodiscard]] double plant_step(const Eigen::VectorXd& phi, const Eigen::VectorXd& theta_star, double d,
                                double d_delta);

struct SimConfig {
  ThetaBox box;
  ParamSchedule schedule;
  EstimatorVariant estimator = IdealVariant{};
  Poly a_star{1.0};
  ControlMode mode = ControlMode::Standard;
  Signal disturbance{};                     // output-side d(t)
  std::optional<Signal> input_disturbance{};  // added to u before it reaches the plant
  Signal reference{};                       // y*(t), taken as zero before t0
  Eigen::VectorXd phi0{};                   // phi(t0) = (y(t0)..y(t0-n+1), u(t0)..u(t0-n+1))
  Eigen::VectorXd theta0{};
  long t0 = 0;
  long horizon = 1;
  std::optional<UnmodelledBlock> unmodelled{};
};

struct TraceRow {
  long t = 0;
  double y = 0.0;
  double u = 0.0;
  double ystar = 0.0;
  double d = 0.0;  // total exogenous disturbance entering the output equation
  double d_delta = 0.0;
  double e = 0.0;  // e(t) = y(t) - phi(t-1)' theta_hat(t-1); zero at t0
  int rho = 0;
  double V = 0.0;
  double phi_norm = 0.0;
  double r = 0.0;  // r(t) with the coefficients synthesized at t
  Eigen::VectorXd phi;
  Eigen::VectorXd theta_hat;
  Eigen::VectorXd theta_star;
  ControllerCoeffs coeffs;  // synthesized from theta_hat(t)
};

struct Trace {
  Eigen::Index order = 0;
  ControlMode mode = ControlMode::Standard;
  EstimatorVariant estimator = IdealVariant{};
  std::vector<TraceRow> rows;
};

// Runs the certainty-equivalence loop for `horizon` steps starting at t0.
// Per step t > t0: (1) y(t) from the plant, (2) estimator update with
// phi(t-1), y(t), (3) synthesis from theta_hat(t), (4) u(t) from the
// coefficients of t-1, (5) plant advance to y(t+1). Throws ConfigInvalid,
// UnstableTarget, SingularSylvester or ZeroAtOne.
[[nodiscard]] Trace simulate(const SimConfig& config);

}  // namespace ppac
