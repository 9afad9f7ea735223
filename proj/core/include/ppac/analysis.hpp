#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ppac/polynomial.hpp"
#include "ppac/simulation.hpp"

namespace ppac {

// Pathwise check of the estimator's two per-step guarantees:
//   ||theta(t+1) - theta(t)|| <= rho |e(t+1)| / ||phi(t)||
//   V(t+1) - V(t) <= rho (-e(t+1)^2 / 2 + 2 d(t)^2) / ||phi(t)||^2
// Excess is measured relative to the magnitudes involved (1e-9).
struct Prop1Report {
  std::size_t steps_checked = 0;
  std::size_t drift_violations = 0;
  std::size_t energy_violations = 0;
  double max_drift_excess = 0.0;   // relative
  double max_energy_excess = 0.0;  // relative
  double min_energy_slack = 0.0;

  [[nodiscard]] bool passed() const noexcept { return drift_violations == 0 && energy_violations == 0; }
};

inline constexpr double kProp1Tolerance = 1e-9;

// Throws NotApplicable for classical-estimator traces or when theta* moves.
[[nodiscard]] Prop1Report check_prop1(const Trace& trace, const Eigen::VectorXd& theta_star);
[[nodiscard]] Prop1Report check_prop1(const Trace& trace);

// ||phi(k)|| <= c lambda^(k - t0) ||phi0|| certified pointwise for each lambda
// in the grid. A lambda whose worst ratio is attained in the last tenth of the
// trace is still growing there and is reported as infinite.
struct EnvelopeFit {
  std::vector<double> lambda_grid;
  std::vector<double> c_of_lambda;
  double best_lambda = 0.0;  // smallest finite c (largest certified lambda)
  double best_c = 0.0;
  double fastest_lambda = 0.0;  // smallest lambda with a finite c
  double fastest_c = 0.0;

  [[nodiscard]] bool certified() const noexcept;
};

[[nodiscard]] std::vector<double> default_lambda_grid();

// phi_norms[0] is ||phi0||. Throws ZeroInitialState when it is zero.
[[nodiscard]] EnvelopeFit fit_envelope(std::span<const double> phi_norms, std::span<const double> lambda_grid);
// Requires an unforced trace (d = 0, y* = 0, no unmodelled block); NotApplicable otherwise.
[[nodiscard]] EnvelopeFit fit_envelope(const Trace& trace, std::span<const double> lambda_grid);

struct GainReport {
  double sup_phi = 0.0;
  double sup_d = 0.0;
  double sup_r = 0.0;
  double input_level = 0.0;  // sup|d| + sup|r|
  double ratio = 0.0;        // sup_phi / input_level (0 when both vanish, inf when only input does)
  double l1_ratio = 0.0;
  double l2_ratio = 0.0;
};

[[nodiscard]] GainReport gain_estimate(const Trace& trace);

// Mean |y - y*| over rows whose reference is nonzero and has held its value
// for the previous `settle` steps. NaN when no row qualifies.
[[nodiscard]] double plateau_tracking_error(const Trace& trace, std::size_t settle);

// max over k in [0, k_max] of ||A^k|| / sigma^k. Throws SigmaTooSmall when
// sigma is not above the spectral radius of the target polynomial.
[[nodiscard]] double matrix_decay(const Eigen::MatrixXd& a_bar, const Poly& a_star, double sigma, int k_max);

struct DriftReport {
  double abar_drift = 0.0;      // sum ||A(j+1) - A(j)||
  double theta_drift = 0.0;     // sum ||theta(j+1) - theta(j)||
  double innovation_sum = 0.0;  // sum rho e(j+1)^2 / ||phi(j)||^2
  double ratio = 0.0;           // abar_drift / sqrt(innovation_sum * window length)
};

// Window [k, t) in trace-row indices.
[[nodiscard]] DriftReport estimator_drift_sum(const Trace& trace, std::size_t k, std::size_t t);

// A(t) for every row (standard mode only).
[[nodiscard]] std::vector<Eigen::MatrixXd> closed_loop_sequence(const Trace& trace);

// Entry L is max over start tau of ||A(tau+L-1) ... A(tau)||, L = 0..max_window
// (entry 0 is the identity).
[[nodiscard]] std::vector<double> transition_norms(std::span<const Eigen::MatrixXd> sequence,
                                                   std::size_t max_window);

// Largest ||phi(t+1) - A(t) phi(t) - b1 e(t+1) - b2 r(t)|| / (||phi(t)|| + 1)
// over the trace. Standard mode only.
[[nodiscard]] double keyeq_max_deviation(const Trace& trace);

// First-order counterexample for the normalised update: classical
// estimator vs the ideal one on y(t+1) = 2 y(t) + u(t), u = (a1_hat / b1_hat) y.
struct Remark2Point {
  double eps = 0.0;
  int steps = 0;  // N(eps)
  double classical_ratio = 0.0;  // |y(N)| / eps
  double ideal_c = 0.0;          // envelope constant of the ideal run
  double ideal_lambda = 0.0;
};

[[nodiscard]] int remark2_horizon(double eps);

// y(0..steps) of the first-order loop started at y(0) = eps.
[[nodiscard]] std::vector<double> remark2_outputs(const EstimatorVariant& variant, double eps, int steps);
[[nodiscard]] std::vector<double> remark2_phi_norms(const EstimatorVariant& variant, double eps, int steps);

inline constexpr int kRemark2IdealHorizon = 60;

[[nodiscard]] std::vector<Remark2Point> remark2_experiment(std::span<const double> eps_list);

}  // namespace ppac
