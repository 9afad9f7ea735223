#pragma once

#include <limits>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "ppac/polynomial.hpp"

namespace ppac {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Admissible parameter set as an axis-aligned box in theta coordinates
// (-a1..-an, b1..bn).
class ThetaBox {
 public:
  ThetaBox(Eigen::VectorXd lo, Eigen::VectorXd hi);

  // Intervals for a_i and b_i as written for the plant; a_i in [lo, hi]
  // becomes -a_i in [-hi, -lo].
  static ThetaBox from_intervals(std::span<const Interval> a, std::span<const Interval> b);

  [[nodiscard]] const Eigen::VectorXd& lo() const noexcept { return lo_; }
  [[nodiscard]] const Eigen::VectorXd& hi() const noexcept { return hi_; }
  [[nodiscard]] Eigen::Index order() const noexcept { return lo_.size() / 2; }
  [[nodiscard]] Eigen::Index dim() const noexcept { return lo_.size(); }

  // max over the box of the Euclidean norm
  [[nodiscard]] double set_norm() const noexcept { return set_norm_; }

  [[nodiscard]] bool contains(const Eigen::VectorXd& theta) const;
  [[nodiscard]] Eigen::VectorXd midpoint() const { return 0.5 * (lo_ + hi_); }

  // Smallest coprimeness margin over every corner and 100 interior Halton
  // points. Values near zero mean the box violates the coprimeness assumption
  // somewhere; this is a diagnostic, not a certificate.
  [[nodiscard]] double min_sampled_coprimeness() const;

 private:
  Eigen::VectorXd lo_;
  Eigen::VectorXd hi_;
  double set_norm_ = 0.0;
};

[[nodiscard]] Eigen::VectorXd theta_from_ab(std::span<const double> a, std::span<const double> b);

// A(z^-1) = 1 + a1 z^-1 + ... and B(z^-1) = b1 z^-1 + ... read off theta.
[[nodiscard]] Poly a_poly(const Eigen::VectorXd& theta);
[[nodiscard]] Poly b_poly(const Eigen::VectorXd& theta);

// Unnormalised projection algorithm with a deadzone; delta = inf is the
// plain algorithm.
struct IdealVariant {
  double delta = std::numeric_limits<double>::infinity();
};

// theta + alpha phi e / (beta + phi'phi)
struct ClassicalVariant {
  double alpha = 1.0;
  double beta = 1.0;
};

using EstimatorVariant = std::variant<IdealVariant, ClassicalVariant>;

struct EstimatorState {
  Eigen::VectorXd theta_hat;
  EstimatorVariant variant;
  ThetaBox box;

  // Validates variant parameters and theta_hat in box (ConfigInvalid otherwise).
  static EstimatorState make(Eigen::VectorXd theta0, EstimatorVariant variant, ThetaBox box);
};

[[nodiscard]] double prediction_error(const Eigen::VectorXd& phi, double y_next,
                                      const EstimatorState& state);

// Deadzone indicator: 1 iff |e| < (2||S|| + delta)||phi||, with inf * 0 = 0.
// Classical states report 1 whenever phi != 0.
[[nodiscard]] int rho(const Eigen::VectorXd& phi, double e_next, const EstimatorState& state);

[[nodiscard]] Eigen::VectorXd project_box(const Eigen::VectorXd& v, const ThetaBox& box);

[[nodiscard]] EstimatorState update_ideal(const EstimatorState& state, const Eigen::VectorXd& phi,
                                          double y_next);
[[nodiscard]] EstimatorState update_classical(const EstimatorState& state, const Eigen::VectorXd& phi,
                                              double y_next);

struct EstimatorStep {
  EstimatorState state;
  double e = 0.0;
  int rho = 0;
};

// One update of whichever variant the state carries, with the prediction
// error and deadzone flag that drove it.
[[nodiscard]] EstimatorStep update(const EstimatorState& state, const Eigen::VectorXd& phi, double y_next);

// ||theta_hat - theta_star||^2
[[nodiscard]] double lyapunov_v(const EstimatorState& state, const Eigen::VectorXd& theta_star);

}  // namespace ppac
