#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ppac/estimation.hpp"
#include "ppac/polynomial.hpp"

namespace ppac {

enum class ControlMode { Standard, StepTracking };

// Controller polynomials L = 1 + l1 z^-1 + ... and P = p1 z^-1 + ...
// Standard: deg L = deg P = n. StepTracking: L = (1 - z^-1) L_tilde with
// deg L_tilde = n + 1, so deg L = n + 2 and deg P = n + 1.
struct ControllerCoeffs {
  Eigen::VectorXd l;
  Eigen::VectorXd p;
  ControlMode mode = ControlMode::Standard;
  Eigen::VectorXd l_tilde;  // empty in Standard mode

  [[nodiscard]] Poly l_poly() const;
  [[nodiscard]] Poly p_poly() const;
};

// Solves A_hat L + B_hat P = A_star. Throws UnstableTarget if A_star fails the
// Jury test, SingularSylvester if the estimate pair is (numerically) not coprime.
[[nodiscard]] ControllerCoeffs place_poles(const Poly& a_hat, const Poly& b_hat, const Poly& a_star);

// Integral-action design: solves (1 - z^-1) A_hat L_tilde + B_hat P = A_star
// (deg A_star <= 2n + 2). Throws ZeroAtOne when |B_hat(1)| < 1e-8.
[[nodiscard]] ControllerCoeffs place_poles_step_tracking(const Poly& a_hat, const Poly& b_hat,
                                                         const Poly& a_star);

[[nodiscard]] ControllerCoeffs synthesize(const Eigen::VectorXd& theta_hat, const Poly& a_star,
                                          ControlMode mode);

// ||A_hat L + B_hat P - A_star||_inf; valid in both modes since
// A_hat L = (1 - z^-1) A_hat L_tilde.
[[nodiscard]] double diophantine_residual(const Poly& a_hat, const Poly& b_hat, const Poly& a_star,
                                          const ControllerCoeffs& coeffs);

// Past samples, most recent first: u[0] = u(t-1), y[0] = y(t-1), ystar[0] = y*(t-1).
struct ControlHistory {
  std::vector<double> u;
  std::vector<double> y;
  std::vector<double> ystar;
};

// u(t) = -sum l_i u(t-i) - sum p_i (y(t-i) - y*(t-i)), using the
// coefficients synthesized at t-1. Throws InsufficientHistory.
[[nodiscard]] double control_input(const ControllerCoeffs& coeffs, const ControlHistory& history);

// r(t) = sum p_i y*(t+1-i); ystar_recent[0] = y*(t).
[[nodiscard]] double feedforward_r(const ControllerCoeffs& coeffs, std::span<const double> ystar_recent);

// phi(t+1) = entries * phi(t) + b1 e(t+1) + b2 r(t)
struct ClosedLoopMatrix {
  Eigen::MatrixXd entries;
  Eigen::VectorXd b1;
  Eigen::VectorXd b2;
};

// Standard mode only (ModeMismatch otherwise).
[[nodiscard]] ClosedLoopMatrix closed_loop_matrix(const Eigen::VectorXd& theta_hat,
                                                  const ControllerCoeffs& coeffs);

// Sampled lower estimate of max ||A_bar(theta)|| over the box (corners plus
// `samples` Halton points).
[[nodiscard]] double estimate_abar(const ThetaBox& box, const Poly& a_star, std::size_t samples = 10000);

}  // namespace ppac
