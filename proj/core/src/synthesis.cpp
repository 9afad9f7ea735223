#include "ppac/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppac/error.hpp"
#include "ppac/norms.hpp"
#include "ppac/sampling.hpp"

namespace ppac {

namespace {

constexpr double kZeroAtOneMargin = 1e-8;

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

void require_schur(const Poly& a_star) {
  if (!a_star.is_monic()) throw Error(ErrorCode::DimensionMismatch, "target polynomial must be monic");
  if (!jury_stable(a_star)) throw Error(ErrorCode::UnstableTarget, "target polynomial has roots outside the open unit disk");
}

}  // namespace

Poly ControllerCoeffs::l_poly() const { return Poly::monic(to_std(l)); }
Poly ControllerCoeffs::p_poly() const { return Poly::strictly_causal(to_std(p)); }

ControllerCoeffs place_poles(const Poly& a_hat, const Poly& b_hat, const Poly& a_star) {
  require_schur(a_star);
  const SylvesterSystem sys = sylvester_system(a_hat, b_hat, a_star);
  const Eigen::VectorXd x = solve_linear(sys);
  const auto nl = static_cast<Eigen::Index>(sys.l_degree);
  const auto np = static_cast<Eigen::Index>(sys.p_degree);
  ControllerCoeffs c;
  c.mode = ControlMode::Standard;
  c.l = x.head(nl);
  c.p = x.segment(nl, np);
  return c;
}

ControllerCoeffs place_poles_step_tracking(const Poly& a_hat, const Poly& b_hat, const Poly& a_star) {
  require_schur(a_star);
  if (std::abs(b_hat.at_one()) < kZeroAtOneMargin) {
    throw Error(ErrorCode::ZeroAtOne, "plant numerator estimate vanishes at z = 1");
  }
  const std::size_t n = std::max(a_hat.degree(), b_hat.degree());
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "model order must be at least 1");
  if (a_star.degree() > 2 * n + 2) throw Error(ErrorCode::DimensionMismatch, "target degree exceeds 2n + 2");
  const Poly a_tilde = poly_mul(Poly{1.0, -1.0}, a_hat);
  const SylvesterSystem sys = diophantine_system(a_tilde, b_hat, a_star, n + 1, n + 1);
  const Eigen::VectorXd x = solve_linear(sys);

  ControllerCoeffs c;
  c.mode = ControlMode::StepTracking;
  c.l_tilde = x.head(static_cast<Eigen::Index>(n + 1));
  c.p = x.segment(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n + 1));
  // (1 - z^-1)(1 + lt_1 z^-1 + ... + lt_{n+1} z^-(n+1)): l_i = lt_i - lt_{i-1}
  // with lt_0 = 1 and lt_{n+2} = 0.
  const auto nt = static_cast<Eigen::Index>(n + 1);
  c.l.resize(nt + 1);
  for (Eigen::Index i = 1; i <= nt + 1; ++i) {
    const double cur = i <= nt ? c.l_tilde(i - 1) : 0.0;
    const double prev = i == 1 ? 1.0 : c.l_tilde(i - 2);
    c.l(i - 1) = cur - prev;
  }
  return c;
}

ControllerCoeffs synthesize(const Eigen::VectorXd& theta_hat, const Poly& a_star, ControlMode mode) {
  const Poly a = a_poly(theta_hat);
  const Poly b = b_poly(theta_hat);
  return mode == ControlMode::Standard ? place_poles(a, b, a_star) : place_poles_step_tracking(a, b, a_star);
}

double diophantine_residual(const Poly& a_hat, const Poly& b_hat, const Poly& a_star,
                            const ControllerCoeffs& coeffs) {
  const Poly lhs = poly_add(poly_mul(a_hat, coeffs.l_poly()), poly_mul(b_hat, coeffs.p_poly()));
  return poly_sub(lhs, a_star).max_abs_coeff();
}

double control_input(const ControllerCoeffs& coeffs, const ControlHistory& history) {
  const auto nl = static_cast<std::size_t>(coeffs.l.size());
  const auto np = static_cast<std::size_t>(coeffs.p.size());
  if (history.u.size() < nl || history.y.size() < np || history.ystar.size() < np) {
    throw Error(ErrorCode::InsufficientHistory,
                "controller needs " + std::to_string(nl) + " past inputs and " + std::to_string(np) +
                    " past outputs/references");
  }
  double u = 0.0;
  for (std::size_t i = 0; i < nl; ++i) u -= coeffs.l(static_cast<Eigen::Index>(i)) * history.u[i];
  for (std::size_t i = 0; i < np; ++i) {
    u -= coeffs.p(static_cast<Eigen::Index>(i)) * (history.y[i] - history.ystar[i]);
  }
  return u;
}

double feedforward_r(const ControllerCoeffs& coeffs, std::span<const double> ystar_recent) {
  const auto np = static_cast<std::size_t>(coeffs.p.size());
  if (ystar_recent.size() < np) {
    throw Error(ErrorCode::InsufficientHistory, "feedforward needs " + std::to_string(np) + " reference samples");
  }
  double r = 0.0;
  for (std::size_t i = 0; i < np; ++i) r += coeffs.p(static_cast<Eigen::Index>(i)) * ystar_recent[i];
  return r;
}

ClosedLoopMatrix closed_loop_matrix(const Eigen::VectorXd& theta_hat, const ControllerCoeffs& coeffs) {
  if (coeffs.mode != ControlMode::Standard) {
    throw Error(ErrorCode::ModeMismatch, "closed-loop matrix is only formed for the standard design");
  }
  const Eigen::Index n = theta_hat.size() / 2;
  if (theta_hat.size() != 2 * n || coeffs.l.size() != n || coeffs.p.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "estimate and controller orders differ");
  }
  ClosedLoopMatrix m;
  m.entries = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  m.entries.row(0) = theta_hat.transpose();
  for (Eigen::Index i = 1; i < n; ++i) m.entries(i, i - 1) = 1.0;
  m.entries.block(n, 0, 1, n) = -coeffs.p.transpose();
  m.entries.block(n, n, 1, n) = -coeffs.l.transpose();
  for (Eigen::Index i = n + 1; i < 2 * n; ++i) m.entries(i, i - 1) = 1.0;
  m.b1 = Eigen::VectorXd::Unit(2 * n, 0);
  m.b2 = Eigen::VectorXd::Unit(2 * n, n);
  return m;
}

double estimate_abar(const ThetaBox& box, const Poly& a_star, std::size_t samples) {
  double best = 0.0;
  auto visit = [&](const Eigen::VectorXd& theta) {
    const ControllerCoeffs c = synthesize(theta, a_star, ControlMode::Standard);
    best = std::max(best, spectral_norm(closed_loop_matrix(theta, c).entries));
  };
  for (const auto& corner : box_corners(box.lo(), box.hi())) visit(corner);
  for (const auto& s : halton_box_samples(box.lo(), box.hi(), samples)) visit(s);
  return best;
}

}  // namespace ppac
