#include "ppac/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppac/error.hpp"
#include "ppac/sampling.hpp"

namespace ppac {

namespace {

bool is_zero(const Eigen::VectorXd& v) { return (v.array() == 0.0).all(); }

void check_dims(const Eigen::VectorXd& v, const ThetaBox& box) {
  if (v.size() != box.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "vector of length " + std::to_string(v.size()) + " against box of dimension " +
                    std::to_string(box.dim()));
  }
}

}  // namespace

ThetaBox::ThetaBox(Eigen::VectorXd lo, Eigen::VectorXd hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size() || lo_.size() == 0 || lo_.size() % 2 != 0) {
    throw Error(ErrorCode::DimensionMismatch, "box bounds must have equal, even, nonzero length");
  }
  double sq = 0.0;
  for (Eigen::Index i = 0; i < lo_.size(); ++i) {
    if (!std::isfinite(lo_(i)) || !std::isfinite(hi_(i)) || lo_(i) > hi_(i)) {
      throw Error(ErrorCode::ConfigInvalid, "box coordinate " + std::to_string(i) + " has lo > hi");
    }
    sq += std::max(lo_(i) * lo_(i), hi_(i) * hi_(i));
  }
  set_norm_ = std::sqrt(sq);
}

ThetaBox ThetaBox::from_intervals(std::span<const Interval> a, std::span<const Interval> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "need as many a- as b-intervals");
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::VectorXd lo(2 * n), hi(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& ai = a[static_cast<std::size_t>(i)];
    const auto& bi = b[static_cast<std::size_t>(i)];
    lo(i) = -ai.hi;
    hi(i) = -ai.lo;
    lo(n + i) = bi.lo;
    hi(n + i) = bi.hi;
  }
  return ThetaBox(std::move(lo), std::move(hi));
}

bool ThetaBox::contains(const Eigen::VectorXd& theta) const {
  if (theta.size() != lo_.size()) return false;
  return (theta.array() >= lo_.array()).all() && (theta.array() <= hi_.array()).all();
}

double ThetaBox::min_sampled_coprimeness() const {
  double worst = 1.0;
  auto visit = [&](const Eigen::VectorXd& theta) {
    worst = std::min(worst, coprimeness_margin(a_poly(theta), b_poly(theta)));
  };
  for (const auto& c : box_corners(lo_, hi_)) visit(c);
  for (const auto& s : halton_box_samples(lo_, hi_, 100)) visit(s);
  return worst;
}

Eigen::VectorXd theta_from_ab(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "a and b differ in length");
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::VectorXd theta(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    theta(i) = -a[static_cast<std::size_t>(i)];
    theta(n + i) = b[static_cast<std::size_t>(i)];
  }
  return theta;
}

Poly a_poly(const Eigen::VectorXd& theta) {
  const Eigen::Index n = theta.size() / 2;
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  c[0] = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) c[static_cast<std::size_t>(i) + 1] = -theta(i);
  return Poly(std::move(c));
}

Poly b_poly(const Eigen::VectorXd& theta) {
  const Eigen::Index n = theta.size() / 2;
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  c[0] = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) c[static_cast<std::size_t>(i) + 1] = theta(n + i);
  return Poly(std::move(c));
}

EstimatorState EstimatorState::make(Eigen::VectorXd theta0, EstimatorVariant variant, ThetaBox box) {
  check_dims(theta0, box);
  if (!box.contains(theta0)) throw Error(ErrorCode::ConfigInvalid, "initial estimate lies outside the box");
  if (const auto* ideal = std::get_if<IdealVariant>(&variant)) {
    if (!(ideal->delta > 0.0)) throw Error(ErrorCode::ConfigInvalid, "deadzone delta must be positive");
  } else {
    const auto& c = std::get<ClassicalVariant>(variant);
    if (!(c.alpha > 0.0 && c.alpha < 2.0)) throw Error(ErrorCode::ConfigInvalid, "alpha must lie in (0, 2)");
    if (!(c.beta > 0.0)) throw Error(ErrorCode::ConfigInvalid, "beta must be positive");
  }
  return EstimatorState{std::move(theta0), variant, std::move(box)};
}

double prediction_error(const Eigen::VectorXd& phi, double y_next, const EstimatorState& state) {
  check_dims(phi, state.box);
  return y_next - phi.dot(state.theta_hat);
}

int rho(const Eigen::VectorXd& phi, double e_next, const EstimatorState& state) {
  if (is_zero(phi)) return 0;
  const auto* ideal = std::get_if<IdealVariant>(&state.variant);
  if (ideal == nullptr || std::isinf(ideal->delta)) return 1;
  return std::abs(e_next) < (2.0 * state.box.set_norm() + ideal->delta) * phi.stableNorm() ? 1 : 0;
}

Eigen::VectorXd project_box(const Eigen::VectorXd& v, const ThetaBox& box) {
  check_dims(v, box);
  return v.cwiseMax(box.lo()).cwiseMin(box.hi());
}

EstimatorState update_ideal(const EstimatorState& state, const Eigen::VectorXd& phi, double y_next) {
  if (!std::holds_alternative<IdealVariant>(state.variant)) {
    throw Error(ErrorCode::ModeMismatch, "ideal update on a classical estimator");
  }
  EstimatorState next = state;
  const double e = prediction_error(phi, y_next, state);
  if (rho(phi, e, state) == 1) {
    // phi / ||phi||^2 formed as (phi / ||phi||) (e / ||phi||): the state decays
    // far enough for ||phi||^2 to underflow long before phi does.
    const double nrm = phi.stableNorm();
    next.theta_hat = project_box(state.theta_hat + (phi / nrm) * (e / nrm), state.box);
  }
  return next;
}

EstimatorState update_classical(const EstimatorState& state, const Eigen::VectorXd& phi, double y_next) {
  const auto* c = std::get_if<ClassicalVariant>(&state.variant);
  if (c == nullptr) throw Error(ErrorCode::ModeMismatch, "classical update on an ideal estimator");
  EstimatorState next = state;
  const double e = prediction_error(phi, y_next, state);
  next.theta_hat = project_box(state.theta_hat + phi * (c->alpha * e / (c->beta + phi.squaredNorm())), state.box);
  return next;
}

EstimatorStep update(const EstimatorState& state, const Eigen::VectorXd& phi, double y_next) {
  const double e = prediction_error(phi, y_next, state);
  const int r = rho(phi, e, state);
  if (std::holds_alternative<IdealVariant>(state.variant)) {
    return {update_ideal(state, phi, y_next), e, r};
  }
  return {update_classical(state, phi, y_next), e, r};
}

double lyapunov_v(const EstimatorState& state, const Eigen::VectorXd& theta_star) {
  if (theta_star.size() != state.theta_hat.size()) {
    throw Error(ErrorCode::DimensionMismatch, "theta_star length differs from estimate");
  }
  return (state.theta_hat - theta_star).squaredNorm();
}

}  // namespace ppac
