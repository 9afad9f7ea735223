#include "ppac/simulation.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "ppac/error.hpp"

namespace ppac {

namespace {

// Most-recent-first history of one scalar channel.
class History {
 public:
  explicit History(std::size_t depth) : values_(depth, 0.0) {}

  void push(double v) {
    values_.push_front(v);
    values_.pop_back();
  }
  [[nodiscard]] double operator[](std::size_t lag) const { return values_[lag]; }
  void set(std::size_t lag, double v) { values_[lag] = v; }

  // values at lags first..first+count-1
  [[nodiscard]] std::vector<double> window(std::size_t first, std::size_t count) const {
    return {values_.begin() + static_cast<std::ptrdiff_t>(first),
            values_.begin() + static_cast<std::ptrdiff_t>(first + count)};
  }

 private:
  std::deque<double> values_;
};

void validate(const SimConfig& c) {
  const Eigen::Index n = c.box.order();
  if (c.schedule.order() != n) throw Error(ErrorCode::ConfigInvalid, "schedule order differs from box order");
  if (c.phi0.size() != 2 * n) {
    throw Error(ErrorCode::ConfigInvalid, "phi0 must have length 2n = " + std::to_string(2 * n));
  }
  if (!c.phi0.allFinite()) throw Error(ErrorCode::ConfigInvalid, "phi0 must be finite");
  if (c.horizon < 1) throw Error(ErrorCode::ConfigInvalid, "horizon must be at least 1");
  if (!c.a_star.is_monic()) throw Error(ErrorCode::ConfigInvalid, "target polynomial must be monic");
  const std::size_t max_target = static_cast<std::size_t>(2 * n) + (c.mode == ControlMode::StepTracking ? 2 : 0);
  if (c.a_star.degree() > max_target) {
    throw Error(ErrorCode::ConfigInvalid, "target polynomial degree exceeds " + std::to_string(max_target));
  }
  if (!jury_stable(c.a_star)) throw Error(ErrorCode::UnstableTarget, "target polynomial is not Schur");
  if (c.unmodelled && !(c.unmodelled->beta > 0.0 && c.unmodelled->beta < 1.0)) {
    throw Error(ErrorCode::ConfigInvalid, "unmodelled beta must lie in (0, 1)");
  }
  c.schedule.validate(c.box, c.t0, c.horizon);
}

}  // namespace

double UnmodelledBlock::gain_at(long t) const noexcept {
  double g = 0.0;
  for (const auto& s : gains) {
    if (s.start <= t) g = s.gain;
  }
  return g;
}

UnmodelledOutput unmodelled_step(const UnmodelledBlock& block, double phi_norm, long t) {
  UnmodelledOutput out;
  out.d_delta = block.gain_at(t) * (block.m + phi_norm);
  out.next = block;
  out.next.m = block.beta * block.m + block.beta * phi_norm;
  return out;
}

double plant_step(const Eigen::VectorXd& phi, const Eigen::VectorXd& theta_star, double d, double d_delta) {
  if (phi.size() != theta_star.size()) throw Error(ErrorCode::DimensionMismatch, "phi and theta differ in length");
  return phi.dot(theta_star) + d + d_delta;
}

Trace simulate(const SimConfig& config) {
  validate(config);
  const Eigen::Index n = config.box.order();
  const auto nn = static_cast<std::size_t>(n);
  const std::size_t depth = nn + 3;

  EstimatorState est = EstimatorState::make(config.theta0, config.estimator, config.box);

  History y(depth), u(depth), ystar(depth), u_in(depth);
  for (std::size_t i = 0; i < nn; ++i) {
    y.set(i, config.phi0(static_cast<Eigen::Index>(i)));
    u.set(i, config.phi0(n + static_cast<Eigen::Index>(i)));
  }
  ystar.set(0, config.reference(config.t0));

  Trace trace;
  trace.order = n;
  trace.mode = config.mode;
  trace.estimator = config.estimator;
  trace.rows.reserve(static_cast<std::size_t>(config.horizon));

  std::optional<UnmodelledBlock> block = config.unmodelled;
  ControllerCoeffs coeffs = synthesize(est.theta_hat, config.a_star, config.mode);
  Eigen::VectorXd phi_prev;
  double y_next = 0.0;

  for (long k = 0; k < config.horizon; ++k) {
    const long t = config.t0 + k;
    TraceRow row;
    row.t = t;

    if (k > 0) {
      y.push(y_next);
      ystar.push(config.reference(t));
      const EstimatorStep step = update(est, phi_prev, y_next);
      est = step.state;
      row.e = step.e;
      row.rho = step.rho;

      ControllerCoeffs next = synthesize(est.theta_hat, config.a_star, config.mode);
      // u(t) uses the coefficients from t-1 and samples at lags 1.. (indices
      // 1.. of the histories, since y and y* already hold time t at lag 0).
      const ControlHistory hist{u.window(0, static_cast<std::size_t>(coeffs.l.size())),
                                y.window(1, static_cast<std::size_t>(coeffs.p.size())),
                                ystar.window(1, static_cast<std::size_t>(coeffs.p.size()))};
      u.push(control_input(coeffs, hist));
      coeffs = std::move(next);
    }

    Eigen::VectorXd phi(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
      phi(i) = y[static_cast<std::size_t>(i)];
      phi(n + i) = u[static_cast<std::size_t>(i)];
    }

    row.y = y[0];
    row.u = u[0];
    row.ystar = ystar[0];
    row.theta_star = config.schedule.theta_star(t);
    row.theta_hat = est.theta_hat;
    row.V = (row.theta_hat - row.theta_star).squaredNorm();
    row.phi_norm = phi.stableNorm();
    row.r = feedforward_r(coeffs, ystar.window(0, static_cast<std::size_t>(coeffs.p.size())));

    // Remark 1: an input disturbance d_u is equivalent to an output
    // disturbance sum_i b_i d_u(t+1-i).
    double d = config.disturbance(t);
    if (config.input_disturbance) {
      u_in.push(t >= config.t0 ? (*config.input_disturbance)(t) : 0.0);
      for (Eigen::Index i = 0; i < n; ++i) d += row.theta_star(n + i) * u_in[static_cast<std::size_t>(i)];
    }
    row.d = d;
    if (block) {
      UnmodelledOutput out = unmodelled_step(*block, row.phi_norm, t);
      row.d_delta = out.d_delta;
      block = std::move(out.next);
    }

    y_next = plant_step(phi, row.theta_star, row.d, row.d_delta);
    row.coeffs = coeffs;
    row.phi = phi;
    phi_prev = std::move(phi);
    trace.rows.push_back(std::move(row));
  }
  return trace;
}

}  // namespace ppac
