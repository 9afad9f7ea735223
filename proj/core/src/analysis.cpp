#include "ppac/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ppac/error.hpp"
#include "ppac/norms.hpp"

namespace ppac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double relative_excess(double lhs, double rhs, double scale) {
  const double excess = lhs - rhs;
  if (excess <= 0.0) return 0.0;
  return scale > 0.0 ? excess / scale : kInf;
}

Eigen::MatrixXd abar_of(const TraceRow& row) { return closed_loop_matrix(row.theta_hat, row.coeffs).entries; }

void require_standard(const Trace& trace) {
  if (trace.mode != ControlMode::Standard) {
    throw Error(ErrorCode::ModeMismatch, "closed-loop matrices exist only for standard-mode traces");
  }
}

}  // namespace

Prop1Report check_prop1(const Trace& trace, const Eigen::VectorXd& theta_star) {
  if (!std::holds_alternative<IdealVariant>(trace.estimator)) {
    throw Error(ErrorCode::NotApplicable, "estimator guarantees hold for the ideal algorithm only");
  }
  for (const auto& row : trace.rows) {
    if (row.theta_star != theta_star) {
      throw Error(ErrorCode::NotApplicable, "true parameters vary along the trace");
    }
  }

  Prop1Report rep;
  rep.min_energy_slack = kInf;
  for (std::size_t j = 0; j + 1 < trace.rows.size(); ++j) {
    const TraceRow& now = trace.rows[j];
    const TraceRow& next = trace.rows[j + 1];
    const double phi_norm = now.phi.stableNorm();
    const double rho = next.rho;
    const double e_scaled = rho == 0.0 ? 0.0 : next.e / phi_norm;
    const double d_scaled = rho == 0.0 ? 0.0 : (now.d + now.d_delta) / phi_norm;

    const double drift = (next.theta_hat - now.theta_hat).norm();
    const double drift_bound = std::abs(e_scaled);
    const double drift_excess = relative_excess(drift, drift_bound, std::max(drift, drift_bound));

    const double v0 = (now.theta_hat - theta_star).squaredNorm();
    const double v1 = (next.theta_hat - theta_star).squaredNorm();
    const double energy_bound = -0.5 * e_scaled * e_scaled + 2.0 * d_scaled * d_scaled;
    const double energy_excess =
        relative_excess(v1 - v0, energy_bound, std::max({v0, v1, std::abs(energy_bound)}));

    ++rep.steps_checked;
    rep.max_drift_excess = std::max(rep.max_drift_excess, drift_excess);
    rep.max_energy_excess = std::max(rep.max_energy_excess, energy_excess);
    rep.min_energy_slack = std::min(rep.min_energy_slack, energy_bound - (v1 - v0));
    if (drift_excess > kProp1Tolerance) ++rep.drift_violations;
    if (energy_excess > kProp1Tolerance) ++rep.energy_violations;
  }
  if (rep.steps_checked == 0) rep.min_energy_slack = 0.0;
  return rep;
}

Prop1Report check_prop1(const Trace& trace) {
  if (trace.rows.empty()) return {};
  return check_prop1(trace, trace.rows.front().theta_star);
}

bool EnvelopeFit::certified() const noexcept { return std::isfinite(best_c); }

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 13; ++i) grid.push_back(0.30 + 0.05 * i);
  grid.push_back(0.99);
  return grid;
}

EnvelopeFit fit_envelope(std::span<const double> phi_norms, std::span<const double> lambda_grid) {
  if (phi_norms.empty() || phi_norms.front() == 0.0) {
    throw Error(ErrorCode::ZeroInitialState, "envelope fit needs a nonzero initial state");
  }
  EnvelopeFit fit;
  fit.lambda_grid.assign(lambda_grid.begin(), lambda_grid.end());
  std::sort(fit.lambda_grid.begin(), fit.lambda_grid.end());
  const double log_phi0 = std::log(phi_norms.front());
  const std::size_t count = phi_norms.size();
  const std::size_t tail_start = count - (count + 9) / 10;

  for (double lambda : fit.lambda_grid) {
    const double log_lambda = std::log(lambda);
    double best = -kInf;
    std::size_t arg = 0;
    for (std::size_t k = 0; k < count; ++k) {
      if (phi_norms[k] == 0.0) continue;
      const double v = std::log(phi_norms[k]) - static_cast<double>(k) * log_lambda - log_phi0;
      if (v > best) {
        best = v;
        arg = k;
      }
    }
    const bool growing = count > 1 && arg >= tail_start && arg > 0;
    fit.c_of_lambda.push_back(growing ? kInf : std::exp(best));
  }

  fit.best_c = kInf;
  fit.fastest_c = kInf;
  for (std::size_t i = 0; i < fit.lambda_grid.size(); ++i) {
    const double c = fit.c_of_lambda[i];
    if (!std::isfinite(c)) continue;
    if (!std::isfinite(fit.fastest_c)) {
      fit.fastest_c = c;
      fit.fastest_lambda = fit.lambda_grid[i];
    }
    if (c < fit.best_c) {
      fit.best_c = c;
      fit.best_lambda = fit.lambda_grid[i];
    }
  }
  return fit;
}

EnvelopeFit fit_envelope(const Trace& trace, std::span<const double> lambda_grid) {
  std::vector<double> norms;
  norms.reserve(trace.rows.size());
  for (const auto& row : trace.rows) {
    if (row.d != 0.0 || row.ystar != 0.0 || row.d_delta != 0.0) {
      throw Error(ErrorCode::NotApplicable, "envelope fit needs an unforced trace (d = 0, y* = 0)");
    }
    norms.push_back(row.phi_norm);
  }
  return fit_envelope(norms, lambda_grid);
}

GainReport gain_estimate(const Trace& trace) {
  GainReport g;
  double l1_phi = 0.0, l1_d = 0.0, l1_r = 0.0;
  double l2_phi = 0.0, l2_d = 0.0, l2_r = 0.0;
  for (const auto& row : trace.rows) {
    g.sup_phi = std::max(g.sup_phi, row.phi_norm);
    g.sup_d = std::max(g.sup_d, std::abs(row.d));
    g.sup_r = std::max(g.sup_r, std::abs(row.r));
    l1_phi += row.phi_norm;
    l1_d += std::abs(row.d);
    l1_r += std::abs(row.r);
    l2_phi += row.phi_norm * row.phi_norm;
    l2_d += row.d * row.d;
    l2_r += row.r * row.r;
  }
  const auto ratio = [](double num, double den) {
    if (den > 0.0) return num / den;
    return num == 0.0 ? 0.0 : kInf;
  };
  g.input_level = g.sup_d + g.sup_r;
  g.ratio = ratio(g.sup_phi, g.input_level);
  g.l1_ratio = ratio(l1_phi, l1_d + l1_r);
  g.l2_ratio = ratio(std::sqrt(l2_phi), std::sqrt(l2_d) + std::sqrt(l2_r));
  return g;
}

double plateau_tracking_error(const Trace& trace, std::size_t settle) {
  double sum = 0.0;
  std::size_t count = 0;
  std::size_t held = 0;
  for (std::size_t k = 0; k < trace.rows.size(); ++k) {
    const double ref = trace.rows[k].ystar;
    held = (k > 0 && trace.rows[k - 1].ystar == ref) ? held + 1 : 0;
    if (ref != 0.0 && held >= settle) {
      sum += std::abs(trace.rows[k].y - ref);
      ++count;
    }
  }
  return count > 0 ? sum / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN();
}

double matrix_decay(const Eigen::MatrixXd& a_bar, const Poly& a_star, double sigma, int k_max) {
  const double floor = spectral_radius(a_star);
  if (!(sigma > floor) || !(sigma > 0.0)) {
    throw Error(ErrorCode::SigmaTooSmall,
                "sigma " + std::to_string(sigma) + " must exceed the target spectral radius " + std::to_string(floor));
  }
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(a_bar.rows(), a_bar.cols());
  double gamma = 1.0;
  double sigma_k = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    power = a_bar * power;
    sigma_k *= sigma;
    gamma = std::max(gamma, spectral_norm(power) / sigma_k);
  }
  return gamma;
}

std::vector<Eigen::MatrixXd> closed_loop_sequence(const Trace& trace) {
  require_standard(trace);
  std::vector<Eigen::MatrixXd> seq;
  seq.reserve(trace.rows.size());
  for (const auto& row : trace.rows) seq.push_back(abar_of(row));
  return seq;
}

DriftReport estimator_drift_sum(const Trace& trace, std::size_t k, std::size_t t) {
  require_standard(trace);
  if (!(k < t && t < trace.rows.size())) {
    throw Error(ErrorCode::DimensionMismatch, "drift window must satisfy k < t < number of rows");
  }
  DriftReport rep;
  Eigen::MatrixXd prev = abar_of(trace.rows[k]);
  for (std::size_t j = k; j < t; ++j) {
    const TraceRow& now = trace.rows[j];
    const TraceRow& next = trace.rows[j + 1];
    Eigen::MatrixXd cur = abar_of(next);
    rep.abar_drift += spectral_norm(cur - prev);
    rep.theta_drift += (next.theta_hat - now.theta_hat).norm();
    const double phi_norm = now.phi.stableNorm();
    if (next.rho != 0 && phi_norm > 0.0) rep.innovation_sum += std::pow(next.e / phi_norm, 2);
    prev = std::move(cur);
  }
  const double den = std::sqrt(rep.innovation_sum * static_cast<double>(t - k));
  rep.ratio = den > 0.0 ? rep.abar_drift / den : (rep.abar_drift == 0.0 ? 0.0 : kInf);
  return rep;
}

std::vector<double> transition_norms(std::span<const Eigen::MatrixXd> sequence, std::size_t max_window) {
  if (sequence.empty()) throw Error(ErrorCode::DimensionMismatch, "transition norms need a nonempty sequence");
  const Eigen::Index dim = sequence.front().rows();
  max_window = std::min(max_window, sequence.size());
  std::vector<double> norms(max_window + 1, 0.0);
  norms[0] = 1.0;
  for (std::size_t tau = 0; tau < sequence.size(); ++tau) {
    Eigen::MatrixXd product = Eigen::MatrixXd::Identity(dim, dim);
    for (std::size_t len = 1; len <= max_window && tau + len <= sequence.size(); ++len) {
      product = sequence[tau + len - 1] * product;
      norms[len] = std::max(norms[len], spectral_norm(product));
    }
  }
  return norms;
}

double keyeq_max_deviation(const Trace& trace) {
  require_standard(trace);
  double worst = 0.0;
  for (std::size_t j = 0; j + 1 < trace.rows.size(); ++j) {
    const TraceRow& now = trace.rows[j];
    const TraceRow& next = trace.rows[j + 1];
    const ClosedLoopMatrix m = closed_loop_matrix(now.theta_hat, now.coeffs);
    const Eigen::VectorXd predicted = m.entries * now.phi + m.b1 * next.e + m.b2 * now.r;
    worst = std::max(worst, (next.phi - predicted).norm() / (now.phi.norm() + 1.0));
  }
  return worst;
}

}  // namespace ppac
