#include <cmath>

#include "ppac/analysis.hpp"
#include "ppac/error.hpp"

namespace ppac {

namespace {

// a1 in [-2, -1], b1 in [1, 2]; theta = (-a1, b1).
ThetaBox remark2_box() { return ThetaBox(Eigen::Vector2d(1.0, 1.0), Eigen::Vector2d(2.0, 2.0)); }

struct FirstOrderRun {
  std::vector<double> y;
  std::vector<double> phi_norm;
};

FirstOrderRun run_first_order(const EstimatorVariant& variant, double eps, int steps) {
  if (steps < 0) throw Error(ErrorCode::ConfigInvalid, "step count must be nonnegative");
  const Eigen::Vector2d theta_star(2.0, 1.0);
  EstimatorState est = EstimatorState::make(Eigen::Vector2d(1.0, 2.0), variant, remark2_box());
  FirstOrderRun run;
  double y = eps;
  for (int t = 0;; ++t) {
    // static deadbeat law u = (a1_hat / b1_hat) y
    const double gain = -est.theta_hat(0) / est.theta_hat(1);
    const Eigen::Vector2d phi(y, gain * y);
    run.y.push_back(y);
    run.phi_norm.push_back(phi.norm());
    if (t == steps) break;
    const double y_next = phi.dot(theta_star);
    est = update(est, phi, y_next).state;
    y = y_next;
  }
  return run;
}

}  // namespace

int remark2_horizon(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::ConfigInvalid, "eps must lie in (0, 1)");
  return static_cast<int>(std::log(1.0 / eps) / (2.0 * std::log(1.5)));
}

std::vector<double> remark2_outputs(const EstimatorVariant& variant, double eps, int steps) {
  return run_first_order(variant, eps, steps).y;
}

std::vector<double> remark2_phi_norms(const EstimatorVariant& variant, double eps, int steps) {
  return run_first_order(variant, eps, steps).phi_norm;
}

std::vector<Remark2Point> remark2_experiment(std::span<const double> eps_list) {
  std::vector<Remark2Point> out;
  const std::vector<double> grid = default_lambda_grid();
  for (double eps : eps_list) {
    Remark2Point p;
    p.eps = eps;
    p.steps = remark2_horizon(eps);
    const std::vector<double> y = remark2_outputs(ClassicalVariant{1.0, 1.0}, eps, p.steps);
    p.classical_ratio = std::abs(y.back()) / eps;
    const EnvelopeFit fit = fit_envelope(remark2_phi_norms(IdealVariant{}, eps, kRemark2IdealHorizon), grid);
    p.ideal_c = fit.best_c;
    p.ideal_lambda = fit.best_lambda;
    out.push_back(p);
  }
  return out;
}

}  // namespace ppac
