#include "ppac/signals.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppac/error.hpp"

namespace ppac {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double sgn(double v) { return static_cast<double>((v > 0.0) - (v < 0.0)); }

std::vector<double> one_step_variations(const ParamSchedule& schedule, long t1, long t2) {
  if (t2 <= t1) throw Error(ErrorCode::ConfigInvalid, "variation window needs t2 > t1");
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(t2 - t1));
  Eigen::VectorXd prev = schedule.theta_star(t1);
  for (long t = t1; t < t2; ++t) {
    Eigen::VectorXd next = schedule.theta_star(t + 1);
    v.push_back((next - prev).norm());
    prev = std::move(next);
  }
  return v;
}

double max_excess(const std::vector<double>& v, double eps) {
  double best = 0.0;
  double run = 0.0;
  for (double x : v) {
    run = std::max(0.0, run + x - eps);
    best = std::max(best, run);
  }
  return best;
}

}  // namespace

double Signal::operator()(long t) const {
  const auto td = static_cast<double>(t);
  return std::visit(
      Overloaded{
          [](const ZeroSignal&) { return 0.0; },
          [](const ConstantSignal& s) { return s.value; },
          [td](const Sinusoid& s) { return s.amplitude * std::sin(s.angular_freq * td); },
          [td](const SquareSign& s) { return s.amplitude * sgn(std::sin(s.angular_freq * td)); },
          [t, td](const PiecewiseAmplitude& s) {
            double amp = 0.0;
            for (const auto& bp : s.breakpoints) {
              if (bp.start <= t) amp = bp.amplitude;
            }
            return amp * std::sin(s.angular_freq * td);
          },
          [t](const Samples& s) {
            const long i = t - s.start;
            return (i >= 0 && i < static_cast<long>(s.values.size())) ? s.values[static_cast<std::size_t>(i)] : 0.0;
          },
      },
      kind_);
}

double CoefficientPath::at(long t) const {
  const double arg = angular_freq * static_cast<double>(t);
  double v = offset + amplitude * (wave == Wave::Sin ? std::sin(arg) : std::cos(arg));
  for (const auto& j : jumps) {
    if (j.t <= t) v += j.size;
  }
  return v;
}

ParamSchedule::ParamSchedule(std::vector<CoefficientPath> a, std::vector<CoefficientPath> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.size() != b_.size() || a_.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "schedule needs matching, nonempty a and b paths");
  }
}

ParamSchedule ParamSchedule::constant(std::span<const double> a, std::span<const double> b) {
  std::vector<CoefficientPath> pa, pb;
  for (double v : a) pa.push_back(CoefficientPath::constant(v));
  for (double v : b) pb.push_back(CoefficientPath::constant(v));
  return ParamSchedule(std::move(pa), std::move(pb));
}

Eigen::VectorXd ParamSchedule::theta_star(long t) const {
  const auto n = order();
  Eigen::VectorXd theta(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    theta(i) = -a_[static_cast<std::size_t>(i)].at(t);
    theta(n + i) = b_[static_cast<std::size_t>(i)].at(t);
  }
  return theta;
}

bool ParamSchedule::is_constant() const noexcept {
  const auto constant = [](const CoefficientPath& p) { return p.is_constant(); };
  return std::all_of(a_.begin(), a_.end(), constant) && std::all_of(b_.begin(), b_.end(), constant);
}

void ParamSchedule::validate(const ThetaBox& box, long t0, long horizon) const {
  if (box.order() != order()) throw Error(ErrorCode::ConfigInvalid, "schedule order differs from box order");
  const long last = is_constant() ? t0 : t0 + horizon;
  for (long t = t0; t <= last; ++t) {
    if (!box.contains(theta_star(t))) {
      throw Error(ErrorCode::ConfigInvalid, "true parameters leave the admissible box at t = " + std::to_string(t));
    }
  }
}

VariationFit variation_budget(const ParamSchedule& schedule, long t1, long t2) {
  std::vector<double> v = one_step_variations(schedule, t1, t2);
  std::vector<double> sorted = v;
  const auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
  std::nth_element(sorted.begin(), mid, sorted.end());
  VariationFit fit;
  fit.eps = *mid;
  fit.c0 = max_excess(v, fit.eps);
  return fit;
}

double variation_offset(const ParamSchedule& schedule, long t1, long t2, double eps) {
  return max_excess(one_step_variations(schedule, t1, t2), eps);
}

}  // namespace ppac
