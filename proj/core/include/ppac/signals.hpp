#pragma once

#include <concepts>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "ppac/estimation.hpp"

namespace ppac {

// Exogenous scalar sequences evaluated at integer time. Frequencies are in
// radians per step.
struct ZeroSignal {};
struct ConstantSignal {
  double value = 0.0;
};
struct Sinusoid {
  double amplitude = 0.0;
  double angular_freq = 0.0;
};
// amplitude * sgn(sin(w t)), with sgn(0) = 0
struct SquareSign {
  double angular_freq = 0.0;
  double amplitude = 1.0;
};
// amplitude(t) * sin(w t), where amplitude(t) is the value of the last
// breakpoint with start <= t (zero before the first).
struct PiecewiseAmplitude {
  struct Breakpoint {
    long start = 0;
    double amplitude = 0.0;
  };
  double angular_freq = 0.0;
  std::vector<Breakpoint> breakpoints;
};
// values[t - start] inside the stored range, zero outside.
struct Samples {
  std::vector<double> values;
  long start = 0;
};

class Signal {
 public:
  using Kind = std::variant<ZeroSignal, ConstantSignal, Sinusoid, SquareSign, PiecewiseAmplitude, Samples>;

  Signal() = default;
  template <class T>
    requires std::constructible_from<Kind, T&&> && (!std::same_as<std::remove_cvref_t<T>, Signal>)
  Signal(T&& kind) : kind_(std::forward<T>(kind)) {}  // NOLINT(google-explicit-constructor)

  [[nodiscard]] double operator()(long t) const;
  [[nodiscard]] const Kind& kind() const noexcept { return kind_; }
  [[nodiscard]] bool is_zero() const noexcept { return std::holds_alternative<ZeroSignal>(kind_); }

 private:
  Kind kind_ = ZeroSignal{};
};

enum class Wave { Sin, Cos };

// offset + amplitude * wave(w t) + sum of jumps with time <= t
struct CoefficientPath {
  struct Jump {
    long t = 0;
    double size = 0.0;
  };
  double offset = 0.0;
  double amplitude = 0.0;
  double angular_freq = 0.0;
  Wave wave = Wave::Sin;
  std::vector<Jump> jumps{};

  [[nodiscard]] double at(long t) const;
  [[nodiscard]] bool is_constant() const noexcept {
    return (amplitude == 0.0 || angular_freq == 0.0) && jumps.empty();
  }
  static CoefficientPath constant(double v) { return CoefficientPath{.offset = v}; }
};

// True plant parameters over time, written in (a, b) coordinates.
class ParamSchedule {
 public:
  ParamSchedule(std::vector<CoefficientPath> a, std::vector<CoefficientPath> b);
  static ParamSchedule constant(std::span<const double> a, std::span<const double> b);

  [[nodiscard]] Eigen::Index order() const noexcept { return static_cast<Eigen::Index>(a_.size()); }
  [[nodiscard]] Eigen::VectorXd theta_star(long t) const;
  [[nodiscard]] bool is_constant() const noexcept;
  [[nodiscard]] const std::vector<CoefficientPath>& a() const noexcept { return a_; }
  [[nodiscard]] const std::vector<CoefficientPath>& b() const noexcept { return b_; }

  // Throws ConfigInvalid unless theta_star(t) lies in the box for every
  // t in [t0, t0 + horizon].
  void validate(const ThetaBox& box, long t0, long horizon) const;

 private:
  std::vector<CoefficientPath> a_;
  std::vector<CoefficientPath> b_;
};

// Sum of ||theta*(t+1) - theta*(t)|| over any window is bounded by c0 + eps * length.
struct VariationFit {
  double c0 = 0.0;
  double eps = 0.0;
};

// eps is the median one-step variation on [t1, t2) (the steady drift rate);
// c0 is then the exact smallest offset making the bound hold on every
// subwindow (maximum-sum subarray of the excess variation).
[[nodiscard]] VariationFit variation_budget(const ParamSchedule& schedule, long t1, long t2);

// Smallest c0 for a caller-chosen eps.
[[nodiscard]] double variation_offset(const ParamSchedule& schedule, long t1, long t2, double eps);

}  // namespace ppac
