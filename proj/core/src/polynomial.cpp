#include "ppac/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "linear_solve.hpp"
#include "ppac/error.hpp"

namespace ppac {

namespace {

void require_finite(const std::vector<double>& c) {
  for (double v : c) {
    if (!std::isfinite(v)) throw Error(ErrorCode::DimensionMismatch, "non-finite polynomial coefficient");
  }
}

constexpr double kPivotThreshold = 1e-12;
constexpr double kRadiusTolerance = 1e-10;
constexpr int kRadiusBudget = 100000;

}  // namespace

Poly::Poly(std::initializer_list<double> coeffs) : Poly(std::vector<double>(coeffs)) {}

Poly::Poly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  require_finite(coeffs_);
}

Poly Poly::monic(std::span<const double> tail) {
  std::vector<double> c{1.0};
  c.insert(c.end(), tail.begin(), tail.end());
  return Poly(std::move(c));
}

Poly Poly::strictly_causal(std::span<const double> tail) {
  std::vector<double> c{0.0};
  c.insert(c.end(), tail.begin(), tail.end());
  return Poly(std::move(c));
}

double Poly::at_one() const noexcept {
  double s = 0.0;
  for (double v : coeffs_) s += v;
  return s;
}

Poly Poly::padded(std::size_t degree) const {
  if (degree <= this->degree()) return *this;
  std::vector<double> c = coeffs_;
  c.resize(degree + 1, 0.0);
  return Poly(std::move(c));
}

double Poly::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (double v : coeffs_) m = std::max(m, std::abs(v));
  return m;
}

Poly poly_mul(const Poly& p, const Poly& q) {
  std::vector<double> c(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) c[i + j] += p[i] * q[j];
  }
  return Poly(std::move(c));
}

Poly poly_add(const Poly& p, const Poly& q) {
  std::vector<double> c(std::max(p.size(), q.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = p[k] + q[k];
  return Poly(std::move(c));
}

Poly poly_sub(const Poly& p, const Poly& q) {
  std::vector<double> c(std::max(p.size(), q.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = p[k] - q[k];
  return Poly(std::move(c));
}

SylvesterSystem diophantine_system(const Poly& a, const Poly& b, const Poly& target,
                                   std::size_t l_degree, std::size_t p_degree) {
  if (!a.is_monic()) throw Error(ErrorCode::DimensionMismatch, "plant denominator must be monic");
  if (!b.is_strictly_causal()) {
    throw Error(ErrorCode::DimensionMismatch, "plant numerator must be strictly causal");
  }
  if (!target.is_monic()) throw Error(ErrorCode::DimensionMismatch, "target polynomial must be monic");
  const std::size_t dim = l_degree + p_degree;
  if (a.degree() > p_degree || b.degree() > l_degree || target.degree() > dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "degrees (A " + std::to_string(a.degree()) + ", B " + std::to_string(b.degree()) +
                    ", target " + std::to_string(target.degree()) + ") do not fit deg L = " +
                    std::to_string(l_degree) + ", deg P = " + std::to_string(p_degree));
  }

  SylvesterSystem sys;
  sys.l_degree = l_degree;
  sys.p_degree = p_degree;
  const auto n = static_cast<Eigen::Index>(dim);
  sys.matrix = Eigen::MatrixXd::Zero(n, n);
  sys.rhs.resize(n);
  for (std::size_t k = 1; k <= dim; ++k) {
    const auto row = static_cast<Eigen::Index>(k - 1);
    for (std::size_t i = 1; i <= l_degree && i <= k; ++i) {
      sys.matrix(row, static_cast<Eigen::Index>(i - 1)) = a[k - i];
    }
    for (std::size_t j = 1; j <= p_degree && j <= k; ++j) {
      sys.matrix(row, static_cast<Eigen::Index>(l_degree + j - 1)) = b[k - j];
    }
    // The leading 1 of L contributes A's own coefficient.
    sys.rhs(row) = target[k] - a[k];
  }
  return sys;
}

SylvesterSystem sylvester_system(const Poly& a_hat, const Poly& b_hat, const Poly& a_star) {
  const std::size_t n = std::max(a_hat.degree(), b_hat.degree());
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "model order must be at least 1");
  if (a_star.degree() > 2 * n) {
    throw Error(ErrorCode::DimensionMismatch, "target degree exceeds 2n");
  }
  return diophantine_system(a_hat, b_hat, a_star, n, n);
}

Eigen::VectorXd solve_linear(const SylvesterSystem& sys) {
  if (sys.matrix.rows() != sys.matrix.cols() || sys.matrix.rows() != sys.rhs.size()) {
    throw Error(ErrorCode::DimensionMismatch, "system is not square or rhs length differs");
  }
  const detail::PivotedLu f = detail::lu_factor(sys.matrix);
  if (f.lu.rows() > 0 && f.min_pivot < kPivotThreshold * f.max_entry) {
    throw Error(ErrorCode::SingularSylvester,
                "pivot " + std::to_string(f.min_pivot) + " below relative threshold");
  }
  if (f.lu.rows() > 0 && f.max_entry == 0.0) {
    throw Error(ErrorCode::SingularSylvester, "zero matrix");
  }
  return detail::lu_solve(f, sys.rhs);
}

double coprimeness_margin(const Poly& a_hat, const Poly& b_hat) {
  const std::size_t n = std::max(a_hat.degree(), b_hat.degree());
  if (n == 0) return 1.0;
  const SylvesterSystem sys = diophantine_system(a_hat, b_hat, Poly{1.0}, n, n);
  double row_product = 1.0;
  for (Eigen::Index i = 0; i < sys.matrix.rows(); ++i) row_product *= sys.matrix.row(i).norm();
  if (row_product == 0.0) return 0.0;
  const double det = detail::lu_determinant(detail::lu_factor(sys.matrix));
  return std::min(1.0, std::abs(det) / row_product);
}

bool jury_stable(const Poly& p) {
  if (!p.is_monic()) throw Error(ErrorCode::DimensionMismatch, "stability test expects a monic polynomial");
  std::vector<double> c = p.coeffs();
  while (c.size() > 1) {
    const double lead = c.front();
    const double last = c.back();
    if (std::abs(last) >= std::abs(lead)) return false;
    const std::size_t m = c.size() - 1;
    std::vector<double> next(m);
    for (std::size_t k = 0; k < m; ++k) next[k] = lead * c[k] - last * c[m - k];
    c = std::move(next);
  }
  return true;
}

Eigen::MatrixXd companion_matrix(const Poly& p) {
  const auto m = static_cast<Eigen::Index>(p.degree());
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) c(0, j) = -p[static_cast<std::size_t>(j + 1)];
  for (Eigen::Index i = 1; i < m; ++i) c(i, i - 1) = 1.0;
  return c;
}

double spectral_radius(const Poly& p) {
  if (!p.is_monic()) throw Error(ErrorCode::DimensionMismatch, "spectral radius expects a monic polynomial");
  bool nilpotent = true;
  for (std::size_t k = 1; k < p.size(); ++k) nilpotent = nilpotent && p[k] == 0.0;
  if (nilpotent) return 0.0;

  // M_j = C^(2^j) / s_j with ||M_j|| = 1 and log_norm = log ||C^(2^j)||.
  Eigen::MatrixXd m = companion_matrix(p);
  double log_norm = std::log(m.norm());
  m /= m.norm();
  double power = 1.0;
  double estimate = std::exp(log_norm / power);
  for (int iter = 0; iter < kRadiusBudget; ++iter) {
    Eigen::MatrixXd sq = m * m;
    const double nrm = sq.norm();
    if (nrm == 0.0) return 0.0;
    log_norm = 2.0 * log_norm + std::log(nrm);
    power *= 2.0;
    m = sq / nrm;
    const double next = std::exp(log_norm / power);
    if (std::abs(next - estimate) <= kRadiusTolerance * std::max(1.0, next)) return next;
    estimate = next;
    if (!std::isfinite(power)) break;
  }
  throw Error(ErrorCode::NoConvergence, "spectral radius iteration did not settle");
}

Poly characteristic_polynomial(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
  const Eigen::Index n = a.rows();
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c[0] = 1.0;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd mk = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = a * mk + c[static_cast<std::size_t>(k - 1)] * id;
    c[static_cast<std::size_t>(k)] = -(a * mk).trace() / static_cast<double>(k);
  }
  return Poly(std::move(c));
}

}  // namespace ppac
