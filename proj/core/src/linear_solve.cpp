#include "linear_solve.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace ppac::detail {

PivotedLu lu_factor(const Eigen::MatrixXd& m) {
  PivotedLu f;
  f.lu = m;
  const Eigen::Index n = m.rows();
  f.perm.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) f.perm[static_cast<std::size_t>(i)] = i;
  f.max_entry = n > 0 ? m.cwiseAbs().maxCoeff() : 0.0;
  f.min_pivot = n > 0 ? INFINITY : 0.0;

  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = k;
    double best = std::abs(f.lu(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double v = std::abs(f.lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    f.min_pivot = std::min(f.min_pivot, best);
    if (piv != k) {
      f.lu.row(k).swap(f.lu.row(piv));
      std::swap(f.perm[static_cast<std::size_t>(k)], f.perm[static_cast<std::size_t>(piv)]);
      f.sign = -f.sign;
    }
    if (best == 0.0) continue;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double factor = f.lu(i, k) / f.lu(k, k);
      f.lu(i, k) = factor;
      for (Eigen::Index j = k + 1; j < n; ++j) f.lu(i, j) -= factor * f.lu(k, j);
    }
  }
  return f;
}

double lu_determinant(const PivotedLu& f) {
  double det = f.sign;
  for (Eigen::Index k = 0; k < f.lu.rows(); ++k) det *= f.lu(k, k);
  return det;
}

Eigen::VectorXd lu_solve(const PivotedLu& f, const Eigen::VectorXd& rhs) {
  const Eigen::Index n = f.lu.rows();
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = rhs(f.perm[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < i; ++j) s -= f.lu(i, j) * x(j);
    x(i) = s;
  }
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    double s = x(i);
    for (Eigen::Index j = i + 1; j < n; ++j) s -= f.lu(i, j) * x(j);
    x(i) = s / f.lu(i, i);
  }
  return x;
}

}  // namespace ppac::detail
