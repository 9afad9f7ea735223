#pragma once

#include <vector>

#include <Eigen/Dense>

namespace ppac::detail {

// In-place LU with partial pivoting, kept separate from Eigen's so the
// singularity threshold is explicit.
struct PivotedLu {
  Eigen::MatrixXd lu;
  std::vector<Eigen::Index> perm;
  double sign = 1.0;
  double min_pivot = 0.0;
  double max_entry = 0.0;
};

[[nodiscard]] PivotedLu lu_factor(const Eigen::MatrixXd& m);
[[nodiscard]] double lu_determinant(const PivotedLu& f);
[[nodiscard]] Eigen::VectorXd lu_solve(const PivotedLu& f, const Eigen::VectorXd& rhs);

}  // namespace ppac::detail
