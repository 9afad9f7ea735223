#pragma once

#include <Eigen/Dense>

namespace ppac {

// Induced 2-norm (largest singular value).
[[nodiscard]] inline double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace ppac
