#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace ppac {

// Deterministic low-discrepancy points in [lo, hi] (Halton sequence over the
// first primes, indices starting at 1 so the lower corner is never emitted).
[[nodiscard]] std::vector<Eigen::VectorXd> halton_box_samples(const Eigen::VectorXd& lo,
                                                              const Eigen::VectorXd& hi,
                                                              std::size_t count);

// All 2^d corners of the box, lower corner first.
[[nodiscard]] std::vector<Eigen::VectorXd> box_corners(const Eigen::VectorXd& lo,
                                                       const Eigen::VectorXd& hi);

}  // namespace ppac
