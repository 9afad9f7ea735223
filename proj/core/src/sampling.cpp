#include "ppac/sampling.hpp"

#include <array>

#include "ppac/error.hpp"

namespace ppac {

namespace {

constexpr std::array<unsigned, 16> kPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

double radical_inverse(std::size_t index, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

}  // namespace

std::vector<Eigen::VectorXd> halton_box_samples(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                                                std::size_t count) {
  if (lo.size() != hi.size()) throw Error(ErrorCode::DimensionMismatch, "box bounds differ in length");
  if (static_cast<std::size_t>(lo.size()) > kPrimes.size()) {
    throw Error(ErrorCode::DimensionMismatch, "Halton sampling supports at most 16 dimensions");
  }
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    Eigen::VectorXd x(lo.size());
    for (Eigen::Index d = 0; d < lo.size(); ++d) {
      const double u = radical_inverse(i, kPrimes[static_cast<std::size_t>(d)]);
      x(d) = lo(d) + u * (hi(d) - lo(d));
    }
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<Eigen::VectorXd> box_corners(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  if (lo.size() != hi.size()) throw Error(ErrorCode::DimensionMismatch, "box bounds differ in length");
  const auto d = static_cast<std::size_t>(lo.size());
  std::vector<Eigen::VectorXd> out;
  out.reserve(std::size_t{1} << d);
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    Eigen::VectorXd x = lo;
    for (std::size_t k = 0; k < d; ++k) {
      if (mask & (std::size_t{1} << k)) x(static_cast<Eigen::Index>(k)) = hi(static_cast<Eigen::Index>(k));
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace ppac
