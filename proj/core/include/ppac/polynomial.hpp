#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ppac {

// Polynomial in the backward shift z^-1: coeffs()[k] multiplies z^-k.
//
// Degree is implied by the coefficient count (trailing zeros are kept, so a
// degree-2n target written as {1} is still accepted wherever the caller pads
// it). "Monic" means c0 == 1 exactly and "strictly causal" means c0 == 0
// exactly; both are checked by the operations that need them.
class Poly {
 public:
  Poly() : coeffs_{0.0} {}
  Poly(std::initializer_list<double> coeffs);
  explicit Poly(std::vector<double> coeffs);

  // 1 + tail[0] z^-1 + ... + tail[m-1] z^-m
  static Poly monic(std::span<const double> tail);
  // tail[0] z^-1 + ... + tail[m-1] z^-m
  static Poly strictly_causal(std::span<const double> tail);

  [[nodiscard]] const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }

  // Coefficient of z^-k; zero past the stored degree.
  [[nodiscard]] double operator[](std::size_t k) const noexcept {
    return k < coeffs_.size() ? coeffs_[k] : 0.0;
  }

  [[nodiscard]] bool is_monic() const noexcept { return coeffs_.front() == 1.0; }
  [[nodiscard]] bool is_strictly_causal() const noexcept { return coeffs_.front() == 0.0; }

  // Value at z = 1, i.e. the coefficient sum.
  [[nodiscard]] double at_one() const noexcept;

  // Copy zero-padded (or unchanged) to the given degree. Never truncates.
  [[nodiscard]] Poly padded(std::size_t degree) const;

  [[nodiscard]] double max_abs_coeff() const noexcept;

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  std::vector<double> coeffs_;
};

[[nodiscard]] Poly poly_mul(const Poly& p, const Poly& q);
[[nodiscard]] Poly poly_add(const Poly& p, const Poly& q);
[[nodiscard]] Poly poly_sub(const Poly& p, const Poly& q);

// Linear system whose solution is the coefficient vector of the unknown
// polynomials in A*L + B*P = target, with L = 1 + l1 z^-1 + ... + l_nl z^-nl
// and P = p1 z^-1 + ... + p_np z^-np. Unknowns are ordered (l1..l_nl,
// p1..p_np); row k-1 matches the z^-k coefficient.
struct SylvesterSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  std::size_t l_degree = 0;
  std::size_t p_degree = 0;
};

// General square Diophantine system. Requires A monic, B strictly causal,
// deg A <= p_degree, deg B <= l_degree and deg target <= l_degree +
// p_degree; throws DimensionMismatch otherwise.
[[nodiscard]] SylvesterSystem diophantine_system(const Poly& a, const Poly& b, const Poly& target,
                                                 std::size_t l_degree, std::size_t p_degree);

// Standard pole-placement system with n = max(deg a_hat, deg b_hat): 2n unknowns.
[[nodiscard]] SylvesterSystem sylvester_system(const Poly& a_hat, const Poly& b_hat,
                                               const Poly& a_star);

// Dense solve with partial pivoting. Throws SingularSylvester when a pivot
// magnitude drops below 1e-12 times the largest matrix entry.
[[nodiscard]] Eigen::VectorXd solve_linear(const SylvesterSystem& sys);

// |det S| / prod_i ||row_i(S)|| for the standard Sylvester matrix S of the
// pair. Lies in [0, 1] by Hadamard's inequality; 0 iff the pair shares a root.
[[nodiscard]] double coprimeness_margin(const Poly& a_hat, const Poly& b_hat);

// Schur-Cohn/Jury reduction on z^m p(z^-1): true iff every root lies strictly
// inside the unit disk. Requires p monic.
[[nodiscard]] bool jury_stable(const Poly& p);

// Companion matrix of z^m p(z^-1) (first row -c1..-cm, ones on the subdiagonal).
[[nodiscard]] Eigen::MatrixXd companion_matrix(const Poly& p);

// Largest root magnitude of z^m p(z^-1), via repeated squaring of the
// normalised companion matrix (rho = lim ||C^k||^(1/k)). Throws NoConvergence
// if the estimate has not settled to 1e-10 within the iteration budget.
[[nodiscard]] double spectral_radius(const Poly& p);

// det(zI - M) = z^m + c1 z^(m-1) + ... + cm returned as Poly{1, c1, ..., cm}.
// Faddeev-LeVerrier recursion.
[[nodiscard]] Poly characteristic_polynomial(const Eigen::MatrixXd& m);

}  // namespace ppac
