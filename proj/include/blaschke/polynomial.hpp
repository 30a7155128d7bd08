#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace blaschke {

using Complex = std::complex<double>;

/// Dense complex polynomial, coefficients stored lowest degree first.
class Polynomial {
 public:
  Polynomial() : coeffs_{Complex{0.0}} {}
  explicit Polynomial(std::vector<Complex> coeffs);
  Polynomial(std::initializer_list<Complex> coeffs)
      : Polynomial(std::vector<Complex>(coeffs)) {}

  /// (z - root)
  static Polynomial linear_root(Complex root);

  std::span<const Complex> coefficients() const { return coeffs_; }
  Complex operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Complex{}; }

  /// Index of the highest stored coefficient. Trailing zeros are kept until trim().
  std::size_t degree() const { return coeffs_.size() - 1; }

  Complex operator()(Complex z) const;
  /// Value and first derivative in one Horner pass.
  void evaluate_with_derivative(Complex z, Complex& value, Complex& slope) const;
  /// sum |c_i| |z|^i, the usual scale for the rounding error of Horner's rule.
  double absolute_scale(double modulus) const;

  Polynomial derivative() const;
  /// Coefficients of p(center + h) in powers of h.
  std::vector<Complex> taylor_coefficients(Complex center) const;

  /// Drops leading coefficients whose modulus is at most rel_tol * max |c_i|.
  Polynomial trimmed(double rel_tol = 0.0) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(Complex s) const;

 private:
  std::vector<Complex> coeffs_;
};

struct RootFinderOptions {
  /// Convergence threshold on the Newton quotient |p/p'| (relative to max(1, |z|)).
  double step_tolerance = 1e-13;
  int max_iterations = 200;
  /// Leading coefficients below this fraction of the largest are treated as zero.
  double leading_trim = 1e-14;
  /// Relative backward-error bound used to certify a cluster of approximations as
  /// a single multiple root.
  double multiplicity_tolerance = 1e-11;
};

/// All roots of p, repeated according to multiplicity.
///
/// Ehrlich-Aberth simultaneous iteration started from Newton-polygon radii.
/// Approximations that cluster around a multiple root are replaced by the
/// root of the (k-1)-th derivative once the cluster is certified as a k-fold
/// root in the backward sense, which recovers multiple roots to full
/// precision instead of the eps^(1/k) spread the plain iteration delivers.
///
/// Throws Error(RootFindingDivergence) if the iteration does not converge and
/// Error(InvalidArgument) for the zero polynomial.
std::vector<Complex> find_roots(const Polynomial& p, const RootFinderOptions& options = {});

}  // namespace blaschke
