#pragma once

#include <complex>
#include <span>
#include <vector>

#include "blaschke/polynomial.hpp"

namespace blaschke {

/// Principal argument folded into [0, 2pi).
double principal_arg(Complex z);

/// sigma_a(z) = (z - a) / (1 - conj(a) z)
Complex sigma(Complex a, Complex z);
/// Inverse of sigma_a, i.e. sigma_{-a}.
Complex sigma_inverse(Complex a, Complex z);

/// Finite Blaschke product mu * prod (z - a_j) / (1 - conj(a_j) z).
///
/// |mu| must be 1 and every zero must lie strictly inside the unit disk
/// (both to 1e-12); zeros form a multiset and may repeat.
class BlaschkeProduct {
 public:
  BlaschkeProduct(Complex mu, std::vector<Complex> zeros);

  /// z^n
  static BlaschkeProduct power(int n);

  Complex mu() const { return mu_; }
  std::span<const Complex> zeros() const { return zeros_; }
  int degree() const { return static_cast<int>(zeros_.size()); }

  /// Same zeros, constant multiplied by a unimodular factor.
  BlaschkeProduct scaled(Complex unimodular) const;

  /// mu * prod (z - a_j)
  Polynomial numerator() const;
  /// prod (1 - conj(a_j) z)
  Polynomial denominator() const;

 private:
  Complex mu_;
  std::vector<Complex> zeros_;
};

/// Rotated disk automorphism e^{i theta} (z - a) / (1 - conj(a) z).
class DiskAutomorphism {
 public:
  explicit DiskAutomorphism(Complex a, double theta = 0.0);

  Complex a() const { return a_; }
  double theta() const { return theta_; }

  Complex operator()(Complex z) const;
  Complex inverse(Complex w) const;
  BlaschkeProduct as_blaschke() const;

 private:
  Complex a_;
  double theta_;
};

/// Solutions of B(z) = lambda for a unimodular target, on the unit circle.
struct PreimageFiber {
  Complex lambda;
  /// Sorted by principal argument, strictly increasing in [0, 2pi).
  std::vector<Complex> points;
  /// Largest ||z| - 1| among the raw roots before radial projection.
  double max_radial_deviation = 0.0;
};

Complex evaluate(const BlaschkeProduct& b, Complex z);
Complex derivative(const BlaschkeProduct& b, Complex z);

/// Zeros of B' inside the open disk with multiplicity (degree - 1 of them).
std::vector<Complex> critical_points(const BlaschkeProduct& b);

PreimageFiber preimages(const BlaschkeProduct& b, Complex lambda);

/// All solutions of B(z) = target for |target| <= 1, no projection applied.
std::vector<Complex> solve(const BlaschkeProduct& b, Complex target);

/// outer o inner, constant fixed by matching the value at z = 1.
BlaschkeProduct compose(const BlaschkeProduct& outer, const BlaschkeProduct& inner);

/// The n distinct n-th roots of a, principal branch with arg(a) in (-pi, pi],
/// sorted by principal argument.
std::vector<Complex> nth_roots(Complex a, int n);

}  // namespace blaschke
