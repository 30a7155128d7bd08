#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "blaschke/blaschke.hpp"
#include "blaschke/geometry.hpp"

namespace blaschke {

/// Ellipse inscribed in the fiber triangles of z (z - a)(z - b) / ((1 - conj(a) z)(1 - conj(b) z)):
/// foci a, b and string length |1 - conj(a) b|.
struct Ellipse3Spec {
  Complex zero_a;
  Complex zero_b;
  EllipseParams ellipse;
};

Ellipse3Spec blaschke3_ellipse(Complex a, Complex b);

/// Ellipse inscribed in the fiber quadrilaterals of z B(z) when B has zeros a, b, c
/// and z B(z) = C(D(z)) with D(z) = z sigma_a(z). Foci b, c and string length
/// |1 - conj(b) c| sqrt((2 - |b|^2 - |c|^2) / (1 - |b|^2 |c|^2)).
struct Ellipse4Spec {
  Complex a;
  Complex b;
  Complex c;
  EllipseParams ellipse;
  /// max |zB(z) - zB(z')| over sampled pairs with D(z) = D(z'); ~0 when the
  /// decomposition through D holds.
  double decomposition_residual = 0.0;
};

Ellipse4Spec blaschke4_ellipse(Complex a, Complex b, Complex c);

struct PonceletTriangle {
  Complex lambda;
  /// Fiber of lambda, argument sorted.
  std::array<Complex, 3> vertices;
  /// midpoints[j] is the midpoint of the side opposite vertices[j].
  std::array<Complex, 3> midpoints;
  /// tangency_points[j] lies on the side opposite vertices[j]. Present only when
  /// the product has a zero at the origin.
  std::optional<std::array<Complex, 3>> tangency_points;
};

/// Throws CoalescedFiber when two vertices are closer than 1e-8.
PonceletTriangle triangle_at(const BlaschkeProduct& b, Complex lambda);

struct PowerCircle {
  Complex center;
  double radius = 0.0;
};

struct PowerCircleSet {
  std::array<PowerCircle, 3> circles;
  double total_area = 0.0;
};

/// Circles centred at side midpoints through the opposite vertex. The total area
/// is cross-checked against 9/2 - (3/4) sum 2 Re(conj(z_j) z_k).
PowerCircleSet power_circles(const PonceletTriangle& t);

/// pi (9/2 - (3/4)(a^4 - 3)) for the ellipse with foci +-a centred at the origin.
double invariant_total_area(double a1);

struct SweepSample {
  double lambda_arg = 0.0;
  std::array<Complex, 3> vertices;
  std::array<double, 3> radii{};
  double total_area = 0.0;
};

struct SweepReport {
  int samples = 0;
  int skipped = 0;
  /// Retained samples in sample-index order.
  std::vector<SweepSample> rows;
  std::vector<double> areas;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double spread = 0.0;
  std::optional<double> closed_form;
};

/// Total power-circle area over n_samples targets: the first half on the grid
/// 2 pi k / ceil(n/2), the rest uniform from a generator seeded with `seed`.
/// Results depend only on (b, n_samples, seed), not on `threads`.
SweepReport sweep(const BlaschkeProduct& b, int n_samples, std::uint64_t seed, unsigned threads = 1);

struct PonceletQuadrilateral {
  Complex lambda;
  std::array<Complex, 4> vertices;
  /// Tangency gap of side (vertices[k], vertices[k+1 mod 4]).
  std::array<double, 4> side_gaps{};
  Ellipse4Spec ellipse;
};

/// Fiber of z B3(z) at lambda; `designated` must be one of B3's zeros (the zero of D(z)/z).
PonceletQuadrilateral quadrilateral_at(const BlaschkeProduct& b3, Complex designated, Complex lambda);

}  // namespace blaschke
