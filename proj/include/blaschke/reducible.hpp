#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "blaschke/blaschke.hpp"
#include "blaschke/geometry.hpp"

namespace blaschke {

/// sigma_a o z^n o sigma_a^{-1}. Zeros are sigma_a of the argument-sorted n-th
/// roots of a, in that order; a = 0 gives z^n.
BlaschkeProduct conjugate_power(Complex a, int n);

/// The same product assembled as Delta_xi * prod_w (1 - conj w)^2 / |1 - w|^2 sigma_w(z)
/// over the zero set w. Independent of conjugate_power's evaluation-matching
/// constant, so the two can be checked against each other.
BlaschkeProduct conjugate_power_product_form(Complex xi, int n);

/// Value at z = 1 of the reducible product with conjugate point xi:
/// ((1+xi)^n - xi (1+conj xi)^n) / ((1+conj xi)^n - conj(xi) (1+xi)^n).
Complex delta_xi(Complex xi, int n);

enum class ReducibilityCondition { Multiplicity, UniqueCriticalPoint, RootSetMatch, UnimodularConstant };

std::string_view to_string(ReducibilityCondition c);

struct ReducibilityVerdict {
  bool reducible = false;
  std::optional<Complex> conjugate_point;
  std::vector<ReducibilityCondition> failed_conditions;
  /// Candidate conjugate point: minus the centroid of the in-disk critical points.
  Complex candidate_xi;
  /// Delta at the candidate point.
  Complex delta;
  std::vector<Complex> critical_points;
};

ReducibilityVerdict is_reducible(const BlaschkeProduct& b);

/// |B(-a) + a|
double fixed_point_check(const BlaschkeProduct& b, Complex a);

struct GeodesicPencil {
  std::vector<HyperbolicGeodesic> geodesics;
  /// Mean of the pairwise intersections (or -a itself for a single geodesic).
  Complex intersection;
  /// Largest distance of a pairwise intersection from -a (incidence residual of -a
  /// when there is only one geodesic).
  double max_deviation = 0.0;
};

/// Geodesics through opposite zero pairs sigma_a(w), sigma_a(-w) of an even-degree
/// reducible product with conjugate point a.
GeodesicPencil opposite_pair_geodesics(const BlaschkeProduct& b, Complex a);

/// Angle at each point between the geodesics joining it to its cyclic neighbours.
std::vector<double> consecutive_pair_angles(std::span<const Complex> cyclic_points);

}  // namespace blaschke
