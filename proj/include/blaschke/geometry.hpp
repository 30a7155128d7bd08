#pragma once

#include <span>

#include "blaschke/polynomial.hpp"

namespace blaschke {

/// Ellipse given by the string construction |w - f1| + |w - f2| = s.
/// major_len is the full major axis (= s), minor_len the full minor axis,
/// theta the major-axis direction in [0, pi) (0 for a circle).
struct EllipseParams {
  Complex focus1;
  Complex focus2;
  double string_length = 0.0;
  Complex center;
  double major_len = 0.0;
  double minor_len = 0.0;
  double theta = 0.0;

  double string_sum(Complex w) const { return std::abs(w - focus1) + std::abs(w - focus2); }
};

EllipseParams ellipse_from_foci(Complex f1, Complex f2, double s);

/// Curvature at parameter t of the rotated ellipse
/// ((M/2) cos t, (m/2) sin t) rotated by -theta, i.e.
/// M m / (4 ((M/2)^2 sin^2(t+theta) + (m/2)^2 cos^2(t+theta))^{3/2}).
double curvature(const EllipseParams& e, double t);

struct CurvatureBounds {
  double lower = 0.0;  // 2m / M^2
  double upper = 0.0;  // 2M / m^2
};

CurvatureBounds curvature_bounds(const EllipseParams& e);

struct Eccentricity {
  /// |f2 - f1| / M
  double standard = 0.0;
  /// sqrt(1 - |f2 - f1|^2 / M^2), which equals m / M. Some sources call this the
  /// eccentricity; it is kept for comparison with those tables.
  double axis_ratio_form = 0.0;
};

Eccentricity eccentricity(const EllipseParams& e);

/// Segment between two distinct points of the unit circle.
struct Chord {
  Chord(Complex p, Complex q);
  Complex p;
  Complex q;
};

/// min over the segment of the string sum, minus the string length. Zero for a
/// tangent chord, positive if the chord misses the ellipse, negative if it cuts it.
double chord_tangency_gap(const EllipseParams& e, const Chord& c);

/// Point of the chord closest (in string sum) to the ellipse; throws NotTangent
/// unless |gap| <= 1e-8.
Complex tangency_point(const EllipseParams& e, const Chord& c);

/// Geodesic of the Poincare disk: a diameter or an arc of a circle orthogonal
/// to the unit circle (|center|^2 = radius^2 + 1).
struct HyperbolicGeodesic {
  enum class Kind { Diameter, Arc };

  static HyperbolicGeodesic diameter(Complex direction);
  static HyperbolicGeodesic arc(Complex center, double radius);

  /// Distance-like incidence residual of p (0 when p lies on the geodesic).
  double residual(Complex p) const;
  /// Unit tangent direction at a point of the geodesic.
  Complex tangent_at(Complex p) const;

  Kind kind = Kind::Diameter;
  Complex direction{1.0};
  Complex center;
  double radius = 0.0;
};

HyperbolicGeodesic geodesic_through(Complex p, Complex q);
Complex geodesic_intersection(const HyperbolicGeodesic& g1, const HyperbolicGeodesic& g2);
/// Unsigned angle in [0, pi/2] between the two geodesics at p.
double geodesic_angle_at(const HyperbolicGeodesic& g1, const HyperbolicGeodesic& g2, Complex p);

struct CircleFit {
  Complex center;
  double radius = 0.0;
  double max_residual = 0.0;
};

/// Circumcircle of the first three points; residual reported over all points.
CircleFit fit_circle(std::span<const Complex> points);

}  // namespace blaschke
