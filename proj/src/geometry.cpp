#include "blaschke/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "blaschke/error.hpp"

namespace blaschke {

namespace {

constexpr double kCollinear = 1e-12;
constexpr double kOnGeodesic = 1e-9;
constexpr double kTangentTol = 1e-8;

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

// Golden-section search for the minimiser of the (convex) string sum along p + t (q - p).
double argmin_on_chord(const EllipseParams& e, const Chord& c) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double t) { return e.string_sum(c.p + t * (c.q - c.p)); };
  double lo = 0.0;
  double hi = 1.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

EllipseParams ellipse_from_foci(Complex f1, Complex f2, double s) {
  const double d = std::abs(f2 - f1);
  if (!(s > d)) throw Error(ErrorKind::DegenerateEllipse, "string length must exceed the focal distance");
  EllipseParams e;
  e.focus1 = f1;
  e.focus2 = f2;
  e.string_length = s;
  e.center = 0.5 * (f1 + f2);
  e.major_len = s;
  e.minor_len = std::sqrt((s - d) * (s + d));
  if (d > 0.0) {
    double t = std::arg(f2 - f1);
    if (t < 0.0) t += std::numbers::pi;
    if (t >= std::numbers::pi) t -= std::numbers::pi;
    e.theta = t;
  }
  return e;
}

double curvature(const EllipseParams& e, double t) {
  const double half_major = e.major_len / 2.0;
  const double half_minor = e.minor_len / 2.0;
  const double s = std::sin(t + e.theta);
  const double c = std::cos(t + e.theta);
  const double q = half_major * half_major * s * s + half_minor * half_minor * c * c;
  return e.major_len * e.minor_len / (4.0 * std::pow(q, 1.5));
}

CurvatureBounds curvature_bounds(const EllipseParams& e) {
  const double big = e.major_len;
  const double small = e.minor_len;
  return {2.0 * small / (big * big), 2.0 * big / (small * small)};
}

Eccentricity eccentricity(const EllipseParams& e) {
  const double ratio = std::abs(e.focus2 - e.focus1) / e.major_len;
  return {ratio, std::sqrt(1.0 - ratio * ratio)};
}

Chord::Chord(Complex p_, Complex q_) : p(p_), q(q_) {
  if (std::abs(std::abs(p) - 1.0) > 1e-10 || std::abs(std::abs(q) - 1.0) > 1e-10)
    throw Error(ErrorKind::InvalidArgument, "chord endpoints must lie on the unit circle");
  if (p == q) throw Error(ErrorKind::CoincidentPoints, "chord endpoints coincide");
}

double chord_tangency_gap(const EllipseParams& e, const Chord& c) {
  const double t = argmin_on_chord(e, c);
  return e.string_sum(c.p + t * (c.q - c.p)) - e.string_length;
}

Complex tangency_point(const EllipseParams& e, const Chord& c) {
  // Golden section leaves the minimiser uncertain to ~sqrt(eps); Newton on the
  // derivative of the string sum along the chord finishes the job.
  const Complex d = c.q - c.p;
  double t = argmin_on_chord(e, c);
  for (int it = 0; it < 6; ++it) {
    const Complex w = c.p + t * d;
    double slope = 0.0;
    double bend = 0.0;
    for (const Complex f : {e.focus1, e.focus2}) {
      const Complex v = w - f;
      const double r = std::abs(v);
      if (r == 0.0) return w;
      const double along = (std::conj(d) * v).real() / r;
      slope += along;
      bend += (std::norm(d) - along * along) / r;
    }
    if (!(bend > 0.0)) break;
    const double next = std::clamp(t - slope / bend, 0.0, 1.0);
    const double step = next - t;
    t = next;
    if (std::abs(step) <= 1e-16) break;
  }
  const Complex w = c.p + t * d;
  if (std::abs(e.string_sum(w) - e.string_length) > kTangentTol)
    throw Error(ErrorKind::NotTangent, "chord is not tangent to the ellipse");
  return w;
}

HyperbolicGeodesic HyperbolicGeodesic::diameter(Complex direction) {
  HyperbolicGeodesic g;
  g.kind = Kind::Diameter;
  Complex d = direction / std::abs(direction);
  // Canonical orientation: argument in [0, pi).
  if (d.imag() < 0.0 || (d.imag() == 0.0 && d.real() < 0.0)) d = -d;
  g.direction = d;
  return g;
}

HyperbolicGeodesic HyperbolicGeodesic::arc(Complex center, double radius) {
  HyperbolicGeodesic g;
  g.kind = Kind::Arc;
  g.center = center;
  g.radius = radius;
  return g;
}

double HyperbolicGeodesic::residual(Complex p) const {
  if (kind == Kind::Diameter) return std::abs(cross(direction, p));
  return std::abs(std::abs(p - center) - radius);
}

Complex HyperbolicGeodesic::tangent_at(Complex p) const {
  if (kind == Kind::Diameter) return direction;
  const Complex normal = p - center;
  return Complex{0.0, 1.0} * normal / std::abs(normal);
}

HyperbolicGeodesic geodesic_through(Complex p, Complex q) {
  if (std::abs(p) > 1.0 + 1e-9 || std::abs(q) > 1.0 + 1e-9)
    throw Error(ErrorKind::InvalidArgument, "geodesic endpoints must lie in the closed disk");
  if (std::abs(p - q) <= 1e-15) throw Error(ErrorKind::CoincidentPoints, "geodesic needs two distinct points");

  if (std::abs(cross(p, q)) <= kCollinear * std::abs(p) * std::abs(q)) {
    return HyperbolicGeodesic::diameter(std::abs(p) >= std::abs(q) ? p : q);
  }
  // Orthogonality to the unit circle: Re(conj(c) z) = (1 + |z|^2) / 2 for z in {p, q}.
  const double rp = 0.5 * (1.0 + std::norm(p));
  const double rq = 0.5 * (1.0 + std::norm(q));
  const double det = p.real() * q.imag() - p.imag() * q.real();
  const Complex c{(rp * q.imag() - rq * p.imag()) / det, (p.real() * rq - q.real() * rp) / det};
  return HyperbolicGeodesic::arc(c, std::sqrt(std::norm(c) - 1.0));
}

Complex geodesic_intersection(const HyperbolicGeodesic& g1, const HyperbolicGeodesic& g2) {
  using Kind = HyperbolicGeodesic::Kind;
  if (g1.kind == Kind::Diameter && g2.kind == Kind::Diameter) {
    if (std::abs(cross(g1.direction, g2.direction)) <= kCollinear)
      throw Error(ErrorKind::IdenticalGeodesics, "diameters coincide");
    return Complex{0.0};
  }
  if (g1.kind == Kind::Arc && g2.kind == Kind::Diameter) return geodesic_intersection(g2, g1);

  if (g1.kind == Kind::Diameter) {
    // Points t d with |t d - c|^2 = r^2 reduce to t^2 - 2 beta t + 1 = 0.
    const double beta = (std::conj(g2.center) * g1.direction).real();
    const double disc = beta * beta - 1.0;
    if (disc <= 0.0) throw Error(ErrorKind::NoIntersectionInDisk, "diameter misses the arc");
    const double t = 1.0 / (beta + std::copysign(std::sqrt(disc), beta));
    if (std::abs(t) >= 1.0) throw Error(ErrorKind::NoIntersectionInDisk, "intersection on the boundary");
    return t * g1.direction;
  }

  const Complex delta = g2.center - g1.center;
  const double d = std::abs(delta);
  if (d <= 1e-12 && std::abs(g1.radius - g2.radius) <= 1e-12)
    throw Error(ErrorKind::IdenticalGeodesics, "arcs coincide");
  if (d <= 1e-12) throw Error(ErrorKind::NoIntersectionInDisk, "concentric arcs");
  const double along = (g1.radius * g1.radius - g2.radius * g2.radius + d * d) / (2.0 * d);
  const double h2 = g1.radius * g1.radius - along * along;
  if (h2 <= 0.0) throw Error(ErrorKind::NoIntersectionInDisk, "arcs do not cross");
  const Complex u = delta / d;
  const Complex base = g1.center + along * u;
  const Complex offset = Complex{0.0, 1.0} * u * std::sqrt(h2);
  const Complex a = base + offset;
  const Complex b = base - offset;
  const Complex inside = std::abs(a) < std::abs(b) ? a : b;
  if (std::abs(inside) >= 1.0) throw Error(ErrorKind::NoIntersectionInDisk, "arcs meet outside the disk");
  return inside;
}

double geodesic_angle_at(const HyperbolicGeodesic& g1, const HyperbolicGeodesic& g2, Complex p) {
  if (g1.residual(p) > kOnGeodesic || g2.residual(p) > kOnGeodesic)
    throw Error(ErrorKind::PointNotOnGeodesic, "point does not lie on both geodesics");
  const Complex t = g1.tangent_at(p) * std::conj(g2.tangent_at(p));
  return std::atan2(std::abs(t.imag()), std::abs(t.real()));
}

CircleFit fit_circle(std::span<const Complex> points) {
  if (points.size() < 3) throw Error(ErrorKind::InvalidArgument, "circle fit needs at least three points");
  const Complex b = points[1] - points[0];
  const Complex c = points[2] - points[0];
  const double det = 2.0 * cross(b, c);
  const double scale = std::max(std::norm(b), std::norm(c));
  if (std::abs(det) <= 1e-14 * scale) throw Error(ErrorKind::CollinearPoints, "defining points are collinear");
  const double nb = std::norm(b);
  const double nc = std::norm(c);
  const Complex offset{(c.imag() * nb - b.imag() * nc) / det, (b.real() * nc - c.real() * nb) / det};

  CircleFit fit;
  fit.center = points[0] + offset;
  fit.radius = std::abs(offset);
  for (const auto& p : points) fit.max_residual = std::max(fit.max_residual, std::abs(std::abs(p - fit.center) - fit.radius));
  return fit;
}

}  // namespace blaschke
