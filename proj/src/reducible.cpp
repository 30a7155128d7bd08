#include "blaschke/reducible.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "blaschke/error.hpp"
#include "blaschke/polynomial.hpp"

namespace blaschke {

namespace {

constexpr double kZeroCluster = 1e-9;
constexpr double kCriticalCluster = 1e-8;
constexpr double kRootMatch = 1e-8;
constexpr double kConstantMatch = 1e-8;
constexpr double kOriginXi = 1e-10;

std::vector<std::size_t> cluster_sizes(std::span<const Complex> pts, double radius) {
  std::vector<std::size_t> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (std::abs(pts[i] - pts[j]) <= radius) parent[find(i)] = find(j);
  std::vector<std::size_t> sizes(pts.size(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i) ++sizes[find(i)];
  std::erase(sizes, 0);
  return sizes;
}

// Both sets sorted by argument, aligned on the pair nearest to lhs[0].
double cyclic_match_distance(std::vector<Complex> lhs, std::vector<Complex> rhs) {
  if (lhs.size() != rhs.size() || lhs.empty()) return std::numeric_limits<double>::infinity();
  auto by_arg = [](Complex l, Complex r) { return principal_arg(l) < principal_arg(r); };
  std::sort(lhs.begin(), lhs.end(), by_arg);
  std::sort(rhs.begin(), rhs.end(), by_arg);
  std::size_t shift = 0;
  for (std::size_t k = 1; k < rhs.size(); ++k)
    if (std::abs(rhs[k] - lhs[0]) < std::abs(rhs[shift] - lhs[0])) shift = k;
  double worst = 0.0;
  for (std::size_t j = 0; j < lhs.size(); ++j)
    worst = std::max(worst, std::abs(lhs[j] - rhs[(j + shift) % rhs.size()]));
  return worst;
}

// The centroid of the critical points is only as accurate as the (n-1)-fold root
// allows (a few 1e-9 for n = 8). When B is reducible, sigma_xi^{-1} maps the zeros
// onto the n-th roots of xi, whose sum vanishes; Newton on
// H(xi) = sum (z + xi) / (1 + conj(xi) z) sharpens the candidate. H is not
// holomorphic in xi, so the step solves A d + C conj(d) = -H.
Complex polish_candidate(std::span<const Complex> zeros, Complex start) {
  Complex xi = start;
  for (int it = 0; it < 8; ++it) {
    Complex h{0.0};
    Complex da{0.0};
    Complex dc{0.0};
    for (const auto& z : zeros) {
      const Complex den = 1.0 + std::conj(xi) * z;
      h += (z + xi) / den;
      da += 1.0 / den;
      dc -= z * (z + xi) / (den * den);
    }
    const double det = std::norm(da) - std::norm(dc);
    if (!(std::abs(det) > 1e-300)) return start;
    const Complex step = (-h * std::conj(da) + dc * std::conj(h)) / det;
    xi += step;
    if (!(std::abs(xi) < 1.0) || std::abs(xi - start) > 0.25) return start;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(xi))) return xi;
  }
  return start;
}

// For n = 8 near |xi| = 0.8 the expanded numerator of B' pins the 7-fold root
// down only to ~0.1. Rebuilding the numerator in u = z - c straight from the
// zeros keeps its low coefficients accurate, so an (n-1)-fold root at c shows
// up as n-1 vanishing coefficients.
bool certify_critical_point(std::span<const Complex> zeros, Complex c) {
  Polynomial p({Complex{1.0}});
  Polynomial q({Complex{1.0}});
  Polynomial p_abs({Complex{1.0}});
  Polynomial q_abs({Complex{1.0}});
  for (const auto& a : zeros) {
    const Complex d = c - a;
    const Complex e = 1.0 - std::conj(a) * c;
    p = p * Polynomial({d, Complex{1.0}});
    q = q * Polynomial({e, -std::conj(a)});
    p_abs = p_abs * Polynomial({Complex{std::abs(d)}, Complex{1.0}});
    q_abs = q_abs * Polynomial({Complex{std::abs(e)}, Complex{std::abs(a)}});
  }
  const Polynomial w = p.derivative() * q - p * q.derivative();
  const Polynomial scale = p_abs.derivative() * q_abs + p_abs * q_abs.derivative();
  const std::size_t k = zeros.size() - 1;
  for (std::size_t j = 0; j < k; ++j)
    if (std::abs(w[j]) > 1e-11 * std::abs(scale[j])) return false;
  return std::abs(w[k]) > 1e-11 * std::abs(scale[k]);
}

}  // namespace

BlaschkeProduct conjugate_power(Complex a, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "degree must be positive");
  if (std::abs(a) >= 1.0) throw Error(ErrorKind::InvalidArgument, "conjugate point must lie in the disk");
  if (a == Complex{0.0}) return BlaschkeProduct::power(n);

  std::vector<Complex> zeros;
  for (const auto& w : nth_roots(a, n)) zeros.push_back(sigma(a, w));

  auto reference = [&](Complex z) { return sigma(a, std::pow(sigma_inverse(a, z), n)); };
  Complex partial{1.0};
  for (const auto& w : zeros) partial *= sigma(w, Complex{1.0});
  Complex mu = reference(Complex{1.0}) / partial;
  mu /= std::abs(mu);
  BlaschkeProduct b(mu, std::move(zeros));

  for (int k = 0; k < 16; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * (k + 0.5) / 16.0);
    if (std::abs(evaluate(b, z) - reference(z)) > 1e-10)
      throw std::logic_error("conjugate_power: zero set does not reproduce the conjugated power map");
  }
  return b;
}

BlaschkeProduct conjugate_power_product_form(Complex xi, int n) {
  if (xi == Complex{0.0}) return BlaschkeProduct::power(n);
  Complex mu = delta_xi(xi, n);
  std::vector<Complex> zeros;
  for (const auto& root : nth_roots(xi, n)) {
    const Complex w = sigma(xi, root);
    const Complex f = 1.0 - std::conj(w);
    mu *= f * f / std::norm(1.0 - w);
    zeros.push_back(w);
  }
  return BlaschkeProduct(mu / std::abs(mu), std::move(zeros));
}

Complex delta_xi(Complex xi, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "degree must be positive");
  if (std::abs(xi) >= 1.0) throw Error(ErrorKind::InvalidArgument, "xi must lie in the disk");
  const Complex up = std::pow(1.0 + xi, n);
  const Complex down = std::pow(1.0 + std::conj(xi), n);
  const Complex num = up - xi * down;
  const Complex den = down - std::conj(xi) * up;
  if (std::abs(den) <= 1e-14) throw Error(ErrorKind::NearSingularDenominator, "Delta denominator vanishes");
  const Complex d = num / den;
  if (std::abs(std::abs(d) - 1.0) > 1e-10) throw std::logic_error("delta_xi: result is not unimodular");
  return d;
}

std::string_view to_string(ReducibilityCondition c) {
  switch (c) {
    case ReducibilityCondition::Multiplicity: return "Multiplicity";
    case ReducibilityCondition::UniqueCriticalPoint: return "UniqueCriticalPoint";
    case ReducibilityCondition::RootSetMatch: return "RootSetMatch";
    case ReducibilityCondition::UnimodularConstant: return "UnimodularConstant";
  }
  return "Unknown";
}

ReducibilityVerdict is_reducible(const BlaschkeProduct& b) {
  const int n = b.degree();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "reducibility needs degree >= 2");
  ReducibilityVerdict v;
  const auto zeros = b.zeros();

  const auto sizes = cluster_sizes(zeros, kZeroCluster);
  const bool simple = sizes.size() == static_cast<std::size_t>(n);
  const bool single = sizes.size() == 1;
  if (!simple && !single) v.failed_conditions.push_back(ReducibilityCondition::Multiplicity);

  v.critical_points = critical_points(b);
  Complex centroid{0.0};
  for (const auto& c : v.critical_points) centroid += c;
  if (!v.critical_points.empty()) centroid /= static_cast<double>(v.critical_points.size());
  double spread = 0.0;
  for (const auto& c : v.critical_points) spread = std::max(spread, std::abs(c - centroid));
  Complex xi = -centroid;
  if (std::abs(xi) > kOriginXi && std::abs(xi) < 1.0) xi = polish_candidate(zeros, xi);
  v.candidate_xi = xi;
  if (std::abs(xi) > kOriginXi && certify_critical_point(zeros, -xi)) {
    v.critical_points.assign(static_cast<std::size_t>(n - 1), -xi);
  } else if (v.critical_points.size() != static_cast<std::size_t>(n - 1) || spread > kCriticalCluster) {
    v.failed_conditions.push_back(ReducibilityCondition::UniqueCriticalPoint);
  }

  if (std::abs(xi) <= kOriginXi) {
    // sigma_0 is the identity and the n-th roots of 0 collapse to 0: only z^n qualifies.
    const bool all_origin = std::all_of(zeros.begin(), zeros.end(), [](Complex z) { return std::abs(z) <= kRootMatch; });
    if (!all_origin) v.failed_conditions.push_back(ReducibilityCondition::RootSetMatch);
    v.delta = Complex{1.0};
  } else {
    std::vector<Complex> pulled;
    for (const auto& z : zeros) pulled.push_back(sigma_inverse(xi, z));
    if (cyclic_match_distance(pulled, nth_roots(xi, n)) > kRootMatch)
      v.failed_conditions.push_back(ReducibilityCondition::RootSetMatch);
    try {
      v.delta = delta_xi(xi, n);
    } catch (const Error&) {
      v.delta = Complex{std::numeric_limits<double>::quiet_NaN(), 0.0};
    }
  }
  if (!(std::abs(evaluate(b, Complex{1.0}) - v.delta) <= kConstantMatch))
    v.failed_conditions.push_back(ReducibilityCondition::UnimodularConstant);

  v.reducible = v.failed_conditions.empty();
  if (v.reducible) v.conjugate_point = std::abs(xi) <= kOriginXi ? Complex{0.0} : xi;
  return v;
}

double fixed_point_check(const BlaschkeProduct& b, Complex a) { return std::abs(evaluate(b, -a) + a); }

GeodesicPencil opposite_pair_geodesics(const BlaschkeProduct& b, Complex a) {
  const int n = b.degree();
  if (n % 2 != 0) throw Error(ErrorKind::OddDegree, "opposite pairs need an even degree");
  const std::size_t half = static_cast<std::size_t>(n / 2);

  // Order the zeros by the argument of their preimage under sigma_a.
  std::vector<std::pair<Complex, Complex>> order;
  for (const auto& z : b.zeros()) order.emplace_back(sigma_inverse(a, z), z);
  std::sort(order.begin(), order.end(),
            [](const auto& l, const auto& r) { return principal_arg(l.first) < principal_arg(r.first); });

  GeodesicPencil pencil;
  for (std::size_t j = 0; j < half; ++j)
    pencil.geodesics.push_back(geodesic_through(order[j].second, order[j + half].second));

  const Complex target = -a;
  if (pencil.geodesics.size() == 1) {
    pencil.intersection = target;
    pencil.max_deviation = pencil.geodesics.front().residual(target);
    return pencil;
  }
  Complex sum{0.0};
  std::size_t count = 0;
  for (std::size_t i = 0; i < pencil.geodesics.size(); ++i)
    for (std::size_t j = i + 1; j < pencil.geodesics.size(); ++j) {
      const Complex x = geodesic_intersection(pencil.geodesics[i], pencil.geodesics[j]);
      sum += x;
      ++count;
      pencil.max_deviation = std::max(pencil.max_deviation, std::abs(x - target));
    }
  pencil.intersection = sum / static_cast<double>(count);
  return pencil;
}

std::vector<double> consecutive_pair_angles(std::span<const Complex> pts) {
  const std::size_t n = pts.size();
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "need at least three points");
  std::vector<double> angles;
  for (std::size_t j = 0; j < n; ++j) {
    const Complex prev = pts[(j + n - 1) % n];
    const Complex next = pts[(j + 1) % n];
    angles.push_back(geodesic_angle_at(geodesic_through(prev, pts[j]), geodesic_through(pts[j], next), pts[j]));
  }
  return angles;
}

}  // namespace blaschke
