#include "blaschke/poncelet.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include "blaschke/error.hpp"

namespace blaschke {

namespace {

constexpr double kCoalesced = 1e-8;
constexpr double kOriginZero = 1e-9;

template <std::size_t N>
void check_distinct(const std::array<Complex, N>& pts) {
  for (std::size_t i = 0; i < N; ++i)
    if (std::abs(pts[i] - pts[(i + 1) % N]) < kCoalesced)
      throw Error(ErrorKind::CoalescedFiber, "fiber points coalesce; target is near a critical value");
}

}  // namespace

Ellipse3Spec blaschke3_ellipse(Complex a, Complex b) {
  if (std::abs(a) >= 1.0 || std::abs(b) >= 1.0) throw Error(ErrorKind::InvalidArgument, "zeros must lie in the disk");
  return {a, b, ellipse_from_foci(a, b, std::abs(1.0 - std::conj(a) * b))};
}

Ellipse4Spec blaschke4_ellipse(Complex a, Complex b, Complex c) {
  if (std::abs(a) >= 1.0 || std::abs(b) >= 1.0 || std::abs(c) >= 1.0)
    throw Error(ErrorKind::InvalidArgument, "zeros must lie in the disk");
  const double nb = std::norm(b);
  const double nc = std::norm(c);
  const double s = std::abs(1.0 - std::conj(b) * c) * std::sqrt((2.0 - nb - nc) / (1.0 - nb * nc));

  Ellipse4Spec spec{a, b, c, ellipse_from_foci(b, c, s), 0.0};

  const BlaschkeProduct inner(Complex{1.0}, {Complex{0.0}, a});
  const BlaschkeProduct whole(Complex{1.0}, {Complex{0.0}, a, b, c});
  for (int k = 0; k < 8; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / 8.0 + 0.3);
    const auto pair = solve(inner, evaluate(inner, z));
    const Complex other = std::abs(pair[0] - z) > std::abs(pair[1] - z) ? pair[0] : pair[1];
    const Complex projected = other / std::abs(other);
    spec.decomposition_residual =
        std::max(spec.decomposition_residual, std::abs(evaluate(whole, z) - evaluate(whole, projected)));
  }
  return spec;
}

PonceletTriangle triangle_at(const BlaschkeProduct& b, Complex lambda) {
  if (b.degree() != 3) throw Error(ErrorKind::InvalidArgument, "Poncelet triangles need a degree-3 product");
  const auto fiber = preimages(b, lambda);

  PonceletTriangle t;
  t.lambda = lambda;
  std::copy(fiber.points.begin(), fiber.points.end(), t.vertices.begin());
  check_distinct(t.vertices);
  for (std::size_t j = 0; j < 3; ++j) t.midpoints[j] = 0.5 * (t.vertices[(j + 1) % 3] + t.vertices[(j + 2) % 3]);

  std::vector<Complex> rest(b.zeros().begin(), b.zeros().end());
  const auto origin = std::min_element(rest.begin(), rest.end(),
                                       [](Complex l, Complex r) { return std::abs(l) < std::abs(r); });
  if (std::abs(*origin) <= kOriginZero) {
    rest.erase(origin);
    const auto spec = blaschke3_ellipse(rest[0], rest[1]);
    std::array<Complex, 3> touch;
    for (std::size_t j = 0; j < 3; ++j)
      touch[j] = tangency_point(spec.ellipse, Chord(t.vertices[(j + 1) % 3], t.vertices[(j + 2) % 3]));
    t.tangency_points = touch;
  }
  return t;
}

PowerCircleSet power_circles(const PonceletTriangle& t) {
  PowerCircleSet set;
  double sum_sq = 0.0;
  for (std::size_t j = 0; j < 3; ++j) {
    const double r = std::abs(t.vertices[j] - t.midpoints[j]);
    set.circles[j] = {t.midpoints[j], r};
    sum_sq += r * r;
  }
  set.total_area = std::numbers::pi * sum_sq;

  double cross_terms = 0.0;
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = j + 1; k < 3; ++k) cross_terms += 2.0 * (std::conj(t.vertices[j]) * t.vertices[k]).real();
  const double expanded = 4.5 - 0.75 * cross_terms;
  if (std::abs(expanded - sum_sq) > 1e-10)
    throw Error(ErrorKind::InvalidArgument, "triangle vertices are not on the unit circle");
  return set;
}

double invariant_total_area(double a1) {
  if (!(a1 >= 0.0 && a1 < 1.0)) throw Error(ErrorKind::InvalidArgument, "focus must satisfy 0 <= a < 1");
  const double a4 = a1 * a1 * a1 * a1;
  return std::numbers::pi * (4.5 - 0.75 * (a4 - 3.0));
}

namespace {

std::optional<double> centred_real_closed_form(const BlaschkeProduct& b) {
  std::vector<Complex> rest(b.zeros().begin(), b.zeros().end());
  const auto origin = std::min_element(rest.begin(), rest.end(),
                                       [](Complex l, Complex r) { return std::abs(l) < std::abs(r); });
  if (std::abs(*origin) > 1e-10) return std::nullopt;
  rest.erase(origin);
  if (std::abs(rest[0] + rest[1]) > 1e-10) return std::nullopt;
  if (std::abs(rest[0].imag()) > 1e-10 || std::abs(rest[1].imag()) > 1e-10) return std::nullopt;
  return invariant_total_area(std::abs(rest[0]));
}

}  // namespace

SweepReport sweep(const BlaschkeProduct& b, int n_samples, std::uint64_t seed, unsigned threads) {
  if (b.degree() != 3) throw Error(ErrorKind::InvalidArgument, "sweep needs a degree-3 product");
  if (n_samples < 1) throw Error(ErrorKind::InvalidArgument, "sweep needs at least one sample");

  const auto n = static_cast<std::size_t>(n_samples);
  const std::size_t n_grid = (n + 1) / 2;
  std::vector<double> angles(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < n; ++i)
    angles[i] = i < n_grid ? 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_grid)
                           : uniform(rng);

  std::vector<SweepSample> slots(n);
  std::vector<char> kept(n, 0);
  std::exception_ptr failure;
  std::mutex failure_lock;

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        const auto tri = triangle_at(b, std::polar(1.0, angles[i]));
        const auto circles = power_circles(tri);
        SweepSample& s = slots[i];
        s.lambda_arg = angles[i];
        s.vertices = tri.vertices;
        for (std::size_t j = 0; j < 3; ++j) s.radii[j] = circles.circles[j].radius;
        s.total_area = circles.total_area;
        kept[i] = 1;
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::CoalescedFiber) continue;
        std::lock_guard lock(failure_lock);
        if (!failure) failure = std::current_exception();
        return;
      } catch (...) {
        std::lock_guard lock(failure_lock);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, n);
  if (workers == 1) {
    work(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }
  if (failure) std::rethrow_exception(failure);

  SweepReport report;
  report.samples = n_samples;
  for (std::size_t i = 0; i < n; ++i) {
    if (!kept[i]) {
      ++report.skipped;
      continue;
    }
    report.rows.push_back(slots[i]);
    report.areas.push_back(slots[i].total_area);
  }
  if (report.skipped * 10 > n_samples || report.areas.empty())
    throw Error(ErrorKind::TooManySkips, std::to_string(report.skipped) + " of " + std::to_string(n_samples) +
                                             " targets hit coalesced fibers");

  const auto [lo, hi] = std::minmax_element(report.areas.begin(), report.areas.end());
  report.min = *lo;
  report.max = *hi;
  double total = 0.0;
  for (double a : report.areas) total += a;
  report.mean = std::clamp(total / static_cast<double>(report.areas.size()), report.min, report.max);
  report.spread = report.max - report.min;
  report.closed_form = centred_real_closed_form(b);
  return report;
}

PonceletQuadrilateral quadrilateral_at(const BlaschkeProduct& b3, Complex designated, Complex lambda) {
  if (b3.degree() != 3) throw Error(ErrorKind::InvalidArgument, "quadrilaterals need a degree-3 product");
  std::vector<Complex> rest(b3.zeros().begin(), b3.zeros().end());
  const auto hit = std::min_element(rest.begin(), rest.end(), [&](Complex l, Complex r) {
    return std::abs(l - designated) < std::abs(r - designated);
  });
  if (std::abs(*hit - designated) > 1e-9)
    throw Error(ErrorKind::InvalidArgument, "designated zero is not a zero of the product");
  const Complex a = *hit;
  rest.erase(hit);

  std::vector<Complex> zeros(b3.zeros().begin(), b3.zeros().end());
  zeros.push_back(Complex{0.0});
  const BlaschkeProduct lifted(b3.mu(), std::move(zeros));
  const auto fiber = preimages(lifted, lambda);

  PonceletQuadrilateral quad;
  quad.lambda = lambda;
  std::copy(fiber.points.begin(), fiber.points.end(), quad.vertices.begin());
  check_distinct(quad.vertices);
  quad.ellipse = blaschke4_ellipse(a, rest[0], rest[1]);
  for (std::size_t k = 0; k < 4; ++k)
    quad.side_gaps[k] = chord_tangency_gap(quad.ellipse.ellipse, Chord(quad.vertices[k], quad.vertices[(k + 1) % 4]));
  return quad;
}

}  // namespace blaschke
