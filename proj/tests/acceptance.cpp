// Acceptance gate: one PASS/FAIL line per criterion.
// Usage: acceptance [--criterion N]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "blaschke/blaschke.hpp"
#include "blaschke/error.hpp"
#include "blaschke/geometry.hpp"
#include "blaschke/interp.hpp"
#include "blaschke/poncelet.hpp"
#include "blaschke/reducible.hpp"

using namespace blaschke;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Complex random_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
}

Complex random_unimodular(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  return std::polar(1.0, u(rng));
}

BlaschkeProduct zeros3(Complex a, Complex b, Complex c) { return BlaschkeProduct(Complex{1.0}, {a, b, c}); }

double max_pairwise(const std::vector<Complex>& pts) {
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) worst = std::max(worst, std::abs(pts[i] - pts[j]));
  return worst;
}

double min_pairwise(const std::vector<Complex>& pts) {
  double best = INFINITY;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, std::abs(pts[i] - pts[j]));
  return best;
}

// Shared by criteria 1 and 12: centred real foci, 500 targets each.
struct CenteredRun {
  double a;
  SweepReport report;
};

const std::vector<CenteredRun>& centered_runs(double* seconds = nullptr) {
  static std::vector<CenteredRun> runs;
  static double elapsed = 0.0;
  if (runs.empty()) {
    const auto start = std::chrono::steady_clock::now();
    for (int k = 0; k <= 9; ++k) {
      const double a = 0.1 * k;
      runs.push_back({a, sweep(zeros3(0.0, a, -a), 500, 1000 + k)});
    }
    elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  if (seconds != nullptr) *seconds = elapsed;
  return runs;
}

Outcome criterion1() {
  double seconds = 0.0;
  const auto& runs = centered_runs(&seconds);
  double worst_rel = 0.0;
  int samples = 0;
  for (const auto& run : runs) {
    const double value = kPi * (4.5 - 0.75 * (std::pow(run.a, 4) - 3.0));
    for (double area : run.report.areas) worst_rel = std::max(worst_rel, std::abs(area - value) / (1.0 + value));
    samples += static_cast<int>(run.report.areas.size());
  }
  const bool pass = worst_rel <= 1e-8 && seconds < 5.0 && samples == 5000;
  return {pass, fmt("max |area - closed form|/(1+value) = %.3e over %d fibers, %.3f s", worst_rel, samples, seconds)};
}

Outcome criterion2() {
  const auto report = sweep(BlaschkeProduct::power(3), 1000, 7);
  const double target = 27.0 * kPi / 4.0;
  double worst = 0.0;
  for (double area : report.areas) worst = std::max(worst, std::abs(area - target));
  return {worst <= 1e-12 && report.skipped == 0, fmt("max |area - 27pi/4| = %.3e", worst)};
}

Outcome criterion3() {
  const Complex f(std::sqrt(2.0) / 3.0, -1.0 / 3.0);
  const Complex g(-std::sqrt(2.0) / 3.0, -1.0 / 3.0);
  const auto report = sweep(zeros3(0.0, f, g), 1000, 42);
  const double ratio = report.spread / report.mean;
  return {ratio > 0.01, fmt("spread/mean = %.4f (min %.6f, max %.6f)", ratio, report.min, report.max)};
}

Outcome criterion4() {
  double worst = 0.0;
  std::ostringstream detail;
  for (double b : {0.5, 0.1}) {
    const auto report = sweep(zeros3(0.0, 0.0, b), 1000, 42);
    const double ratio = report.spread / report.mean;
    worst = std::max(worst, ratio);
    if (b != 0.5) detail << "; ";
    detail << fmt("b=%.1f spread/mean=%.2e mean=%.12f", b, ratio, report.mean);
  }
  return {worst <= 1e-8, detail.str()};
}

Outcome criterion5() {
  const auto e = blaschke3_ellipse(0.0, 0.5).ellipse;
  double lo = INFINITY;
  double hi = -INFINITY;
  for (int k = 0; k < 10000; ++k) {
    const double kappa = curvature(e, 2.0 * kPi * k / 10000.0);
    lo = std::min(lo, kappa);
    hi = std::max(hi, kappa);
  }
  const bool extremes = std::abs(lo - std::sqrt(3.0)) <= 1e-6 && std::abs(hi - 8.0 / 3.0) <= 1e-6;

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> extra(1e-3, 1.0);
  std::uniform_real_distribution<double> tdist(0.0, 2.0 * kPi);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const Complex f1 = random_in_disk(rng, 0.95);
    const Complex f2 = random_in_disk(rng, 0.95);
    const auto ell = ellipse_from_foci(f1, f2, std::abs(f2 - f1) + extra(rng));
    const auto bounds = curvature_bounds(ell);
    for (int j = 0; j < 100; ++j) {
      const double kappa = curvature(ell, tdist(rng));
      if (kappa < bounds.lower * (1.0 - 1e-12) || kappa > bounds.upper * (1.0 + 1e-12)) ++violations;
    }
  }
  return {extremes && violations == 0,
          fmt("min %.10f (sqrt3 %.10f), max %.10f (8/3), bound violations %d/100000", lo, std::sqrt(3.0), hi,
              violations)};
}

Outcome criterion6() {
  const auto spec = blaschke4_ellipse(0.5, 0.5, 0.0);
  const double m_err = std::abs(spec.ellipse.major_len - std::sqrt(7.0) / 4.0);
  const double n_err = std::abs(spec.ellipse.minor_len - std::sqrt(3.0) / 4.0);

  std::mt19937_64 rng(6);
  const auto b3 = zeros3(0.5, 0.5, 0.0);
  double worst_gap = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto quad = quadrilateral_at(b3, 0.5, random_unimodular(rng));
    for (double g : quad.side_gaps) worst_gap = std::max(worst_gap, std::abs(g));
  }
  // Gaps against the ellipse with the expected axes, for the record.
  const auto expected = ellipse_from_foci(0.0, 0.5, std::sqrt(7.0) / 4.0);
  const auto quad = quadrilateral_at(b3, 0.5, Complex{1.0});
  double expected_gap = 0.0;
  for (int k = 0; k < 4; ++k)
    expected_gap = std::max(expected_gap,
                            std::abs(chord_tangency_gap(expected, Chord(quad.vertices[k], quad.vertices[(k + 1) % 4]))));

  const bool axes = m_err <= 1e-12 && n_err <= 1e-12;
  const bool gaps = worst_gap <= 1e-7;
  return {axes && gaps,
          fmt("M = %.12f (want %.12f), m = %.12f (want %.12f): %s; max side gap over 50 fibers %.2e: %s; "
              "gap against the M=sqrt7/4 ellipse %.4f",
              spec.ellipse.major_len, std::sqrt(7.0) / 4.0, spec.ellipse.minor_len, std::sqrt(3.0) / 4.0,
              axes ? "ok" : "mismatch", worst_gap, gaps ? "ok" : "too large", expected_gap)};
}

Outcome criterion7() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> degree(2, 8);
  double worst = 0.0;
  int recovered = 0;
  int exact_rejections = 0;
  int other_rejections = 0;
  for (int i = 0; i < 100; ++i) {
    const Complex a = random_in_disk(rng, 0.8);
    const int n = degree(rng);
    const auto b = conjugate_power(a, n);
    const auto v = is_reducible(b);
    if (v.reducible && v.conjugate_point) {
      const double err = std::abs(*v.conjugate_point - a);
      worst = std::max(worst, err);
      if (err <= 1e-8) ++recovered;
    }
    const auto r = is_reducible(b.scaled(Complex{0.0, 1.0}));
    const bool exact = !r.reducible && r.failed_conditions.size() == 1 &&
                       r.failed_conditions.front() == ReducibilityCondition::UnimodularConstant;
    if (exact) {
      ++exact_rejections;
    } else if (!r.reducible) {
      ++other_rejections;
    }
  }
  return {recovered == 100 && exact_rejections >= 95 && exact_rejections + other_rejections == 100,
          fmt("recovered %d/100 (max error %.2e); i*B rejected with exactly UnimodularConstant %d/100", recovered,
              worst, exact_rejections)};
}

Outcome criterion8() {
  const Complex a(0.2, 0.3);
  const auto b = conjugate_power(a, 6);
  const auto pencil = opposite_pair_geodesics(b, a);
  const auto zero_angles = consecutive_pair_angles(b.zeros());
  const auto roots = nth_roots(a, 6);
  const auto root_angles = consecutive_pair_angles(roots);
  double angle_err = 0.0;
  for (std::size_t j = 0; j < zero_angles.size(); ++j)
    angle_err = std::max(angle_err, std::abs(zero_angles[j] - root_angles[j]));
  return {pencil.geodesics.size() == 3 && pencil.max_deviation <= 1e-9 && angle_err <= 1e-9,
          fmt("%zu geodesics, intersection %.12f%+.12fi, max deviation %.2e, angle mismatch %.2e",
              pencil.geodesics.size(), pencil.intersection.real(), pencil.intersection.imag(), pencil.max_deviation,
              angle_err)};
}

Outcome criterion9() {
  const Complex a(0.2, 0.3);
  const auto b = conjugate_power(a, 6);
  const auto crit = critical_points(b);
  double radius = 0.0;
  for (const auto& c : crit) radius = std::max(radius, std::abs(c + a));
  const double fixed = fixed_point_check(b, a);
  return {crit.size() == 5 && radius <= 1e-8 && fixed <= 1e-10,
          fmt("%zu in-disk critical points, max distance from -a %.2e, |B(-a)+a| = %.2e", crit.size(), radius, fixed)};
}

Outcome criterion10() {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> degree(1, 8);
  double worst_radial = 0.0;
  double worst_residual = 0.0;
  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const int n = degree(rng);
    std::vector<Complex> zeros;
    for (int k = 0; k < n; ++k) zeros.push_back(random_in_disk(rng, 0.95));
    const BlaschkeProduct b(random_unimodular(rng), zeros);
    for (int t = 0; t < 10; ++t) {
      const Complex lambda = random_unimodular(rng);
      try {
        const auto fiber = preimages(b, lambda);
        if (fiber.points.size() != static_cast<std::size_t>(n)) ++failures;
        worst_radial = std::max(worst_radial, fiber.max_radial_deviation);
        for (const auto& z : fiber.points) worst_residual = std::max(worst_residual, std::abs(evaluate(b, z) - lambda));
      } catch (const Error&) {
        ++failures;
      }
    }
  }
  return {failures == 0 && worst_radial <= 1e-10 && worst_residual <= 1e-9,
          fmt("max radial deviation %.2e, max |B(z)-lambda| %.2e, failures %d", worst_radial, worst_residual, failures)};
}

Outcome criterion11() {
  const auto spec = default_counterexample_spec();
  const auto b = build_interpolant(spec);
  std::vector<Complex> ws_b;
  std::vector<Complex> zs_b;
  std::vector<Complex> ws_cubed;
  for (const auto& w : spec.ws()) {
    ws_b.push_back(b(w));
    ws_cubed.push_back(std::pow(w, 3));
  }
  for (const auto& z : spec.zs()) zs_b.push_back(b(z));
  const double ws_spread = max_pairwise(ws_b);
  const double zs_spread = max_pairwise(zs_b);
  const double cubed_sep = min_pairwise(ws_cubed);
  return {ws_spread <= 1e-9 && zs_spread <= 1e-9 && cubed_sep >= 0.1,
          fmt("B on ws spread %.2e, B on zs spread %.2e, z^3 on ws min separation %.4f, |B(0)| = %.6f", ws_spread,
              zs_spread, cubed_sep, std::abs(b(Complex{0.0})))};
}

Outcome criterion12() {
  double worst_product = 0.0;
  double worst_eval = 0.0;
  for (const auto& run : centered_runs()) {
    const double expect = (1.0 - run.a * run.a) * (1.0 + run.a * run.a);
    for (const auto& row : run.report.rows) {
      const Complex lambda = std::polar(1.0, row.lambda_arg);
      const auto& z = row.vertices;
      worst_product = std::max(worst_product, std::abs(z[0] * z[1] * z[2] - lambda));
      for (double s : {run.a, -run.a}) {
        const double value = std::abs((s - z[0]) * (s - z[1]) * (s - z[2]));
        worst_eval = std::max(worst_eval, std::abs(value - expect));
      }
    }
  }
  return {worst_product <= 1e-9 && worst_eval <= 1e-9,
          fmt("max |z1z2z3 - lambda| %.2e, max focus-evaluation residual %.2e", worst_product, worst_eval)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2,  criterion3,  criterion4,
                                                          criterion5, criterion6,  criterion7,  criterion8,
                                                          criterion9, criterion10, criterion11, criterion12};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected.insert(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
  }

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.contains(id)) continue;
    Outcome out;
    try {
      out = criteria[i]();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2d %s  %s\n", id, out.pass ? "PASS" : "FAIL", out.detail.c_str());
    if (!out.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
