#include "blaschke/blaschke.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <string>

#include "blaschke/error.hpp"

namespace blaschke {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kPoleTol = 1e-14;
constexpr double kDomainSlack = 1e-9;
constexpr double kProjectTol = 1e-8;

void check_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " is not finite");
}

void check_domain(const BlaschkeProduct& b, Complex z) {
  check_finite(z, "evaluation point");
  if (std::abs(z) > 1.0 + kDomainSlack)
    throw Error(ErrorKind::InvalidArgument, "evaluation point outside the closed unit disk");
  for (const auto& a : b.zeros())
    if (std::abs(1.0 - std::conj(a) * z) < kPoleTol)
      throw Error(ErrorKind::PoleProximity, "evaluation point too close to a pole");
}

}  // namespace

double principal_arg(Complex z) {
  double t = std::atan2(z.imag(), z.real());
  if (t < 0.0) t += 2.0 * std::numbers::pi;
  if (t >= 2.0 * std::numbers::pi) t = 0.0;
  return t;
}

Complex sigma(Complex a, Complex z) { return (z - a) / (1.0 - std::conj(a) * z); }

Complex sigma_inverse(Complex a, Complex z) { return (z + a) / (1.0 + std::conj(a) * z); }

BlaschkeProduct::BlaschkeProduct(Complex mu, std::vector<Complex> zeros) : mu_(mu), zeros_(std::move(zeros)) {
  check_finite(mu_, "unimodular constant");
  if (std::abs(std::abs(mu_) - 1.0) > kUnitTol)
    throw Error(ErrorKind::InvalidArgument, "unimodular constant must have modulus 1");
  if (zeros_.empty()) throw Error(ErrorKind::InvalidArgument, "a Blaschke product needs at least one zero");
  for (const auto& a : zeros_) {
    check_finite(a, "zero");
    if (std::abs(a) >= 1.0 - kUnitTol) throw Error(ErrorKind::InvalidArgument, "zeros must lie inside the unit disk");
  }
}

BlaschkeProduct BlaschkeProduct::power(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "power degree must be positive");
  return BlaschkeProduct(Complex{1.0}, std::vector<Complex>(static_cast<std::size_t>(n), Complex{0.0}));
}

BlaschkeProduct BlaschkeProduct::scaled(Complex unimodular) const {
  return BlaschkeProduct(mu_ * unimodular, zeros_);
}

Polynomial BlaschkeProduct::numerator() const {
  Polynomial p({mu_});
  for (const auto& a : zeros_) p = p * Polynomial::linear_root(a);
  return p;
}

Polynomial BlaschkeProduct::denominator() const {
  Polynomial q({Complex{1.0}});
  for (const auto& a : zeros_) q = q * Polynomial({Complex{1.0}, -std::conj(a)});
  return q;
}

DiskAutomorphism::DiskAutomorphism(Complex a, double theta) : a_(a), theta_(std::fmod(theta, 2.0 * std::numbers::pi)) {
  check_finite(a, "automorphism parameter");
  if (std::abs(a) >= 1.0 - kUnitTol) throw Error(ErrorKind::InvalidArgument, "automorphism parameter outside the disk");
  if (theta_ < 0.0) theta_ += 2.0 * std::numbers::pi;
}

Complex DiskAutomorphism::operator()(Complex z) const { return std::polar(1.0, theta_) * sigma(a_, z); }

Complex DiskAutomorphism::inverse(Complex w) const { return sigma_inverse(a_, std::polar(1.0, -theta_) * w); }

BlaschkeProduct DiskAutomorphism::as_blaschke() const { return BlaschkeProduct(std::polar(1.0, theta_), {a_}); }

Complex evaluate(const BlaschkeProduct& b, Complex z) {
  check_domain(b, z);
  Complex acc = b.mu();
  for (const auto& a : b.zeros()) acc *= sigma(a, z);
  return acc;
}

Complex derivative(const BlaschkeProduct& b, Complex z) {
  check_domain(b, z);
  const auto zeros = b.zeros();
  const bool near_zero = std::any_of(zeros.begin(), zeros.end(), [&](Complex a) { return std::abs(z - a) < 1e-8; });

  if (!near_zero) {
    Complex log_slope{0.0};
    for (const auto& a : zeros) log_slope += 1.0 / (z - a) + std::conj(a) / (1.0 - std::conj(a) * z);
    return evaluate(b, z) * log_slope;
  }

  // Product rule: sum_j sigma_j'(z) prod_{k != j} sigma_k(z).
  Complex total{0.0};
  for (std::size_t j = 0; j < zeros.size(); ++j) {
    const Complex denom = 1.0 - std::conj(zeros[j]) * z;
    Complex term = (1.0 - std::norm(zeros[j])) / (denom * denom);
    for (std::size_t k = 0; k < zeros.size(); ++k)
      if (k != j) term *= sigma(zeros[k], z);
    total += term;
  }
  return b.mu() * total;
}

namespace {

// Newton on B'/B, evaluated from the zeros. The expanded numerator of B' loses
// accuracy when zeros crowd near the circle; this form does not. Repeated
// critical points and points sitting on a zero are left alone.
Complex polish_critical(std::span<const Complex> zeros, const std::vector<Complex>& all, Complex z) {
  const auto near = std::count_if(all.begin(), all.end(), [&](Complex o) { return std::abs(o - z) < 1e-6; });
  if (near > 1) return z;
  for (const auto& a : zeros)
    if (std::abs(z - a) < 1e-8) return z;
  auto log_derivative = [&](Complex w, Complex& slope) {
    Complex value{0.0};
    slope = Complex{0.0};
    for (const auto& a : zeros) {
      const Complex u = 1.0 / (w - a);
      const Complex v = std::conj(a) / (1.0 - std::conj(a) * w);
      value += u + v;
      slope += v * v - u * u;
    }
    return value;
  };
  Complex slope;
  Complex value = log_derivative(z, slope);
  const Complex start = z;
  for (int it = 0; it < 6 && slope != Complex{0.0}; ++it) {
    const Complex next = z - value / slope;
    if (std::abs(next - start) > 1e-6 || !(std::abs(next) < 1.0)) break;
    Complex next_slope;
    const Complex next_value = log_derivative(next, next_slope);
    if (std::abs(next_value) >= std::abs(value)) break;
    z = next;
    value = next_value;
    slope = next_slope;
  }
  return z;
}

}  // namespace

std::vector<Complex> critical_points(const BlaschkeProduct& b) {
  if (b.degree() < 2) throw Error(ErrorKind::InvalidArgument, "critical points need degree >= 2");
  Polynomial p({Complex{1.0}});
  for (const auto& a : b.zeros()) p = p * Polynomial::linear_root(a);
  const Polynomial q = b.denominator();
  // Numerator of B'/mu; the z^(2n-1) terms cancel exactly.
  const Polynomial wronskian = p.derivative() * q - p * q.derivative();
  std::vector<Complex> coeffs(wronskian.coefficients().begin(), wronskian.coefficients().end());
  if (coeffs.size() > 1) coeffs.pop_back();

  std::vector<Complex> inside;
  for (const auto& z : find_roots(Polynomial(std::move(coeffs))))
    if (std::abs(z) < 1.0) inside.push_back(z);
  const std::vector<Complex> raw = inside;
  for (auto& z : inside) z = polish_critical(b.zeros(), raw, z);
  std::sort(inside.begin(), inside.end(), [](Complex l, Complex r) {
    if (std::abs(l) != std::abs(r)) return std::abs(l) < std::abs(r);
    return principal_arg(l) < principal_arg(r);
  });
  return inside;
}

std::vector<Complex> solve(const BlaschkeProduct& b, Complex target) {
  check_finite(target, "target");
  if (std::abs(target) > 1.0 + kDomainSlack)
    throw Error(ErrorKind::InvalidArgument, "target outside the closed unit disk");
  const Polynomial eq = b.numerator() - b.denominator() * target;
  // Leading coefficient mu - target * prod(-conj a_j) has modulus >= 1 - prod|a_j| > 0.
  assert(std::abs(eq[static_cast<std::size_t>(b.degree())]) > 0.0);
  auto roots = find_roots(eq);
  if (roots.size() != static_cast<std::size_t>(b.degree()))
    throw Error(ErrorKind::DegenerateLeadingCoefficient, "fiber polynomial lost degree");
  return roots;
}

PreimageFiber preimages(const BlaschkeProduct& b, Complex lambda) {
  check_finite(lambda, "target");
  if (std::abs(std::abs(lambda) - 1.0) > kUnitTol)
    throw Error(ErrorKind::InvalidArgument, "fiber target must be unimodular");

  PreimageFiber fiber{lambda, {}, 0.0};
  for (auto z : solve(b, lambda)) {
    const double dev = std::abs(std::abs(z) - 1.0);
    fiber.max_radial_deviation = std::max(fiber.max_radial_deviation, dev);
    if (dev > kProjectTol) throw Error(ErrorKind::OffCircleRoot, "preimage of a unimodular target left the circle");
    fiber.points.push_back(z / std::abs(z));
  }
  std::sort(fiber.points.begin(), fiber.points.end(),
            [](Complex l, Complex r) { return principal_arg(l) < principal_arg(r); });
  return fiber;
}

BlaschkeProduct compose(const BlaschkeProduct& outer, const BlaschkeProduct& inner) {
  std::vector<Complex> zeros;
  zeros.reserve(static_cast<std::size_t>(outer.degree() * inner.degree()));
  for (const auto& w : outer.zeros()) {
    for (const auto& z : solve(inner, w)) zeros.push_back(z);
  }
  const Complex target = evaluate(outer, evaluate(inner, Complex{1.0}));
  Complex partial{1.0};
  for (const auto& a : zeros) partial *= sigma(a, Complex{1.0});
  const Complex mu = target / partial;
  return BlaschkeProduct(mu / std::abs(mu), std::move(zeros));
}

std::vector<Complex> nth_roots(Complex a, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "root order must be positive");
  if (a == Complex{0.0}) throw Error(ErrorKind::ZeroInput, "n-th roots of zero are not a distinct set");
  double arg = std::arg(a);
  if (arg <= -std::numbers::pi) arg = std::numbers::pi;
  const double radius = std::pow(std::abs(a), 1.0 / n);
  std::vector<Complex> roots;
  roots.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) roots.push_back(std::polar(radius, (arg + 2.0 * std::numbers::pi * j) / n));
  std::sort(roots.begin(), roots.end(), [](Complex l, Complex r) { return principal_arg(l) < principal_arg(r); });
  return roots;
}

}  // namespace blaschke
