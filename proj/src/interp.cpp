#include "blaschke/interp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "blaschke/error.hpp"

namespace blaschke {

namespace {

constexpr Complex kI{0.0, 1.0};

Polynomial cleared_product(const std::vector<double>& nodes) {
  Polynomial out({Complex{1.0}});
  for (double node : nodes) out = out * Polynomial({kI - node, kI + node});
  return out;
}

std::vector<Complex> on_circle(std::vector<Complex> pts) {
  for (auto& z : pts) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(std::abs(z) - 1.0) > 1e-9)
      throw Error(ErrorKind::InvalidArgument, "interpolation nodes must lie on the unit circle");
    z /= std::abs(z);
    if (std::abs(z - 1.0) <= 1e-12) throw Error(ErrorKind::PoleAtOne, "z = 1 is the pole of the half-plane map");
  }
  return pts;
}

}  // namespace

Complex HalfPlaneMap::forward(Complex z) {
  if (z == Complex{1.0}) throw Error(ErrorKind::PoleAtOne, "half-plane map is singular at 1");
  return kI * (1.0 + z) / (1.0 - z);
}

Complex HalfPlaneMap::inverse(Complex w) { return (w - kI) / (w + kI); }

InterleavedSpec::InterleavedSpec(std::vector<Complex> zs, std::vector<Complex> ws)
    : zs_(on_circle(std::move(zs))), ws_(on_circle(std::move(ws))) {
  if (zs_.empty() || zs_.size() != ws_.size())
    throw Error(ErrorKind::InterleavingViolated, "both sets need the same positive number of points");

  std::vector<std::pair<double, bool>> merged;
  for (const auto& z : zs_) merged.emplace_back(principal_arg(z), true);
  for (const auto& w : ws_) merged.emplace_back(principal_arg(w), false);
  std::sort(merged.begin(), merged.end());
  for (std::size_t i = 0; i < merged.size(); ++i) {
    const auto& cur = merged[i];
    const auto& next = merged[(i + 1) % merged.size()];
    if (cur.second == next.second) throw Error(ErrorKind::InterleavingViolated, "arguments do not alternate");
    if (i + 1 < merged.size() && cur.first == next.first)
      throw Error(ErrorKind::InterleavingViolated, "repeated argument");
  }
  zs_lead_ = merged.front().second;
}

InterleavedSpec default_counterexample_spec() {
  const Complex zeta8 = std::polar(1.0, std::numbers::pi / 4.0);
  const Complex zeta3 = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  return InterleavedSpec({zeta8, zeta8 * zeta3, zeta8 * zeta3 * zeta3},
                         {Complex{0.0, 1.0}, Complex{-1.0, 0.0}, std::polar(1.0, 7.0 * std::numbers::pi / 4.0)});
}

Interpolant::Interpolant(const InterleavedSpec& spec) {
  for (const auto& w : spec.ws()) w_nodes_.push_back(HalfPlaneMap::forward(w).real());
  for (const auto& z : spec.zs()) z_nodes_.push_back(HalfPlaneMap::forward(z).real());
  // Residues of F at its poles are negative only when a pole comes first on the line.
  sign_ = spec.zs_lead() ? 1.0 : -1.0;
  p_ = cleared_product(w_nodes_);
  q_ = cleared_product(z_nodes_);
}

Complex Interpolant::operator()(Complex z) const {
  const Complex sp = sign_ * p_(z);
  const Complex iq = kI * q_(z);
  return (sp - iq) / (sp + iq);
}

Polynomial Interpolant::cleared_numerator() const { return p_ * Complex{sign_} - q_ * kI; }

Polynomial Interpolant::cleared_denominator() const { return p_ * Complex{sign_} + q_ * kI; }

std::vector<Complex> Interpolant::solve(Complex target) const {
  return find_roots(cleared_numerator() - cleared_denominator() * target);
}

BlaschkeProduct Interpolant::to_blaschke() const {
  const auto zeros = solve(Complex{0.0});
  const Complex anchor{-1.0};
  Complex partial{1.0};
  for (const auto& a : zeros) partial *= sigma(a, anchor);
  const Complex mu = (*this)(anchor) / partial;
  return BlaschkeProduct(mu / std::abs(mu), zeros);
}

Interpolant build_interpolant(const InterleavedSpec& spec) { return Interpolant(spec); }

}  // namespace blaschke
