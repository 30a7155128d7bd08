#pragma once

#include <vector>

#include "blaschke/blaschke.hpp"

namespace blaschke {

/// Cayley map from the disk to the upper half plane, phi(z) = i (1 + z) / (1 - z).
struct HalfPlaneMap {
  static Complex forward(Complex z);
  /// phi^{-1}(w) = (w - i) / (w + i)
  static Complex inverse(Complex w);
};

/// Two n-point sets on the unit circle whose arguments alternate around the circle.
/// The alternation is checked cyclically, so either set may come first.
class InterleavedSpec {
 public:
  /// Points within 1e-9 of the circle are projected onto it. Throws
  /// InterleavingViolated or PoleAtOne (a point at z = 1).
  InterleavedSpec(std::vector<Complex> zs, std::vector<Complex> ws);

  const std::vector<Complex>& zs() const { return zs_; }
  const std::vector<Complex>& ws() const { return ws_; }
  /// True when the smallest argument belongs to zs.
  bool zs_lead() const { return zs_lead_; }

 private:
  std::vector<Complex> zs_;
  std::vector<Complex> ws_;
  bool zs_lead_ = true;
};

/// The zs = {zeta8, zeta8 zeta3, zeta8 zeta3^2}, ws = {i, -1, zeta8^7} configuration.
InterleavedSpec default_counterexample_spec();

/// Degree-n map phi^{-1} o F o phi with F(x) = +-prod (x - phi(w_j)) / prod (x - phi(z_j)).
/// The sign makes F a Pick function, so the composite is a Blaschke product that
/// sends every w_j to -1 and every z_j to 1.
class Interpolant {
 public:
  explicit Interpolant(const InterleavedSpec& spec);

  int degree() const { return static_cast<int>(w_nodes_.size()); }
  /// phi(w_j) and phi(z_j) on the real line.
  const std::vector<double>& w_nodes() const { return w_nodes_; }
  const std::vector<double>& z_nodes() const { return z_nodes_; }
  double sign() const { return sign_; }

  /// Evaluation through the cleared form (s P - i Q) / (s P + i Q), where
  /// P(z) = prod ((i - p) + (i + p) z) over w-nodes p and Q likewise over z-nodes;
  /// well defined at z = 1.
  Complex operator()(Complex z) const;

  Polynomial cleared_numerator() const;
  Polynomial cleared_denominator() const;

  /// All n solutions of B(z) = target.
  std::vector<Complex> solve(Complex target) const;
  /// Zeros from solve(0), constant matched at z = -1.
  BlaschkeProduct to_blaschke() const;

 private:
  std::vector<double> w_nodes_;
  std::vector<double> z_nodes_;
  double sign_ = 1.0;
  Polynomial p_;
  Polynomial q_;
};

Interpolant build_interpolant(const InterleavedSpec& spec);

}  // namespace blaschke
