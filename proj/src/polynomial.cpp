#include "blaschke/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <numbers>

#include "blaschke/error.hpp"

namespace blaschke {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(Complex{0.0});
}

Polynomial Polynomial::linear_root(Complex root) { return Polynomial({-root, Complex{1.0}}); }

Complex Polynomial::operator()(Complex z) const {
  Complex acc{0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

void Polynomial::evaluate_with_derivative(Complex z, Complex& value, Complex& slope) const {
  value = Complex{0.0};
  slope = Complex{0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    slope = slope * z + value;
    value = value * z + *it;
  }
}

double Polynomial::absolute_scale(double modulus) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * modulus + std::abs(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial{};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<double>(i);
  return Polynomial(std::move(d));
}

std::vector<Complex> Polynomial::taylor_coefficients(Complex center) const {
  // Repeated synthetic division by (z - center).
  std::vector<Complex> work = coeffs_;
  const std::size_t n = work.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = n - 1; i > k; --i) work[i - 1] += center * work[i];
  }
  return work;
}

Polynomial Polynomial::trimmed(double rel_tol) const {
  double largest = 0.0;
  for (const auto& c : coeffs_) largest = std::max(largest, std::abs(c));
  std::size_t keep = coeffs_.size();
  while (keep > 1 && std::abs(coeffs_[keep - 1]) <= rel_tol * largest) --keep;
  return Polynomial(std::vector<Complex>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(keep)));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<Complex> out(std::max(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)[i] + other[i];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  std::vector<Complex> out(std::max(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)[i] - other[i];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  std::vector<Complex> out(coeffs_.size() + other.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(Complex s) const {
  std::vector<Complex> out = coeffs_;
  for (auto& c : out) c *= s;
  return Polynomial(std::move(out));
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Starting points on circles whose radii come from the upper convex hull of
// (i, log|c_i|); one circle per hull edge, as many points as the edge spans.
std::vector<Complex> newton_polygon_start(std::span<const Complex> c) {
  const std::size_t n = c.size() - 1;
  std::vector<std::size_t> hull;
  std::vector<double> logs(c.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i <= n; ++i)
    if (c[i] != Complex{0.0}) logs[i] = std::log(std::abs(c[i]));

  for (std::size_t i = 0; i <= n; ++i) {
    if (!std::isfinite(logs[i])) continue;
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      const double cross = (static_cast<double>(b) - static_cast<double>(a)) * (logs[i] - logs[a]) -
                           (logs[b] - logs[a]) * (static_cast<double>(i) - static_cast<double>(a));
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }

  std::vector<Complex> start;
  start.reserve(n);
  constexpr double kOffset = 0.7;
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const std::size_t i = hull[e];
    const std::size_t j = hull[e + 1];
    const auto span = static_cast<double>(j - i);
    const double radius = std::exp((logs[i] - logs[j]) / span);
    for (std::size_t k = 0; k < j - i; ++k) {
      const double angle = 2.0 * std::numbers::pi * (static_cast<double>(k) / span +
                                                     static_cast<double>(i) / static_cast<double>(n)) +
                           kOffset;
      start.push_back(std::polar(radius, angle));
    }
  }
  return start;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

struct ClusterRefiner {
  const Polynomial& poly;
  Polynomial magnitudes;  // |c_i|, for the backward-error scale of Taylor coefficients
  Polynomial flat;        // max |c_i| in every slot
  double tolerance;

  static constexpr double kCoefficientNoise = 1e-13;

  ClusterRefiner(const Polynomial& p, double tol)
      : poly(p), magnitudes(abs_coeffs(p)), flat(flat_coeffs(p)), tolerance(tol) {}

  static Polynomial flat_coeffs(const Polynomial& p) {
    double top = 0.0;
    for (const auto& c : p.coefficients()) top = std::max(top, std::abs(c));
    return Polynomial(std::vector<Complex>(p.coefficients().size(), Complex{top}));
  }

  static Polynomial abs_coeffs(const Polynomial& p) {
    std::vector<Complex> out;
    for (const auto& c : p.coefficients()) out.emplace_back(std::abs(c));
    return Polynomial(std::move(out));
  }

  // Returns true and the polished centre when the members form a certified k-fold root.
  bool certify(std::span<const Complex> members, Complex& centre) const {
    const std::size_t k = members.size();
    Complex mean{0.0};
    double spread = 0.0;
    for (const auto& z : members) mean += z;
    mean /= static_cast<double>(k);
    for (const auto& z : members) spread = std::max(spread, std::abs(z - mean));

    Polynomial g = poly;
    for (std::size_t i = 0; i + 1 < k; ++i) g = g.derivative();
    Complex c = mean;
    for (int it = 0; it < 50; ++it) {
      Complex v;
      Complex d;
      g.evaluate_with_derivative(c, v, d);
      if (d == Complex{0.0}) break;
      const Complex step = v / d;
      c -= step;
      if (std::abs(step) <= 4.0 * kEps * std::max(1.0, std::abs(c))) break;
    }
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    if (std::abs(c - mean) > 2.0 * spread + 1e-12 * std::max(1.0, std::abs(mean))) return false;

    const auto taylor = poly.taylor_coefficients(c);
    const auto scale = magnitudes.taylor_coefficients(Complex{std::abs(c)});
    // Inside the unit disk also allow for coefficients that were formed with
    // cancellation (absolute error ~ eps * max |c_i| rather than eps * |c_i|).
    std::vector<Complex> floor_terms;
    if (std::abs(c) <= 1.0) floor_terms = flat.taylor_coefficients(Complex{std::abs(c)});
    for (std::size_t j = 0; j < k; ++j) {
      double bound = tolerance * std::abs(scale[j]);
      if (!floor_terms.empty()) bound = std::max(bound, kCoefficientNoise * std::abs(floor_terms[j]));
      if (std::abs(taylor[j]) > bound) return false;
    }
    centre = c;
    return true;
  }

  void refine(std::vector<Complex>& roots, const std::vector<std::size_t>& idx, double radius) const {
    DisjointSets sets(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        const Complex za = roots[idx[a]];
        const Complex zb = roots[idx[b]];
        if (std::abs(za - zb) <= radius * std::max({1.0, std::abs(za), std::abs(zb)})) sets.unite(a, b);
      }
    std::vector<std::vector<std::size_t>> groups(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) groups[sets.find(a)].push_back(idx[a]);

    for (const auto& group : groups) {
      if (group.size() < 2) continue;
      std::vector<Complex> members;
      for (auto i : group) members.push_back(roots[i]);
      Complex centre;
      if (certify(members, centre)) {
        for (auto i : group) roots[i] = centre;
      } else if (radius > 1e-7) {
        refine(roots, group, radius / 2.0);
      }
    }
  }
};

}  // namespace

std::vector<Complex> find_roots(const Polynomial& p, const RootFinderOptions& options) {
  const Polynomial trimmed = p.trimmed(options.leading_trim);
  const auto all = trimmed.coefficients();
  if (trimmed.degree() == 0) {
    if (all[0] == Complex{0.0}) throw Error(ErrorKind::InvalidArgument, "zero polynomial has no isolated roots");
    return {};
  }

  std::size_t zero_roots = 0;
  while (all[zero_roots] == Complex{0.0}) ++zero_roots;
  const Polynomial q(std::vector<Complex>(all.begin() + static_cast<std::ptrdiff_t>(zero_roots), all.end()));
  const std::size_t n = q.degree();

  std::vector<Complex> roots;
  if (n == 1) {
    roots.push_back(-q[0] / q[1]);
  } else if (n > 1) {
    roots = newton_polygon_start(q.coefficients());
    std::vector<char> done(n, 0);
    bool converged = false;
    for (int it = 0; it < options.max_iterations && !converged; ++it) {
      converged = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        Complex value;
        Complex slope;
        q.evaluate_with_derivative(roots[i], value, slope);
        const double modulus = std::abs(roots[i]);
        if (std::abs(value) <= 4.0 * kEps * static_cast<double>(n + 1) * q.absolute_scale(modulus)) {
          done[i] = 1;
          continue;
        }
        Complex repulsion{0.0};
        for (std::size_t j = 0; j < n; ++j)
          if (j != i && roots[i] != roots[j]) repulsion += 1.0 / (roots[i] - roots[j]);
        Complex step;
        if (slope == Complex{0.0}) {
          step = Complex{1e-8 * std::max(1.0, modulus), 0.0};
        } else {
          const Complex ratio = value / slope;
          step = ratio / (1.0 - ratio * repulsion);
        }
        roots[i] -= step;
        if (std::abs(step) <= options.step_tolerance * std::max(1.0, std::abs(roots[i]))) {
          done[i] = 1;
        } else {
          converged = false;
        }
      }
    }
    if (!converged) {
      throw Error(ErrorKind::RootFindingDivergence,
                  "Aberth iteration did not converge in " + std::to_string(options.max_iterations) + " sweeps");
    }

    // A couple of guarded Newton steps to tighten simple roots.
    for (auto& z : roots) {
      for (int it = 0; it < 3; ++it) {
        Complex value;
        Complex slope;
        q.evaluate_with_derivative(z, value, slope);
        if (slope == Complex{0.0}) break;
        const Complex next = z - value / slope;
        if (std::abs(next - z) > 1e-6 * std::max(1.0, std::abs(z))) break;
        if (std::abs(q(next)) >= std::abs(value)) break;
        z = next;
      }
    }

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    ClusterRefiner(q, options.multiplicity_tolerance).refine(roots, idx, 0.5);
  }

  roots.insert(roots.end(), zero_roots, Complex{0.0});
  return roots;
}

}  // namespace blaschke
