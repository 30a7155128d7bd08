#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "blaschke/error.hpp"
#include "blaschke/polynomial.hpp"

namespace testing {

using blaschke::Complex;
constexpr double pi = std::numbers::pi;

inline Complex random_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * pi * u(rng));
}

inline Complex random_unimodular(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
  return std::polar(1.0, u(rng));
}

// Kind of the blaschke::Error thrown by f, or nullopt-like sentinel when none.
template <class F>
bool throws_kind(F&& f, blaschke::ErrorKind kind) {
  try {
    f();
  } catch (const blaschke::Error& e) {
    return e.kind() == kind;
  } catch (...) {
    return false;
  }
  return false;
}

}  // namespace testing
