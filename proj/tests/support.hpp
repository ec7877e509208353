#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "pvalent/selftest.hpp"

namespace testing {

using pvalent::Complex;
using pvalent::Rng;

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

inline double rel_err(Complex got, Complex want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

/// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& fn, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = fn(a) + fn(b);
  for (int i = 1; i < n; ++i) s += fn(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Riemann-Liouville integral of order eta of a real function at x > 0,
/// (1/Gamma(eta)) int_0^x f(t) (x-t)^{eta-1} dt, after u = (x-t)^eta which
/// removes the endpoint singularity.
inline double rl_integral(const std::function<double(double)>& fn, double eta, double x) {
  const double top = std::pow(x, eta);
  const double integral =
      simpson([&](double u) { return fn(x - std::pow(u, 1.0 / eta)); }, 0.0, top) / eta;
  return integral / std::tgamma(eta);
}

inline Rng make_rng(std::uint64_t salt) { return Rng(0x5eed0000ULL + salt); }

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace testing
