#pragma once

// Truncated p-valent series with negative coefficients,
//
//   f(z) = z^p - sum_{k=p+1}^{N} a_k z^k,   a_k >= 0,
//
// and the generalized series with real exponents produced by differentiation
// and by the fractional operators.

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace pvalent {

using Complex = std::complex<double>;

/// n!/(n-m)! for real n. Exact in double for the integer arguments used here.
double falling_factorial(double n, int m);

class CoefficientSeries {
 public:
  /// Identity-like series z^p.
  explicit CoefficientSeries(int p);
  /// Validates every invariant. `degree` must be >= p and >= every stored index.
  CoefficientSeries(int p, std::map<int, double> coeffs, int degree);

  int valence() const noexcept { return p_; }
  int degree() const noexcept { return degree_; }
  /// Tail coefficients a_k; the implicit leading 1 at z^p is never stored.
  const std::map<int, double>& coeffs() const noexcept { return coeffs_; }
  /// a_k, zero when absent.
  double coeff(int k) const;

  friend bool operator==(const CoefficientSeries&, const CoefficientSeries&) = default;

 private:
  int p_;
  int degree_;
  std::map<int, double> coeffs_;
};

/// Builds a normalized series; the degree is the largest index supplied (p
/// when the list is empty).
CoefficientSeries make_series(int p, const std::vector<std::pair<int, double>>& coeffs);

/// Returns a copy of `f` with a_k replaced by `fn(k, a_k)`. The result is
/// re-validated, so `fn` must keep coefficients nonnegative.
template <class Fn>
CoefficientSeries map_coefficients(const CoefficientSeries& f, Fn&& fn) {
  std::map<int, double> out;
  for (const auto& [k, a] : f.coeffs()) out.emplace(k, fn(k, a));
  return CoefficientSeries(f.valence(), std::move(out), f.degree());
}

/// Descending-index Horner evaluation of z^p - sum a_k z^k.
Complex evaluate(const CoefficientSeries& f, Complex z);

/// Coefficientwise product z^p - sum a_k b_k z^k. Degree is min(f.N, g.N).
CoefficientSeries hadamard_product(const CoefficientSeries& f, const CoefficientSeries& g);

/// The series of z f'(z) / p, i.e. a_k -> (k/p) a_k.
CoefficientSeries zfprime_over_p(const CoefficientSeries& f);

/// sum_k c_k z^{k + shift}. The coefficient at k = p is the leading one and is
/// stored explicitly; tail coefficients carry their sign (negative for a
/// series that came from a CoefficientSeries).
class FractionalSeries {
 public:
  FractionalSeries(int p, double shift, std::map<int, double> terms);

  int valence() const noexcept { return p_; }
  double shift() const noexcept { return shift_; }
  const std::map<int, double>& terms() const noexcept { return terms_; }
  double leading() const;
  double exponent(int k) const noexcept { return k + shift_; }

  friend bool operator==(const FractionalSeries&, const FractionalSeries&) = default;

 private:
  int p_;
  double shift_;
  std::map<int, double> terms_;
};

FractionalSeries to_fractional(const CoefficientSeries& f);

/// Principal branch z^s = exp(s log z) for non-integer exponents.
Complex evaluate(const FractionalSeries& g, Complex z);

/// f^{(m)}: fallfac(p,m) z^{p-m} - sum fallfac(k,m) a_k z^{k-m}. Requires m <= p.
FractionalSeries derivative_m(const CoefficientSeries& f, int m);
/// Ordinary m-th derivative of a generalized series. Terms whose coefficient
/// vanishes (constants and low integer powers) are dropped; a surviving
/// exponent at or below -1 throws ExponentUnderflow.
FractionalSeries derivative_m(const FractionalSeries& g, int m);

nlohmann::json to_json(const CoefficientSeries& f);
CoefficientSeries series_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FractionalSeries& g);

}  // namespace pvalent
