#include "pvalent/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pvalent/error.hpp"

namespace pvalent {

namespace {

Complex int_power(Complex z, int n) {
  Complex result{1.0, 0.0};
  Complex base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

Complex real_power(Complex z, double s) {
  if (s == std::floor(s) && std::abs(s) < 1e9) {
    const int n = static_cast<int>(s);
    return n >= 0 ? int_power(z, n) : 1.0 / int_power(z, -n);
  }
  if (z == Complex{0.0, 0.0}) return s > 0 ? Complex{0.0, 0.0} : Complex{INFINITY, 0.0};
  return std::exp(s * std::log(z));
}

void check_valence(int p) {
  if (p < 1) fail(ErrorKind::ParameterOutOfRange, "valence p must be a positive integer");
}

}  // namespace

double falling_factorial(double n, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= (n - i);
  return r;
}

CoefficientSeries::CoefficientSeries(int p) : CoefficientSeries(p, {}, p) {}

CoefficientSeries::CoefficientSeries(int p, std::map<int, double> coeffs, int degree)
    : p_(p), degree_(degree), coeffs_(std::move(coeffs)) {
  check_valence(p_);
  if (degree_ < p_) fail(ErrorKind::ParameterOutOfRange, "degree must be at least p");
  for (const auto& [k, a] : coeffs_) {
    if (k < p_ + 1) {
      std::ostringstream msg;
      msg << "index " << k << " below p+1 = " << p_ + 1;
      fail(ErrorKind::IndexBelowValence, msg.str());
    }
    if (k > degree_) fail(ErrorKind::ParameterOutOfRange, "index exceeds degree");
    if (!std::isfinite(a)) fail(ErrorKind::ParameterOutOfRange, "coefficient is not finite");
    if (a < 0.0 || std::signbit(a)) {
      std::ostringstream msg;
      msg << "coefficient a_" << k << " = " << a << " is negative";
      fail(ErrorKind::NegativeCoefficient, msg.str());
    }
  }
}

double CoefficientSeries::coeff(int k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? 0.0 : it->second;
}

CoefficientSeries make_series(int p, const std::vector<std::pair<int, double>>& coeffs) {
  check_valence(p);
  std::map<int, double> out;
  int degree = p;
  for (const auto& [k, a] : coeffs) {
    if (k < p + 1) {
      std::ostringstream msg;
      msg << "index " << k << " below p+1 = " << p + 1;
      fail(ErrorKind::IndexBelowValence, msg.str());
    }
    if (!out.emplace(k, a).second) {
      std::ostringstream msg;
      msg << "index " << k << " given twice";
      fail(ErrorKind::DuplicateIndex, msg.str());
    }
    degree = std::max(degree, k);
  }
  return CoefficientSeries(p, std::move(out), degree);
}

Complex evaluate(const CoefficientSeries& f, Complex z) {
  const int p = f.valence();
  // Horner on 1 - sum a_k z^{k-p}, highest power first.
  Complex acc{0.0, 0.0};
  auto it = f.coeffs().rbegin();
  for (int k = f.degree(); k > p; --k) {
    double c = 0.0;
    if (it != f.coeffs().rend() && it->first == k) {
      c = -it->second;
      ++it;
    }
    acc = acc * z + c;
  }
  acc = acc * z + 1.0;
  return acc * int_power(z, p);
}

CoefficientSeries hadamard_product(const CoefficientSeries& f, const CoefficientSeries& g) {
  if (f.valence() != g.valence())
    fail(ErrorKind::ValenceMismatch, "Hadamard product needs equal valence");
  const int degree = std::min(f.degree(), g.degree());
  std::map<int, double> out;
  for (const auto& [k, a] : f.coeffs()) {
    if (k > degree) break;
    auto it = g.coeffs().find(k);
    if (it != g.coeffs().end()) out.emplace(k, a * it->second);
  }
  return CoefficientSeries(f.valence(), std::move(out), degree);
}

CoefficientSeries zfprime_over_p(const CoefficientSeries& f) {
  const double p = f.valence();
  return map_coefficients(f, [p](int k, double a) { return (k / p) * a; });
}

FractionalSeries::FractionalSeries(int p, double shift, std::map<int, double> terms)
    : p_(p), shift_(shift), terms_(std::move(terms)) {
  check_valence(p_);
  if (!std::isfinite(shift_)) fail(ErrorKind::ParameterOutOfRange, "shift is not finite");
  for (const auto& [k, c] : terms_) {
    if (k < p_) fail(ErrorKind::IndexBelowValence, "term index below valence");
    if (!std::isfinite(c)) fail(ErrorKind::ParameterOutOfRange, "term coefficient is not finite");
    if (!(k + shift_ > -1.0)) fail(ErrorKind::ExponentUnderflow, "term exponent must exceed -1");
  }
}

double FractionalSeries::leading() const {
  auto it = terms_.find(p_);
  return it == terms_.end() ? 0.0 : it->second;
}

FractionalSeries to_fractional(const CoefficientSeries& f) {
  std::map<int, double> terms;
  terms.emplace(f.valence(), 1.0);
  for (const auto& [k, a] : f.coeffs()) terms.emplace(k, -a);
  return FractionalSeries(f.valence(), 0.0, std::move(terms));
}

Complex evaluate(const FractionalSeries& g, Complex z) {
  Complex acc{0.0, 0.0};
  for (auto it = g.terms().rbegin(); it != g.terms().rend(); ++it)
    acc += it->second * real_power(z, g.exponent(it->first));
  return acc;
}

FractionalSeries derivative_m(const CoefficientSeries& f, int m) {
  if (m < 0) fail(ErrorKind::ParameterOutOfRange, "derivative order must be nonnegative");
  if (m > f.valence()) fail(ErrorKind::OrderExceedsValence, "derivative order exceeds valence");
  return derivative_m(to_fractional(f), m);
}

FractionalSeries derivative_m(const FractionalSeries& g, int m) {
  if (m < 0) fail(ErrorKind::ParameterOutOfRange, "derivative order must be nonnegative");
  std::map<int, double> terms;
  for (const auto& [k, c] : g.terms()) {
    const double factor = falling_factorial(g.exponent(k), m);
    if (factor != 0.0) terms.emplace(k, c * factor);
  }
  return FractionalSeries(g.valence(), g.shift() - m, std::move(terms));
}

nlohmann::json to_json(const CoefficientSeries& f) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& [k, a] : f.coeffs()) coeffs.push_back({k, a});
  nlohmann::json j{{"p", f.valence()}, {"coeffs", std::move(coeffs)}};
  const int natural = f.coeffs().empty() ? f.valence() : f.coeffs().rbegin()->first;
  if (f.degree() != natural) j["N"] = f.degree();
  return j;
}

CoefficientSeries series_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorKind::ParseError, "series must be a JSON object");
  if (!j.contains("p") || !j["p"].is_number_integer())
    fail(ErrorKind::ParseError, "series needs an integer field \"p\"");
  const int p = j["p"].get<int>();
  std::vector<std::pair<int, double>> coeffs;
  if (j.contains("coeffs")) {
    const auto& arr = j["coeffs"];
    if (!arr.is_array()) fail(ErrorKind::ParseError, "\"coeffs\" must be an array");
    for (const auto& entry : arr) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer() ||
          !entry[1].is_number())
        fail(ErrorKind::ParseError, "each coefficient must be [k, a_k] with integer k");
      coeffs.emplace_back(entry[0].get<int>(), entry[1].get<double>());
    }
  }
  CoefficientSeries f = make_series(p, coeffs);
  if (j.contains("N")) {
    if (!j["N"].is_number_integer()) fail(ErrorKind::ParseError, "\"N\" must be an integer");
    f = CoefficientSeries(p, f.coeffs(), j["N"].get<int>());
  }
  return f;
}

nlohmann::json to_json(const FractionalSeries& g) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, c] : g.terms()) terms.push_back({g.exponent(k), c});
  return {{"p", g.valence()}, {"shift", g.shift()}, {"terms", std::move(terms)}};
}

}  // namespace pvalent
