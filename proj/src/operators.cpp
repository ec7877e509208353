#include "pvalent/operators.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>

#include "pvalent/error.hpp"
#include "pvalent/special.hpp"

namespace pvalent {

void RafidParams::validate() const {
  if (!(mu >= 0.0 && mu < 1.0)) fail(ErrorKind::ParameterOutOfRange, "mu must lie in [0, 1)");
  if (!(delta >= 0.0 && delta <= 1.0))
    fail(ErrorKind::ParameterOutOfRange, "delta must lie in [0, 1]");
}

double log_rafid_weight(int k, int p, const RafidParams& rp) {
  if (k < p) fail(ErrorKind::IndexBelowValence, "Rafid weight needs k >= p");
  if (k == p) return 0.0;
  return (k - p) * std::log1p(-rp.mu) + log_gamma_ratio(k + rp.delta, p + rp.delta);
}

double rafid_weight(int k, int p, const RafidParams& rp) {
  if (k < p) fail(ErrorKind::IndexBelowValence, "Rafid weight needs k >= p");
  if (k == p) return 1.0;
  return std::pow(1.0 - rp.mu, k - p) * gamma_ratio(k + rp.delta, p + rp.delta);
}

CoefficientSeries apply_rafid(const CoefficientSeries& f, const RafidParams& rp) {
  rp.validate();
  const int p = f.valence();
  return map_coefficients(f, [&](int k, double a) { return rafid_weight(k, p, rp) * a; });
}

namespace {

// Three-term recurrence for the generalized Laguerre polynomials. Returns
// (L_n(x), L_{n-1}(x)).
std::pair<double, double> laguerre_pair(int n, double alpha, double x) {
  double p1 = 1.0;
  double p2 = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double p3 = p2;
    p2 = p1;
    p1 = ((2.0 * j - 1.0 + alpha - x) * p2 - (j - 1.0 + alpha) * p3) / j;
  }
  return {p1, p2};
}

LaguerreRule build_laguerre_rule(int n, double alpha) {
  // Golub-Welsch eigenvalues seed the nodes; each is then polished by Newton
  // on L_n and its weight taken from the closed form, which keeps the small
  // weights accurate in the relative sense.
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
  for (int i = 0; i < n; ++i) diag[i] = 2.0 * i + 1.0 + alpha;
  for (int i = 1; i < n; ++i) sub[i - 1] = std::sqrt(i * (i + alpha));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);

  LaguerreRule rule;
  rule.alpha = alpha;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double log_scale = log_gamma(n + alpha) - log_gamma(static_cast<double>(n));
  for (int i = 0; i < n; ++i) {
    double x = solver.eigenvalues()[i];
    double dp = 0.0;
    double prev = 0.0;
    for (int it = 0; it < 20; ++it) {
      const auto [ln, lnm1] = laguerre_pair(n, alpha, x);
      dp = (n * ln - (n + alpha) * lnm1) / x;
      prev = lnm1;
      const double step = ln / dp;
      x -= step;
      if (std::abs(step) <= 1e-15 * std::abs(x)) break;
    }
    const auto [ln, lnm1] = laguerre_pair(n, alpha, x);
    dp = (n * ln - (n + alpha) * lnm1) / x;
    prev = lnm1;
    rule.nodes[i] = x;
    rule.weights[i] = -std::exp(log_scale) / (dp * n * prev);
  }
  return rule;
}

}  // namespace

std::shared_ptr<const LaguerreRule> laguerre_rule(int n, double alpha) {
  if (n < 8) fail(ErrorKind::ParameterOutOfRange, "quadrature needs at least 8 nodes");
  if (!(alpha > -1.0)) fail(ErrorKind::QuadratureUnavailable, "Laguerre weight needs alpha > -1");
  static std::mutex mutex;
  static std::map<std::pair<int, double>, std::shared_ptr<const LaguerreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, alpha}];
  if (!slot) slot = std::make_shared<const LaguerreRule>(build_laguerre_rule(n, alpha));
  return slot;
}

Complex rafid_quadrature(const CoefficientSeries& f, const RafidParams& rp, Complex z,
                         const QuadratureConfig& q) {
  rp.validate();
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) >= 1.0)
    fail(ErrorKind::DivergentInput, "Rafid integral is evaluated only inside the unit disk");
  if (rp.delta == 0.0) {
    if (!q.closed_form_fallback)
      fail(ErrorKind::QuadratureUnavailable, "delta = 0 has no Laguerre weight");
    return evaluate(apply_rafid(f, rp), z);
  }
  const auto rule = laguerre_rule(q.nodes, rp.delta - 1.0);
  const int p = f.valence();
  const double scale = 1.0 - rp.mu;
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < rule->nodes.size(); ++i)
    acc += rule->weights[i] * evaluate(f, z * (scale * rule->nodes[i]));
  return acc * std::exp(-p * std::log(scale) - log_gamma(p + rp.delta));
}

CoefficientSeries bernardi(const CoefficientSeries& f, double c) {
  const int p = f.valence();
  if (!(c > -p)) fail(ErrorKind::ParameterOutOfRange, "Bernardi operator needs c > -p");
  return map_coefficients(f, [&](int k, double a) { return (c + p) / (c + k) * a; });
}

FractionalSeries bernardi(const FractionalSeries& g, double c) {
  const int p = g.valence();
  if (!(c > -p)) fail(ErrorKind::ParameterOutOfRange, "Bernardi operator needs c > -p");
  std::map<int, double> terms;
  for (const auto& [k, coeff] : g.terms()) {
    const double s = g.exponent(k);
    if (!(c + s > 0.0)) {
      std::ostringstream msg;
      msg << "Bernardi integral diverges on z^" << s << " for c = " << c;
      fail(ErrorKind::ParameterOutOfRange, msg.str());
    }
    terms.emplace(k, (c + p) / (c + s) * coeff);
  }
  return FractionalSeries(p, g.shift(), std::move(terms));
}

FractionalSeries fractional_integral(const FractionalSeries& g, double eta) {
  if (!(eta > 0.0)) fail(ErrorKind::ParameterOutOfRange, "fractional integral needs eta > 0");
  std::map<int, double> terms;
  for (const auto& [k, coeff] : g.terms()) {
    const double s = g.exponent(k);
    terms.emplace(k, gamma_ratio(s + 1.0, s + 1.0 + eta) * coeff);
  }
  return FractionalSeries(g.valence(), g.shift() + eta, std::move(terms));
}

FractionalSeries fractional_integral(const CoefficientSeries& f, double eta) {
  return fractional_integral(to_fractional(f), eta);
}

FractionalSeries fractional_derivative(const FractionalSeries& g, double eta) {
  if (!(eta >= 0.0 && eta < 1.0))
    fail(ErrorKind::ParameterOutOfRange, "fractional derivative needs 0 <= eta < 1");
  if (eta == 0.0) return g;
  std::map<int, double> terms;
  for (const auto& [k, coeff] : g.terms()) {
    const double s = g.exponent(k);
    if (!(s + 1.0 - eta > 0.0))
      fail(ErrorKind::ExponentUnderflow, "fractional derivative needs every exponent > eta - 1");
    terms.emplace(k, gamma_ratio(s + 1.0, s + 1.0 - eta) * coeff);
  }
  return FractionalSeries(g.valence(), g.shift() - eta, std::move(terms));
}

FractionalSeries fractional_derivative(const CoefficientSeries& f, double eta) {
  return fractional_derivative(to_fractional(f), eta);
}

}  // namespace pvalent
