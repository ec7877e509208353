#pragma once

// Diagonal coefficient operators on p-valent series.
//
// Every operator here acts on a monomial z^s by a scalar multiplier (and,
// for the fractional ones, an exponent shift), so composition reduces to
// multiplying multipliers index by index.

#include <memory>
#include <vector>

#include "pvalent/series.hpp"

namespace pvalent {

/// Parameters of the Rafid-type integral operator, 0 <= mu < 1, 0 <= delta <= 1.
struct RafidParams {
  double mu = 0.0;
  double delta = 1.0;

  void validate() const;
};

/// Multiplier of z^k under the Rafid operator:
/// (1-mu)^{k-p} Gamma(k+delta)/Gamma(p+delta). Equals 1 at k = p.
double rafid_weight(int k, int p, const RafidParams& rp);
/// Logarithm of rafid_weight; finite long after the weight itself overflows.
double log_rafid_weight(int k, int p, const RafidParams& rp);

CoefficientSeries apply_rafid(const CoefficientSeries& f, const RafidParams& rp);

enum class QuadratureScheme { GeneralizedLaguerre };

struct QuadratureConfig {
  int nodes = 64;
  QuadratureScheme scheme = QuadratureScheme::GeneralizedLaguerre;
  /// delta = 0 has no Laguerre weight; when set, fall back to the closed form
  /// instead of raising QuadratureUnavailable.
  bool closed_form_fallback = true;
};

/// Gauss rule for the weight u^alpha e^{-u} on (0, inf), alpha > -1.
struct LaguerreRule {
  double alpha = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes and weights for n points. Rules are built once per (n, alpha) and
/// shared read-only afterwards.
std::shared_ptr<const LaguerreRule> laguerre_rule(int n, double alpha);

/// Evaluates the Rafid operator at z by its defining integral after the
/// substitution u = t/(1-mu):
///   (1-mu)^{-p} / Gamma(p+delta) * int_0^inf u^{delta-1} e^{-u} f(z(1-mu)u) du.
Complex rafid_quadrature(const CoefficientSeries& f, const RafidParams& rp, Complex z,
                         const QuadratureConfig& q = {});

/// Bernardi operator J_{c,p}; multiplier (c+p)/(c+k). Requires c > -p.
CoefficientSeries bernardi(const CoefficientSeries& f, double c);
/// J_{c,p} on a generalized series; multiplier (c+p)/(c+s) on z^s, s the
/// exponent. Requires c + s > 0 on every term.
FractionalSeries bernardi(const FractionalSeries& g, double c);

/// Riemann-Liouville integral of order eta > 0:
/// z^s -> Gamma(s+1)/Gamma(s+1+eta) z^{s+eta}.
FractionalSeries fractional_integral(const FractionalSeries& g, double eta);
FractionalSeries fractional_integral(const CoefficientSeries& f, double eta);

/// Riemann-Liouville derivative of order 0 <= eta < 1:
/// z^s -> Gamma(s+1)/Gamma(s+1-eta) z^{s-eta}.
FractionalSeries fractional_derivative(const FractionalSeries& g, double eta);
FractionalSeries fractional_derivative(const CoefficientSeries& f, double eta);

}  // namespace pvalent
