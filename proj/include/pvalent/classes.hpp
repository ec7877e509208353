#pragma once

// Coefficient criteria, sharp coefficient bounds and extremal functions for
// the classes R(alpha; A, B) and P(alpha; A, B) built on the Rafid operator.

#include <cmath>
#include <utility>
#include <vector>

#include "pvalent/operators.hpp"
#include "pvalent/series.hpp"

namespace pvalent {

struct ClassParams {
  int p = 1;
  double alpha = 0.0;
  double A = 1.0;
  double B = -1.0;
  double mu = 0.0;
  double delta = 1.0;

  /// Enforces -1 <= B < A <= 1, 0 <= alpha < p and the Rafid ranges.
  void validate() const;
  RafidParams rafid() const { return {mu, delta}; }
  /// (A-B)(p-alpha), the right-hand side of the coefficient criterion.
  double budget_scale() const { return (A - B) * (p - alpha); }
  ClassParams with_alpha(double a) const {
    ClassParams c = *this;
    c.alpha = a;
    return c;
  }
};

enum class ClassKind { R, P };

struct MembershipReport {
  double sum = 0.0;
  bool member = true;
  double margin = 1.0;
  std::vector<std::pair<int, double>> per_term;
};

/// Normalized multiplier of a_k in the R-class criterion:
/// [(1-B)(k-p) + (A-B)(p-alpha)] * w_k / ((A-B)(p-alpha)), w_k the Rafid weight.
double r_criterion_term(int k, const ClassParams& cp);
/// log of r_criterion_term, usable for indices where the term overflows.
double log_r_criterion_term(int k, const ClassParams& cp);

MembershipReport check_r_membership(const CoefficientSeries& f, const ClassParams& cp);
/// P-class criterion: the R-class multiplier scaled by k/p, right side (A-B)(p-alpha).
MembershipReport check_p_membership(const CoefficientSeries& f, const ClassParams& cp);
MembershipReport check_membership(const CoefficientSeries& f, const ClassParams& cp, ClassKind kind);

/// Largest admissible a_k for a class member; attained by extremal_r.
double coeff_bound_r(int k, const ClassParams& cp);
double coeff_bound_p(int k, const ClassParams& cp);
CoefficientSeries extremal_r(int k, const ClassParams& cp);
CoefficientSeries extremal_p(int k, const ClassParams& cp);
CoefficientSeries extremal(int k, const ClassParams& cp, ClassKind kind);

/// coeff_bound_r(p+1): the bound on sum a_k that holds whenever the criterion
/// multiplier is smallest at k = p+1.
double tail_budget(const ClassParams& cp);

/// True when r_criterion_term(k)/m_k >= r_criterion_term(p+1)/m_{p+1} for all
/// k in [p+1, k_max], i.e. the single-term extremal at k = p+1 maximizes
/// sum m_k a_k over the class. Every distortion-type bound derived from the
/// budget of sum a_k relies on this for the multiplier m it weights by.
template <class Multiplier>
bool budget_dominated_by_first_term(const ClassParams& cp, Multiplier&& m, int k_max) {
  const int p = cp.p;
  const double first = log_r_criterion_term(p + 1, cp) - std::log(m(p + 1));
  for (int k = p + 2; k <= k_max; ++k)
    if (log_r_criterion_term(k, cp) - std::log(m(k)) < first - 1e-12) return false;
  return true;
}

}  // namespace pvalent
