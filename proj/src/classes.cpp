#include "pvalent/classes.hpp"

#include <cmath>
#include <sstream>

#include "pvalent/error.hpp"
#include "pvalent/summation.hpp"

namespace pvalent {

void ClassParams::validate() const {
  if (p < 1) fail(ErrorKind::ParameterOutOfRange, "p must be a positive integer");
  if (!(alpha >= 0.0 && alpha < p)) fail(ErrorKind::ParameterOutOfRange, "alpha must lie in [0, p)");
  if (!(B >= -1.0 && B < A && A <= 1.0))
    fail(ErrorKind::ParameterOutOfRange, "need -1 <= B < A <= 1");
  rafid().validate();
}

namespace {

void require_tail_index(int k, int p) {
  if (k < p + 1) {
    std::ostringstream msg;
    msg << "index " << k << " below p+1 = " << p + 1;
    fail(ErrorKind::IndexBelowValence, msg.str());
  }
}

void require_same_valence(const CoefficientSeries& f, const ClassParams& cp) {
  if (f.valence() != cp.p) fail(ErrorKind::ValenceMismatch, "series valence differs from class p");
}

double linear_factor(int k, const ClassParams& cp) {
  return (1.0 - cp.B) * (k - cp.p) + cp.budget_scale();
}

MembershipReport finish(std::vector<std::pair<int, double>> per_term) {
  CompensatedSum sum;
  for (const auto& [k, c] : per_term) sum += c;
  MembershipReport report;
  report.sum = sum.value();
  report.margin = 1.0 - report.sum;
  report.member = report.sum <= 1.0;
  report.per_term = std::move(per_term);
  return report;
}

}  // namespace

double r_criterion_term(int k, const ClassParams& cp) {
  require_tail_index(k, cp.p);
  return linear_factor(k, cp) * rafid_weight(k, cp.p, cp.rafid()) / cp.budget_scale();
}

double log_r_criterion_term(int k, const ClassParams& cp) {
  require_tail_index(k, cp.p);
  return std::log(linear_factor(k, cp)) + log_rafid_weight(k, cp.p, cp.rafid()) -
         std::log(cp.budget_scale());
}

MembershipReport check_r_membership(const CoefficientSeries& f, const ClassParams& cp) {
  cp.validate();
  require_same_valence(f, cp);
  std::vector<std::pair<int, double>> per_term;
  per_term.reserve(f.coeffs().size());
  for (const auto& [k, a] : f.coeffs()) per_term.emplace_back(k, r_criterion_term(k, cp) * a);
  return finish(std::move(per_term));
}

MembershipReport check_p_membership(const CoefficientSeries& f, const ClassParams& cp) {
  cp.validate();
  require_same_valence(f, cp);
  std::vector<std::pair<int, double>> per_term;
  per_term.reserve(f.coeffs().size());
  const double p = cp.p;
  for (const auto& [k, a] : f.coeffs())
    per_term.emplace_back(k, (k / p) * r_criterion_term(k, cp) * a);
  return finish(std::move(per_term));
}

MembershipReport check_membership(const CoefficientSeries& f, const ClassParams& cp, ClassKind kind) {
  return kind == ClassKind::R ? check_r_membership(f, cp) : check_p_membership(f, cp);
}

double coeff_bound_r(int k, const ClassParams& cp) {
  cp.validate();
  return 1.0 / r_criterion_term(k, cp);
}

double coeff_bound_p(int k, const ClassParams& cp) {
  cp.validate();
  return 1.0 / ((static_cast<double>(k) / cp.p) * r_criterion_term(k, cp));
}

CoefficientSeries extremal_r(int k, const ClassParams& cp) {
  return make_series(cp.p, {{k, coeff_bound_r(k, cp)}});
}

CoefficientSeries extremal_p(int k, const ClassParams& cp) {
  return make_series(cp.p, {{k, coeff_bound_p(k, cp)}});
}

CoefficientSeries extremal(int k, const ClassParams& cp, ClassKind kind) {
  return kind == ClassKind::R ? extremal_r(k, cp) : extremal_p(k, cp);
}

double tail_budget(const ClassParams& cp) { return coeff_bound_r(cp.p + 1, cp); }

}  // namespace pvalent
