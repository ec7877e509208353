#include "pvalent/hadamard.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pvalent/error.hpp"

namespace pvalent {

namespace {

constexpr double kSaturationTol = 1e-10;
constexpr double kOrderStep = 1e-6;

void require_beta(double beta, int p) {
  if (!(beta >= 0.0 && beta < p)) fail(ErrorKind::ParameterOutOfRange, "beta must lie in [0, p)");
}

bool increasing_on(const std::vector<std::pair<int, double>>& values) {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i].second < values[i - 1].second) return false;
  return true;
}

// Criterion sums of h at `order` and slightly above it; orders outside
// [0, p) cannot be checked and leave the report unverified.
bool saturates(const CoefficientSeries& h, const ClassParams& cp, ConvolutionOrderReport& report) {
  if (!(report.order >= 0.0 && report.order < cp.p)) return false;
  const double step = std::min(kOrderStep, 0.5 * (cp.p - report.order));
  report.saturation_sum = check_r_membership(h, cp.with_alpha(report.order)).sum;
  report.perturbed_sum = check_r_membership(h, cp.with_alpha(report.order + step)).sum;
  // The sum divides by (A-B)(p-order), so its rounding grows like p/(p-order).
  const double tol = kSaturationTol * std::max(1.0, cp.p / (cp.p - report.order));
  return std::abs(1.0 - report.saturation_sum) <= tol && report.perturbed_sum > 1.0;
}

[[noreturn]] void degenerate(double denom, int k) {
  std::ostringstream msg;
  msg << "order bound denominator " << denom << " is not positive at k = " << k;
  fail(ErrorKind::DegenerateDenominator, msg.str());
}

// Returns false when some index has a degenerate bound, which also rules out
// the first index as the binding one.
template <class OrderAt>
bool order_profile(const ClassParams& cp, const OrderAt& order_at, int k_max,
                   std::vector<std::pair<int, double>>& out) {
  for (int k = cp.p + 1; k <= k_max; ++k) {
    // Past the point where the weight overflows the bound is p to double precision.
    if (!std::isfinite(rafid_weight(k, cp.p, cp.rafid()))) break;
    try {
      out.emplace_back(k, order_at(k));
    } catch (const DomainError& e) {
      if (e.kind() != ErrorKind::DegenerateDenominator) throw;
      return false;
    }
  }
  return true;
}

template <class OrderAt>
ConvolutionOrderReport order_report(const ClassParams& cp_alpha, double beta, const OrderAt& order_at,
                                    int k_max) {
  ConvolutionOrderReport report;
  report.saturating_k = cp_alpha.p + 1;
  report.order = order_at(report.saturating_k);
  const bool defined = order_profile(cp_alpha, order_at, k_max, report.phi);
  report.phi_increasing = defined && increasing_on(report.phi);

  const auto f1 = extremal_r(report.saturating_k, cp_alpha);
  const auto f2 = extremal_r(report.saturating_k, cp_alpha.with_alpha(beta));
  const bool saturated = saturates(hadamard_product(f1, f2), cp_alpha, report);
  report.verified_best = report.phi_increasing && saturated;
  return report;
}

}  // namespace

double mixed_order_bound(int k, const ClassParams& cp, double beta) {
  cp.validate();
  require_beta(beta, cp.p);
  if (k < cp.p + 1) fail(ErrorKind::IndexBelowValence, "order bound needs k >= p+1");
  const double ab = cp.A - cp.B;
  const double lin = (1.0 - cp.B) * (k - cp.p);
  const double ca = ab * (cp.p - cp.alpha);
  const double cb = ab * (cp.p - beta);
  const double w = rafid_weight(k, cp.p, cp.rafid());
  const double denom = (lin + ca) * (lin + cb) * w - ca * cb;
  if (!(denom > 0.0)) degenerate(denom, k);
  return cp.p - lin * ab * (cp.p - cp.alpha) * (cp.p - beta) / denom;
}

double phi(int k, const ClassParams& cp) {
  cp.validate();
  if (k < cp.p + 1) fail(ErrorKind::IndexBelowValence, "order bound needs k >= p+1");
  const double lin = (1.0 - cp.B) * (k - cp.p);
  const double c = cp.budget_scale();
  const double denom = (lin + c) * (lin + c) * rafid_weight(k, cp.p, cp.rafid()) - c * c;
  if (!(denom > 0.0)) degenerate(denom, k);
  return cp.p - lin * c * (cp.p - cp.alpha) / denom;
}

ConvolutionOrderReport schild_silverman_lambda(const ClassParams& cp, int k_max) {
  cp.validate();
  return order_report(cp, cp.alpha, [&](int k) { return phi(k, cp); }, k_max);
}

ConvolutionOrderReport mixed_order_xi(const ClassParams& cp_alpha, double beta, int k_max) {
  cp_alpha.validate();
  require_beta(beta, cp_alpha.p);
  return order_report(cp_alpha, beta, [&](int k) { return mixed_order_bound(k, cp_alpha, beta); }, k_max);
}

std::optional<double> largest_member_order(const CoefficientSeries& h, const ClassParams& cp) {
  cp.validate();
  if (h.valence() != cp.p) fail(ErrorKind::ValenceMismatch, "series valence differs from class p");
  // Criterion sum at order l is Y + (1-B) X / ((A-B)(p-l)), increasing in l.
  double x = 0.0;
  double y = 0.0;
  for (const auto& [k, a] : h.coeffs()) {
    const double w = rafid_weight(k, cp.p, cp.rafid()) * a;
    x += (k - cp.p) * w;
    y += w;
  }
  if (x == 0.0) return static_cast<double>(cp.p);
  if (y >= 1.0) return std::nullopt;
  const double order = cp.p - (1.0 - cp.B) * x / ((cp.A - cp.B) * (1.0 - y));
  if (order < 0.0) return std::nullopt;
  return order;
}

}  // namespace pvalent
