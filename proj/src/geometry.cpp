#include "pvalent/geometry.hpp"

#include <cmath>
#include <sstream>

#include "pvalent/error.hpp"

namespace pvalent {

namespace {

void require_radius(double r) {
  if (!(r > 0.0 && r < 1.0)) fail(ErrorKind::RadiusOutOfRange, "radius must lie in (0, 1)");
}

void require_order(int m, int p) {
  if (m < 0) fail(ErrorKind::ParameterOutOfRange, "derivative order must be nonnegative");
  if (m > p) fail(ErrorKind::OrderExceedsValence, "derivative order exceeds valence");
}

}  // namespace

DistortionBounds distortion_bounds(const ClassParams& cp, int m, double r) {
  cp.validate();
  require_order(m, cp.p);
  require_radius(r);
  const double lead = falling_factorial(cp.p, m);
  const double tail = tail_budget(cp) * falling_factorial(cp.p + 1, m) * r;
  const double scale = std::pow(r, cp.p - m);
  return {(lead - tail) * scale, (lead + tail) * scale};
}

bool distortion_certified(const ClassParams& cp, int m, int k_max) {
  cp.validate();
  require_order(m, cp.p);
  return budget_dominated_by_first_term(cp, [m](int k) { return falling_factorial(k, m); }, k_max);
}

BoundCurve distortion_curve(const ClassParams& cp, int m, double r_min, double r_max, int steps) {
  require_radius(r_min);
  require_radius(r_max);
  if (steps < 1 || r_max < r_min) fail(ErrorKind::ParameterOutOfRange, "need steps >= 1 and r_min <= r_max");
  BoundCurve curve;
  curve.m = m;
  curve.certified = distortion_certified(cp, m);
  for (int i = 0; i < steps; ++i) {
    const double r = steps == 1 ? r_min : r_min + (r_max - r_min) * i / (steps - 1);
    const auto b = distortion_bounds(cp, m, r);
    curve.samples.push_back({r, b.lower, b.upper});
  }
  return curve;
}

std::string to_string(RadiusKind kind) {
  switch (kind) {
    case RadiusKind::Starlike: return "starlike";
    case RadiusKind::Convex: return "convex";
    case RadiusKind::CloseToConvex: return "ctc";
  }
  return "unknown";
}

RadiusKind radius_kind_from_string(const std::string& s) {
  if (s == "starlike") return RadiusKind::Starlike;
  if (s == "convex") return RadiusKind::Convex;
  if (s == "ctc") return RadiusKind::CloseToConvex;
  fail(ErrorKind::BadFlag, "radius kind must be starlike, convex or ctc");
}

double radius_candidate(RadiusKind kind, int k, const ClassParams& cp, double zeta) {
  const double p = cp.p;
  double log_factor = 0.0;
  switch (kind) {
    case RadiusKind::Starlike:
      log_factor = std::log(p - zeta) - std::log(k - zeta);
      break;
    case RadiusKind::Convex:
      log_factor = std::log(p) + std::log(p - zeta) - std::log(static_cast<double>(k)) - std::log(k - zeta);
      break;
    case RadiusKind::CloseToConvex:
      log_factor = std::log(p - zeta) - std::log(static_cast<double>(k));
      break;
  }
  return std::exp((log_r_criterion_term(k, cp) + log_factor) / (k - cp.p));
}

RadiusReport radius(RadiusKind kind, const ClassParams& cp, double zeta, int k_max) {
  cp.validate();
  if (!(zeta >= 0.0 && zeta < cp.p)) fail(ErrorKind::ParameterOutOfRange, "zeta must lie in [0, p)");
  if (k_max < cp.p + 1) fail(ErrorKind::ParameterOutOfRange, "k_max must be at least p+1");

  RadiusReport report;
  report.kind = kind;
  report.zeta = zeta;
  report.candidates.reserve(k_max - cp.p);
  for (int k = cp.p + 1; k <= k_max; ++k)
    report.candidates.emplace_back(k, radius_candidate(kind, k, cp, zeta));

  std::size_t best = 0;
  for (std::size_t i = 1; i < report.candidates.size(); ++i)
    if (report.candidates[i].second < report.candidates[best].second) best = i;
  report.radius = report.candidates[best].second;
  report.argmin_k = report.candidates[best].first;

  report.monotone_tail = true;
  for (std::size_t i = best + 1; i < report.candidates.size(); ++i)
    if (report.candidates[i].second < report.candidates[i - 1].second) {
      report.monotone_tail = false;
      break;
    }
  if (!report.monotone_tail) {
    std::ostringstream msg;
    msg << "candidates are not nondecreasing after k = " << report.argmin_k
        << "; the minimum over k <= " << k_max << " may not be the infimum";
    report.warning = msg.str();
  } else if (report.argmin_k == k_max) {
    report.monotone_tail = false;
    report.warning = "minimum attained at k_max; raise k_max";
  }
  return report;
}

RadiusReport radius_starlike(const ClassParams& cp, double zeta, int k_max) {
  return radius(RadiusKind::Starlike, cp, zeta, k_max);
}

RadiusReport radius_convex(const ClassParams& cp, double zeta, int k_max) {
  return radius(RadiusKind::Convex, cp, zeta, k_max);
}

RadiusReport radius_close_to_convex(const ClassParams& cp, double zeta, int k_max) {
  return radius(RadiusKind::CloseToConvex, cp, zeta, k_max);
}

}  // namespace pvalent
