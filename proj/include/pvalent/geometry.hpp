#pragma once

// Distortion bounds for f^{(m)} and the radii of starlikeness, convexity and
// close-to-convexity for members of R(alpha; A, B).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pvalent/classes.hpp"

namespace pvalent {

struct DistortionBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// [fallfac(p,m) -+ T fallfac(p+1,m) r] r^{p-m} with T = tail_budget(cp).
DistortionBounds distortion_bounds(const ClassParams& cp, int m, double r);

/// Whether the distortion bound of order m follows from the coefficient
/// criterion for these parameters (see budget_dominated_by_first_term).
bool distortion_certified(const ClassParams& cp, int m, int k_max = 200);

struct BoundSample {
  double r = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

struct BoundCurve {
  int m = 0;
  bool certified = true;
  std::vector<BoundSample> samples;
};

/// `steps` evenly spaced radii on [r_min, r_max] (inclusive), 0 < r < 1.
BoundCurve distortion_curve(const ClassParams& cp, int m, double r_min, double r_max, int steps);

enum class RadiusKind { Starlike, Convex, CloseToConvex };

std::string to_string(RadiusKind kind);
RadiusKind radius_kind_from_string(const std::string& s);

struct RadiusReport {
  RadiusKind kind = RadiusKind::Starlike;
  double radius = 0.0;
  int argmin_k = 0;
  double zeta = 0.0;
  std::vector<std::pair<int, double>> candidates;
  /// Candidates are nondecreasing from the argmin up to k_max.
  bool monotone_tail = false;
  std::optional<std::string> warning;

  /// A radius of at least 1 means the property holds on the whole disk.
  bool whole_disk() const { return radius >= 1.0; }
};

/// Per-index candidate r_k for the given property:
///   starlike          {term_k (p-zeta)/(k-zeta)}^{1/(k-p)}
///   convex            {term_k p(p-zeta)/(k(k-zeta))}^{1/(k-p)}
///   close-to-convex   {term_k (p-zeta)/k}^{1/(k-p)}
/// with term_k = r_criterion_term(k, cp). Computed in log space.
double radius_candidate(RadiusKind kind, int k, const ClassParams& cp, double zeta);

RadiusReport radius(RadiusKind kind, const ClassParams& cp, double zeta, int k_max = 200);
RadiusReport radius_starlike(const ClassParams& cp, double zeta, int k_max = 200);
RadiusReport radius_convex(const ClassParams& cp, double zeta, int k_max = 200);
RadiusReport radius_close_to_convex(const ClassParams& cp, double zeta, int k_max = 200);

}  // namespace pvalent
