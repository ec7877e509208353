#pragma once

// Brute-force checks of the defining analytic inequalities by sampling
// circles |z| = r. These work from function values only and never consult the
// coefficient criteria, so they serve as ground truth for them.
//
// Each scan has a serial reference kernel and an OpenMP kernel. Both evaluate
// the same per-point function into a value table and reduce it in a fixed
// order, so their reports are identical.

#include <optional>
#include <string>
#include <vector>

#include "pvalent/classes.hpp"
#include "pvalent/series.hpp"

namespace pvalent {

enum class Execution { Serial, Parallel };

struct SampleGrid {
  std::vector<double> radii;
  int angles_per_radius = 256;
  /// Angular bisection passes around the running extremum.
  int refinement = 2;

  /// radii {0.1, ..., 0.9, 0.99}, 256 angles, 2 refinement passes.
  static SampleGrid standard();
  static SampleGrid single(double r, int angles, int refinement = 2);
  void validate() const;
};

struct OracleReport {
  /// Max of the modulus quantity or min of the real-part quantity.
  double extremum = 0.0;
  Complex arg_z{0.0, 0.0};
  bool pass = false;
  double threshold = 0.0;
  double tolerance = 1e-9;
  /// Whether the extremum sits on the positive real axis (to 1e-9 relative).
  bool on_positive_real_axis = false;
  /// Value of the sampled quantity at z = |arg_z| on the real axis.
  double real_axis_value = 0.0;
  std::vector<std::string> warnings;
};

inline constexpr double kOracleTolerance = 1e-9;

/// |(w - p) / (B w - [Bp + (A-B)(p-alpha)])| with w = z g'/g, g the Rafid
/// image of f. Throws PoleOnGrid where g vanishes.
double subordination_ratio(const CoefficientSeries& f, const ClassParams& cp, Complex z);
/// Re(z f'/f).
double starlike_value(const CoefficientSeries& f, Complex z);
/// Re(1 + z f''/f').
double convex_value(const CoefficientSeries& f, Complex z);
/// |f'/z^{p-1} - p|.
double ctc_value(const CoefficientSeries& f, Complex z);

/// max over the grid of subordination_ratio; pass iff max < 1 - tolerance.
/// Also checks that each circle's maximum lies on the positive real axis
/// and adds a warning for every circle where it does not.
OracleReport subordination_margin(const CoefficientSeries& f, const ClassParams& cp,
                                  const SampleGrid& grid = SampleGrid::standard(),
                                  Execution exec = Execution::Parallel,
                                  double tolerance = kOracleTolerance);

/// min over |z| = r of Re(z f'/f); pass iff min >= zeta - tolerance.
OracleReport starlike_min_re(const CoefficientSeries& f, double zeta, double r, int n_angles,
                             int refinement = 2, Execution exec = Execution::Parallel,
                             double tolerance = kOracleTolerance);
/// min over |z| = r of Re(1 + z f''/f'); pass iff min >= zeta - tolerance.
OracleReport convex_min_re(const CoefficientSeries& f, double zeta, double r, int n_angles,
                           int refinement = 2, Execution exec = Execution::Parallel,
                           double tolerance = kOracleTolerance);
/// max over |z| = r of |f'/z^{p-1} - p|; pass iff max <= p - zeta + tolerance.
OracleReport ctc_max_dev(const CoefficientSeries& f, double zeta, double r, int n_angles,
                         int refinement = 2, Execution exec = Execution::Parallel,
                         double tolerance = kOracleTolerance);

}  // namespace pvalent
