#include "pvalent/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pvalent/error.hpp"
#include "pvalent/operators.hpp"

namespace pvalent {

namespace {

constexpr double kPoleTol = 1e-12;
constexpr double kAxisTol = 1e-9;

enum class Goal { Max, Min };

struct Sample {
  double value = 0.0;
  bool pole = false;
};

struct Point {
  int radius_index = 0;
  double angle = 0.0;
  Complex z{0.0, 0.0};
};

[[noreturn]] void pole_at(Complex z, const char* what) {
  std::ostringstream msg;
  msg << what << " vanishes at z = " << z.real() << (z.imag() < 0 ? " - " : " + ")
      << std::abs(z.imag()) << "i";
  throw DomainError(ErrorKind::PoleOnGrid, msg.str(), z);
}

template <class Fn>
Sample sample_one(const Fn& fn, Complex z) {
  try {
    return {fn(z), false};
  } catch (const DomainError& e) {
    if (e.kind() != ErrorKind::PoleOnGrid) throw;
    return {std::numeric_limits<double>::quiet_NaN(), true};
  }
}

// The data-parallel kernel: one independent function evaluation per point.
template <class Fn>
std::vector<Sample> sample_points(const Fn& fn, const std::vector<Point>& points, Execution exec) {
  std::vector<Sample> out(points.size());
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = sample_one(fn, points[i].z);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = sample_one(fn, points[i].z);
  }
  return out;
}

// Strictly better value wins; ties go to the smaller angle, then the smaller radius.
bool better(Goal goal, double v, const Point& pt, double best_v, const Point& best_pt) {
  if (goal == Goal::Max ? v > best_v : v < best_v) return true;
  if (v != best_v) return false;
  if (pt.angle != best_pt.angle) return pt.angle < best_pt.angle;
  return pt.radius_index < best_pt.radius_index;
}

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  return a < 0.0 ? a + two_pi : a;
}

struct ScanResult {
  double value = 0.0;
  Point at;
  std::vector<std::string> warnings;
};

template <class Fn>
ScanResult scan(const Fn& fn, const SampleGrid& grid, Goal goal, Execution exec, bool check_axis) {
  grid.validate();
  const int n = grid.angles_per_radius;
  std::vector<Point> points;
  points.reserve(grid.radii.size() * n);
  for (std::size_t i = 0; i < grid.radii.size(); ++i)
    for (int j = 0; j < n; ++j) {
      const double angle = 2.0 * std::numbers::pi * j / n;
      points.push_back({static_cast<int>(i), angle, std::polar(grid.radii[i], angle)});
    }

  const auto values = sample_points(fn, points, exec);
  for (std::size_t i = 0; i < points.size(); ++i)
    if (values[i].pole) pole_at(points[i].z, "denominator");

  ScanResult result;
  result.at = points.front();
  result.value = values.front().value;
  for (std::size_t i = 1; i < points.size(); ++i)
    if (better(goal, values[i].value, points[i], result.value, result.at)) {
      result.value = values[i].value;
      result.at = points[i];
    }

  if (check_axis) {
    for (std::size_t i = 0; i < grid.radii.size(); ++i) {
      const double on_axis = values[i * n].value;
      double circle = on_axis;
      std::size_t where = i * n;
      for (int j = 1; j < n; ++j)
        if (values[i * n + j].value > circle) {
          circle = values[i * n + j].value;
          where = i * n + j;
        }
      if (circle > on_axis + kAxisTol * std::max(1.0, std::abs(on_axis))) {
        std::ostringstream msg;
        msg << "maximum on |z| = " << grid.radii[i] << " is off the positive real axis (angle "
            << points[where].angle << ", value " << circle << " vs " << on_axis << ")";
        result.warnings.push_back(msg.str());
      }
    }
  }

  double step = 2.0 * std::numbers::pi / n;
  for (int pass = 0; pass < grid.refinement; ++pass) {
    step *= 0.5;
    const Point centre = result.at;
    for (double delta : {-step, step}) {
      Point pt{centre.radius_index, wrap_angle(centre.angle + delta), {}};
      pt.z = std::polar(grid.radii[pt.radius_index], pt.angle);
      const auto s = sample_one(fn, pt.z);
      if (s.pole) pole_at(pt.z, "denominator");
      if (better(goal, s.value, pt, result.value, result.at)) {
        result.value = s.value;
        result.at = pt;
      }
    }
  }
  return result;
}

template <class Fn>
OracleReport finish(const Fn& fn, ScanResult scan_result, bool pass, double threshold, double tol) {
  OracleReport report;
  report.extremum = scan_result.value;
  report.arg_z = scan_result.at.z;
  report.pass = pass;
  report.threshold = threshold;
  report.tolerance = tol;
  report.warnings = std::move(scan_result.warnings);
  const auto axis = sample_one(fn, Complex{std::abs(report.arg_z), 0.0});
  report.real_axis_value = axis.value;
  report.on_positive_real_axis =
      !axis.pole && std::abs(axis.value - report.extremum) <=
                        kAxisTol * std::max(1.0, std::abs(report.extremum));
  return report;
}

void require_radius(double r) {
  if (!(r > 0.0 && r < 1.0)) fail(ErrorKind::RadiusOutOfRange, "sample radius must lie in (0, 1)");
}

void require_zeta(double zeta, int p) {
  if (!(zeta >= 0.0 && zeta < p)) fail(ErrorKind::ParameterOutOfRange, "zeta must lie in [0, p)");
}

// z f'/f etc. evaluated from the series and its derivatives.
struct Derivatives {
  CoefficientSeries f;
  FractionalSeries d1;
  FractionalSeries d2;

  explicit Derivatives(const CoefficientSeries& g)
      : f(g), d1(derivative_m(to_fractional(g), 1)), d2(derivative_m(d1, 1)) {}
};

double starlike_at(const Derivatives& d, Complex z) {
  const Complex fz = evaluate(d.f, z);
  if (std::abs(fz) <= kPoleTol * std::pow(std::abs(z), d.f.valence())) pole_at(z, "f");
  return (z * evaluate(d.d1, z) / fz).real();
}

double convex_at(const Derivatives& d, Complex z) {
  const Complex d1 = evaluate(d.d1, z);
  if (std::abs(d1) <= kPoleTol * d.f.valence() * std::pow(std::abs(z), d.f.valence() - 1)) pole_at(z, "f'");
  return (1.0 + z * evaluate(d.d2, z) / d1).real();
}

double ctc_at(const Derivatives& d, Complex z) {
  const int p = d.f.valence();
  Complex zp1{1.0, 0.0};
  for (int i = 1; i < p; ++i) zp1 *= z;
  return std::abs(evaluate(d.d1, z) / zp1 - static_cast<double>(p));
}

double subordination_at(const CoefficientSeries& g, const FractionalSeries& dg, const ClassParams& cp,
                        Complex z) {
  const Complex gz = evaluate(g, z);
  if (std::abs(gz) <= kPoleTol * std::pow(std::abs(z), cp.p)) pole_at(z, "Rafid image");
  const Complex w = z * evaluate(dg, z) / gz;
  const Complex den = cp.B * w - (cp.B * cp.p + cp.budget_scale());
  if (den == Complex{0.0, 0.0}) return std::numeric_limits<double>::infinity();
  return std::abs((w - static_cast<double>(cp.p)) / den);
}

}  // namespace

SampleGrid SampleGrid::standard() {
  SampleGrid g;
  g.radii = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
  return g;
}

SampleGrid SampleGrid::single(double r, int angles, int refinement) {
  SampleGrid g;
  g.radii = {r};
  g.angles_per_radius = angles;
  g.refinement = refinement;
  return g;
}

void SampleGrid::validate() const {
  if (radii.empty()) fail(ErrorKind::ParameterOutOfRange, "grid needs at least one radius");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require_radius(radii[i]);
    if (i > 0 && !(radii[i] > radii[i - 1]))
      fail(ErrorKind::ParameterOutOfRange, "grid radii must be strictly increasing");
  }
  if (angles_per_radius < 1) fail(ErrorKind::ParameterOutOfRange, "grid needs at least one angle");
  if (refinement < 0) fail(ErrorKind::ParameterOutOfRange, "refinement must be nonnegative");
}

double subordination_ratio(const CoefficientSeries& f, const ClassParams& cp, Complex z) {
  cp.validate();
  const auto g = apply_rafid(f, cp.rafid());
  return subordination_at(g, derivative_m(to_fractional(g), 1), cp, z);
}

double starlike_value(const CoefficientSeries& f, Complex z) { return starlike_at(Derivatives(f), z); }
double convex_value(const CoefficientSeries& f, Complex z) { return convex_at(Derivatives(f), z); }
double ctc_value(const CoefficientSeries& f, Complex z) { return ctc_at(Derivatives(f), z); }

OracleReport subordination_margin(const CoefficientSeries& f, const ClassParams& cp, const SampleGrid& grid,
                                  Execution exec, double tolerance) {
  cp.validate();
  if (f.valence() != cp.p) fail(ErrorKind::ValenceMismatch, "series valence differs from class p");
  const auto g = apply_rafid(f, cp.rafid());
  const auto dg = derivative_m(to_fractional(g), 1);
  auto fn = [&](Complex z) { return subordination_at(g, dg, cp, z); };
  auto result = scan(fn, grid, Goal::Max, exec, true);
  const bool pass = result.value < 1.0 - tolerance;
  return finish(fn, std::move(result), pass, 1.0, tolerance);
}

OracleReport starlike_min_re(const CoefficientSeries& f, double zeta, double r, int n_angles, int refinement,
                             Execution exec, double tolerance) {
  require_zeta(zeta, f.valence());
  const Derivatives d(f);
  auto fn = [&](Complex z) { return starlike_at(d, z); };
  auto result = scan(fn, SampleGrid::single(r, n_angles, refinement), Goal::Min, exec, false);
  const bool pass = result.value >= zeta - tolerance;
  return finish(fn, std::move(result), pass, zeta, tolerance);
}

OracleReport convex_min_re(const CoefficientSeries& f, double zeta, double r, int n_angles, int refinement,
                           Execution exec, double tolerance) {
  require_zeta(zeta, f.valence());
  const Derivatives d(f);
  auto fn = [&](Complex z) { return convex_at(d, z); };
  auto result = scan(fn, SampleGrid::single(r, n_angles, refinement), Goal::Min, exec, false);
  const bool pass = result.value >= zeta - tolerance;
  return finish(fn, std::move(result), pass, zeta, tolerance);
}

OracleReport ctc_max_dev(const CoefficientSeries& f, double zeta, double r, int n_angles, int refinement,
                         Execution exec, double tolerance) {
  require_zeta(zeta, f.valence());
  const Derivatives d(f);
  auto fn = [&](Complex z) { return ctc_at(d, z); };
  auto result = scan(fn, SampleGrid::single(r, n_angles, refinement), Goal::Max, exec, false);
  const double threshold = f.valence() - zeta;
  const bool pass = result.value <= threshold + tolerance;
  return finish(fn, std::move(result), pass, threshold, tolerance);
}

}  // namespace pvalent
