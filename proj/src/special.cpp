#include "pvalent/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pvalent/error.hpp"

namespace pvalent {

namespace {

constexpr int kMaxProductSteps = 64;

void require_positive(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0))
    fail(ErrorKind::NonpositiveArgument, "Gamma ratio needs positive arguments");
}

// Integer n with x = y + n when one exists within rounding, else nothing.
bool integer_gap(double x, double y, int& n) {
  const double d = x - y;
  const double r = std::round(d);
  const double tol = 4.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(x), std::abs(y)});
  if (std::abs(d - r) > tol || std::abs(r) > kMaxProductSteps) return false;
  n = static_cast<int>(r);
  return true;
}

}  // namespace

double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double rising_factorial(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= (x + i);
  return r;
}

double log_gamma_ratio(double x, double y) {
  require_positive(x, y);
  int n = 0;
  if (integer_gap(x, y, n)) {
    double s = 0.0;
    if (n >= 0)
      for (int i = 0; i < n; ++i) s += std::log(y + i);
    else
      for (int i = 0; i < -n; ++i) s -= std::log(x + i);
    return s;
  }
  return log_gamma(x) - log_gamma(y);
}

double gamma_ratio(double x, double y) {
  require_positive(x, y);
  int n = 0;
  if (integer_gap(x, y, n)) return n >= 0 ? rising_factorial(y, n) : 1.0 / rising_factorial(x, -n);
  return std::exp(log_gamma(x) - log_gamma(y));
}

}  // namespace pvalent
