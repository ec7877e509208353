#pragma once

namespace pvalent {

/// log|Gamma(x)|. Reentrant: std::lgamma writes the global signgam, which
/// races inside the parallel kernels.
double log_gamma(double x);

/// (x)_n = x (x+1) ... (x+n-1) = Gamma(x+n)/Gamma(x).
double rising_factorial(double x, int n);

/// log(Gamma(x)/Gamma(y)) for x, y > 0.
double log_gamma_ratio(double x, double y);

/// Gamma(x)/Gamma(y) for x, y > 0. When x - y is an integer of magnitude at
/// most 64 the ratio is a finite product and is computed exactly that way;
/// otherwise it goes through log-gamma differences.
double gamma_ratio(double x, double y);

}  // namespace pvalent
