#pragma once

// Distortion bounds for compositions of the Bernardi operator with the
// Riemann-Liouville integral and derivative, applied to R-class members.
//
// Every composition is diagonal: z^k -> M_k z^{k + shift}. For a class member
// sum a_k <= T (T = tail_budget) and M_k / term_k is largest at k = p+1 when
// the bound is certified, so on |z| = r
//
//   M_p r^{p+shift} - M_{p+1} T r^{p+1+shift}
//     <= |(composed f)(z)| <=
//   M_p r^{p+shift} + M_{p+1} T r^{p+1+shift},
//
// with equality in the lower bound for the extremal at k = p+1 on the
// positive real axis. The published closed forms are also evaluated so that
// any disagreement with the composition is visible.

#include <optional>
#include <string>
#include <vector>

#include "pvalent/classes.hpp"

namespace pvalent {

enum class Composition {
  IntegralOfBernardi,    // D^{-eta} J_c
  DerivativeOfBernardi,  // D^{eta} J_c
  BernardiOfDerivative,  // J_c D^{eta}
  BernardiOfIntegral,    // J_c D^{-eta}
};

/// CLI numbering 7..10 in the order listed above.
Composition composition_from_index(int index);
int composition_index(Composition comp);
std::string to_string(Composition comp);

/// Exponent offset of the composition: +eta for the integrals, -eta otherwise.
double composition_shift(Composition comp, double eta);

/// Throws ParameterOutOfRange unless c > -p, eta is in range for the
/// composition and every Bernardi integral involved converges.
void validate_composition(Composition comp, int p, double c, double eta);

/// Closed-form multiplier M_k of z^k under the composition.
double composition_multiplier(Composition comp, int k, int p, double c, double eta);

/// The composition applied through the operator implementations.
FractionalSeries apply_composition(Composition comp, const CoefficientSeries& f, double c, double eta);

struct CompositionBound {
  Composition composition = Composition::IntegralOfBernardi;
  double c = 0.0;
  double eta = 0.0;
  double r = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  /// Published closed forms at the same arguments.
  double printed_lower = 0.0;
  double printed_upper = 0.0;
  /// M_k / term_k is maximal at k = p+1 over [p+1, 200].
  bool certified = true;
};

CompositionBound composition_bound(Composition comp, const ClassParams& cp, double c, double eta, double r);

/// Sharpness witness: the composition applied to extremal_r(p+1, cp).
FractionalSeries composed_extremal(Composition comp, const ClassParams& cp, double c, double eta);

/// Published leading factor of D^{eta} J_c on z^p, Gamma(p+1)/Gamma(2-eta);
/// agrees with the composition only at p = 1.
double printed_derivative_leading_factor(int p, double eta);

struct AuditEntry {
  std::string subject;
  std::string quantity;
  double derived = 0.0;
  double printed = 0.0;
  bool diverges = false;
  std::string note;
};

/// Derived versus published values for every composition at (cp, c, eta, r).
/// Entries agree to 1e-12 relative unless `diverges` is set.
std::vector<AuditEntry> printed_form_audit(const ClassParams& cp, double c, double eta, double r);

}  // namespace pvalent
