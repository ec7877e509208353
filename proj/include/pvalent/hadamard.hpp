#pragma once

// Class order of modified Hadamard products of R-class members.

#include <optional>
#include <utility>
#include <vector>

#include "pvalent/classes.hpp"

namespace pvalent {

struct ConvolutionOrderReport {
  double order = 0.0;
  int saturating_k = 0;
  /// Phi increasing on [p+1, k_max] and the extremal product saturates the
  /// criterion at `order` and fails it at order + min(1e-6, (p - order)/2).
  bool verified_best = false;
  bool phi_increasing = false;
  /// Phi(k) for k = p+1..k_max (only for the equal-order product).
  std::vector<std::pair<int, double>> phi;
  /// Criterion sum of the extremal product at `order`.
  double saturation_sum = 0.0;
  /// Criterion sum of the extremal product just above `order`.
  double perturbed_sum = 0.0;
};

/// Order at which the product of the k-th extremals of orders alpha and beta
/// saturates the criterion:
///   p - (1-B)(k-p)(A-B)(p-alpha)(p-beta)
///       / {[(1-B)(k-p)+(A-B)(p-alpha)][(1-B)(k-p)+(A-B)(p-beta)] w_k
///          - (A-B)^2 (p-alpha)(p-beta)}
/// with w_k the Rafid weight. Phi(k) is the case beta = alpha. Throws
/// DegenerateDenominator when the braces are not positive (the product of
/// the extremals then fails the criterion at every order).
double mixed_order_bound(int k, const ClassParams& cp_alpha, double beta);
double phi(int k, const ClassParams& cp);

/// lambda = Phi(p+1), with the audit described on ConvolutionOrderReport.
ConvolutionOrderReport schild_silverman_lambda(const ClassParams& cp, int k_max = 200);
/// xi for a product of an alpha-member and a beta-member, evaluated at k = p+1.
ConvolutionOrderReport mixed_order_xi(const ClassParams& cp_alpha, double beta, int k_max = 200);

/// Largest order lambda' such that h passes the R-class criterion with alpha
/// replaced by lambda' (other parameters from cp). Empty when h fails for
/// every order in [0, p).
std::optional<double> largest_member_order(const CoefficientSeries& h, const ClassParams& cp);

}  // namespace pvalent
