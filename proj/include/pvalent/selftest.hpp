#pragma once

// Randomized acceptance suites. Each criterion runs at its pinned tolerance
// and reports pass/fail with a one-line detail; nothing here is calibrated
// after the fact.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pvalent/calculus_bounds.hpp"
#include "pvalent/classes.hpp"
#include "pvalent/oracle.hpp"

namespace pvalent {

using Rng = std::mt19937_64;

/// The most classical specialization: p=1, alpha=0, A=1, B=-1, mu=0, delta=1.
ClassParams canonical_params();

struct ParamRanges {
  int p_max = 3;
  double mu_max = 0.95;
  double delta_min = 0.0;
};

/// Uniform over the admissible box: p in [1, p_max], alpha in [0, p),
/// B in [-1, 1), A in (B, 1], mu in [0, mu_max], delta in [delta_min, 1].
ClassParams random_class_params(Rng& rng, const ParamRanges& ranges = {});

/// A member of R(alpha; A, B) with 1..max_terms coefficients at indices in
/// [p+1, p+span] whose criterion sum is exactly `target_sum`.
CoefficientSeries random_member(Rng& rng, const ClassParams& cp, double target_sum, int max_terms = 4,
                                int span = 6);

/// Same with the sum drawn uniformly from (0, 1].
CoefficientSeries random_member(Rng& rng, const ClassParams& cp, int max_terms = 4, int span = 6);

/// Series with 0..max_terms dyadic coefficients 2^{-j}, indices in [p+1, p+span].
CoefficientSeries random_dyadic_series(Rng& rng, int p, int max_terms = 6, int span = 10);

/// True when every supported index k satisfies (A-B)(p-alpha) >= B(k-p). This
/// is what the modulus estimate behind the coefficient criterion needs to go
/// from the criterion to membership; it always holds for B <= 0.
bool criterion_sufficiency_holds(const CoefficientSeries& f, const ClassParams& cp);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct SelftestOptions {
  std::uint64_t seed = 20240601;
  int quadrature_nodes = 64;
  Execution execution = Execution::Parallel;
};

CriterionResult criterion_sharp_coefficient_bound(const SelftestOptions& opt);
CriterionResult criterion_oracle_agreement(const SelftestOptions& opt);
CriterionResult criterion_rafid_quadrature(const SelftestOptions& opt);
CriterionResult criterion_p_r_correspondence(const SelftestOptions& opt);
CriterionResult criterion_distortion(const SelftestOptions& opt);
CriterionResult criterion_radii(const SelftestOptions& opt);
CriterionResult criterion_hadamard(const SelftestOptions& opt);
CriterionResult criterion_fractional(const SelftestOptions& opt);
CriterionResult criterion_printed_form_audit(const SelftestOptions& opt);

/// All criteria in order.
std::vector<CriterionResult> run_acceptance(const SelftestOptions& opt);

/// The audit configurations used by criterion_printed_form_audit.
std::vector<AuditEntry> acceptance_audit();

}  // namespace pvalent
