#include <doctest.h>

#include <cmath>

#include "pvalent/error.hpp"
#include "pvalent/hadamard.hpp"
#include "support.hpp"

using namespace pvalent;
using testing::rel_err;

namespace {

// Largest order at which h passes the criterion, by bisection on the
// membership test alone. Returns -1 when h fails already at order 0.
double bisect_order(const CoefficientSeries& h, const ClassParams& cp) {
  if (!check_r_membership(h, cp.with_alpha(0.0)).member) return -1.0;
  double lo = 0.0;
  double hi = cp.p;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (check_r_membership(h, cp.with_alpha(mid)).member ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

TEST_CASE("canonical convolution order") {
  const auto cp = canonical_params();
  const auto rep = schild_silverman_lambda(cp);
  CHECK(rep.order == doctest::Approx(6.0 / 7.0).epsilon(1e-15));
  CHECK(rep.saturating_k == 2);
  CHECK(rep.verified_best);
  CHECK(rep.phi_increasing);
  CHECK(std::abs(1.0 - rep.saturation_sum) <= 1e-10);
  CHECK(rep.perturbed_sum > 1.0);

  const auto h = hadamard_product(make_series(1, {{2, 0.25}}), make_series(1, {{2, 0.25}}));
  CHECK(h == make_series(1, {{2, 0.0625}}));
  CHECK(check_r_membership(h, cp.with_alpha(6.0 / 7.0)).sum == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bisect_order(h, cp) == doctest::Approx(6.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("mixed order example") {
  const auto cp = canonical_params();
  const auto rep = mixed_order_xi(cp, 0.5);
  CHECK(rep.order == doctest::Approx(10.0 / 11.0).epsilon(1e-15));
  CHECK(rep.verified_best);
  const auto h = hadamard_product(extremal_r(2, cp), extremal_r(2, cp.with_alpha(0.5)));
  CHECK(bisect_order(h, cp) == doctest::Approx(10.0 / 11.0).epsilon(1e-12));
}

TEST_CASE("orders approach p as the factors degenerate") {
  const auto cp = canonical_params();
  CHECK(schild_silverman_lambda(cp.with_alpha(1.0 - 1e-9)).order > 1.0 - 1e-8);
  CHECK(mixed_order_xi(cp, 1.0 - 1e-9).order > 1.0 - 1e-8);
}

TEST_CASE("lambda matches xi with equal orders and a bisection of the extremal product") {
  auto rng = testing::make_rng(51);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const auto cp = random_class_params(rng);
    ConvolutionOrderReport lambda;
    try {
      lambda = schild_silverman_lambda(cp);
    } catch (const DomainError& e) {
      CHECK(e.kind() == ErrorKind::DegenerateDenominator);
      CHECK_THROWS_AS(mixed_order_xi(cp, cp.alpha), DomainError);
      continue;
    }
    ++checked;
    CHECK(std::abs(mixed_order_xi(cp, cp.alpha).order - lambda.order) <= 1e-12);
    const auto f0 = extremal_r(cp.p + 1, cp);
    const double brute = bisect_order(hadamard_product(f0, f0), cp);
    if (lambda.order >= 0.0) CHECK(std::abs(brute - lambda.order) <= 1e-9);
  }
  CHECK(checked > 250);
}

TEST_CASE("lambda lies in [alpha, p) when the extremal coefficient is at most 1") {
  // The product of two k = p+1 extremals has criterion sum 1/term_{p+1} at
  // order alpha, so it stays in the class exactly when term_{p+1} >= 1.
  auto rng = testing::make_rng(52);
  int above = 0;
  int below = 0;
  for (int i = 0; i < 500; ++i) {
    const auto cp = random_class_params(rng);
    ConvolutionOrderReport rep;
    try {
      rep = schild_silverman_lambda(cp);
    } catch (const DomainError&) {
      continue;
    }
    if (!rep.phi_increasing) continue;
    CHECK(rep.order < cp.p);
    if (r_criterion_term(cp.p + 1, cp) >= 1.0) {
      ++above;
      CHECK(rep.order >= cp.alpha);
      CHECK(rep.verified_best);
    } else {
      ++below;
      CHECK(rep.order < cp.alpha);
    }
  }
  CHECK(above > 300);
  MESSAGE(below << " draws have an extremal coefficient above 1 and lambda below alpha");
}

TEST_CASE("the order denominator can vanish for admissible parameters") {
  // w_2 = (1 - mu)(p + delta) = 0.1: the product of two extremals has
  // criterion sum above 1 at every order.
  ClassParams cp;
  cp.mu = 0.9;
  cp.delta = 0.0;
  CHECK_THROWS_AS(phi(2, cp), DomainError);
  const auto f0 = extremal_r(2, cp);
  CHECK(bisect_order(hadamard_product(f0, f0), cp) < 0.0);
}

TEST_CASE("products of members stay in the class at order lambda") {
  auto rng = testing::make_rng(53);
  int tested = 0;
  while (tested < 500) {
    const auto cp = random_class_params(rng);
    ConvolutionOrderReport rep;
    try {
      rep = schild_silverman_lambda(cp);
    } catch (const DomainError&) {
      continue;
    }
    if (!rep.phi_increasing) continue;
    ++tested;
    const auto f = random_member(rng, cp);
    const auto g = random_member(rng, cp);
    const auto sum = check_r_membership(hadamard_product(f, g), cp.with_alpha(rep.order)).sum;
    CHECK(sum <= 1.0 + 1e-12);
  }
}

TEST_CASE("lambda is monotone in the Rafid parameters") {
  auto rng = testing::make_rng(54);
  for (int i = 0; i < 100; ++i) {
    auto cp = random_class_params(rng, {3, 0.5, 0.5});
    double previous = -1.0;
    for (double delta : {0.5, 0.625, 0.75, 0.875, 1.0}) {
      cp.delta = delta;
      const double order = phi(cp.p + 1, cp);
      CHECK(order >= previous);
      previous = order;
    }
    previous = 1e9;
    for (double mu : {0.0, 0.1, 0.2, 0.3, 0.4}) {
      cp.mu = mu;
      const double order = phi(cp.p + 1, cp);
      CHECK(order <= previous);
      previous = order;
    }
  }
}

TEST_CASE("largest_member_order agrees with bisection") {
  auto rng = testing::make_rng(55);
  for (int i = 0; i < 200; ++i) {
    const auto cp = random_class_params(rng);
    const auto h = random_member(rng, cp, testing::uniform(rng, 0.01, 1.0), 5, 8);
    const auto order = largest_member_order(h, cp);
    const double brute = bisect_order(h, cp);
    if (brute < 0.0) {
      CHECK_FALSE(order.has_value());
    } else {
      REQUIRE(order.has_value());
      CHECK(std::abs(*order - brute) <= 1e-9);
    }
  }
  auto quadratic = canonical_params();
  quadratic.p = 2;
  CHECK(*largest_member_order(make_series(2, {}), quadratic) == 2.0);
}
