#include <doctest.h>

#include <cmath>

#include "pvalent/classes.hpp"
#include "pvalent/error.hpp"
#include "pvalent/summation.hpp"
#include "support.hpp"

using namespace pvalent;
using testing::rel_err;

namespace {

// The criterion multiplier written out from scratch with tgamma.
double direct_term(int k, const ClassParams& cp) {
  const double w = std::pow(1.0 - cp.mu, k - cp.p) * std::tgamma(k + cp.delta) / std::tgamma(cp.p + cp.delta);
  const double c = (cp.A - cp.B) * (cp.p - cp.alpha);
  return ((1.0 - cp.B) * (k - cp.p) + c) * w / c;
}

}  // namespace

TEST_CASE("criterion term examples") {
  const auto cp = canonical_params();
  CHECK(r_criterion_term(2, cp) == 4.0);
  CHECK(r_criterion_term(3, cp) == 18.0);

  ClassParams near = cp;
  double previous = 0.0;
  for (double eps : {1e-1, 1e-3, 1e-6}) {
    near.B = 0.2;
    near.A = 0.2 + eps;
    const double t = r_criterion_term(2, near);
    CHECK(t > previous);
    previous = t;
  }
  CHECK(previous > 1e5);
}

TEST_CASE("criterion term agrees with a direct evaluation") {
  auto rng = testing::make_rng(31);
  for (int i = 0; i < 300; ++i) {
    const auto cp = random_class_params(rng);
    for (int k = cp.p + 1; k <= cp.p + 20; ++k) CHECK(rel_err(r_criterion_term(k, cp), direct_term(k, cp)) <= 1e-12);
  }
}

TEST_CASE("membership examples") {
  const auto cp = canonical_params();
  const auto id = check_r_membership(make_series(1, {}), cp);
  CHECK(id.sum == 0.0);
  CHECK(id.member);
  CHECK(id.margin == 1.0);

  const auto f0 = check_r_membership(make_series(1, {{2, 0.25}}), cp);
  CHECK(f0.sum == 1.0);
  CHECK(f0.member);
  CHECK(f0.margin == 0.0);

  const auto over = check_r_membership(make_series(1, {{2, 0.26}}), cp);
  CHECK(over.sum == doctest::Approx(1.04).epsilon(1e-15));
  CHECK_FALSE(over.member);

  const auto p_id = check_p_membership(make_series(1, {}), cp);
  CHECK(p_id.member);
  CHECK(p_id.margin == 1.0);
  const auto p_f = check_p_membership(make_series(1, {{2, 0.125}}), cp);
  CHECK(p_f.sum == 1.0);
  CHECK(p_f.margin == 0.0);

  CHECK_THROWS_AS(check_r_membership(make_series(2, {}), cp), DomainError);
}

TEST_CASE("coefficient bound examples") {
  const auto cp = canonical_params();
  CHECK(coeff_bound_r(2, cp) == 0.25);
  CHECK(coeff_bound_r(3, cp) == doctest::Approx(1.0 / 18.0).epsilon(1e-15));
  CHECK(coeff_bound_r(4, cp) < coeff_bound_r(3, cp));
  CHECK(coeff_bound_r(3, cp) < coeff_bound_r(2, cp));
  CHECK(extremal_r(2, cp) == make_series(1, {{2, 0.25}}));
  CHECK(coeff_bound_p(2, cp) == 0.125);
  CHECK(tail_budget(cp) == 0.25);

  ClassParams p3;
  p3.p = 3;
  p3.alpha = 1.2;
  p3.A = 0.7;
  p3.B = -0.4;
  p3.mu = 0.3;
  p3.delta = 0.6;
  CHECK(rel_err(coeff_bound_p(4, p3), coeff_bound_r(4, p3) * 3.0 / 4.0) <= 1e-15);

  ClassParams near_p = cp;
  near_p.alpha = 1.0 - 1e-9;
  CHECK(coeff_bound_r(2, near_p) < 1e-9);
}

TEST_CASE("extremals saturate their criteria") {
  auto rng = testing::make_rng(32);
  for (int i = 0; i < 200; ++i) {
    const auto cp = random_class_params(rng, {4, 0.99, 0.0});
    const int k = std::uniform_int_distribution<int>(cp.p + 1, cp.p + 10)(rng);
    const auto r = check_r_membership(extremal_r(k, cp), cp);
    CHECK(r.member);
    CHECK(std::abs(r.margin) <= 1e-15);
    const auto p = check_p_membership(extremal_p(k, cp), cp);
    CHECK(p.member);
    CHECK(std::abs(p.margin) <= 1e-15);
  }
}

TEST_CASE("scaling the extremal coefficient past the bound flips membership") {
  auto rng = testing::make_rng(33);
  for (int i = 0; i < 300; ++i) {
    const auto cp = random_class_params(rng, {4, 0.99, 0.0});
    const int k = std::uniform_int_distribution<int>(cp.p + 1, cp.p + 10)(rng);
    const double bound = coeff_bound_r(k, cp);
    CHECK_FALSE(check_r_membership(make_series(cp.p, {{k, bound * (1.0 + 1e-9)}}), cp).member);
    CHECK(check_r_membership(make_series(cp.p, {{k, bound * (1.0 - 1e-9)}}), cp).member);
  }
}

TEST_CASE("criterion sum scales linearly with the coefficients") {
  auto rng = testing::make_rng(34);
  for (int i = 0; i < 200; ++i) {
    const auto cp = random_class_params(rng);
    const auto f = random_member(rng, cp, 6, 10);
    const double t = testing::uniform(rng, 0.0, 1.0);
    const auto scaled = map_coefficients(f, [&](int, double a) { return t * a; });
    CHECK(rel_err(check_r_membership(scaled, cp).sum, t * check_r_membership(f, cp).sum) <= 1e-14);
  }
}

TEST_CASE("P-class criterion is the R-class criterion of z f'/p") {
  auto rng = testing::make_rng(35);
  for (int i = 0; i < 100; ++i) {
    const auto cp = random_class_params(rng);
    const auto f = random_member(rng, cp, testing::uniform(rng, 0.01, 1.5), 6, 10);
    const auto a = check_p_membership(f, cp);
    const auto b = check_r_membership(zfprime_over_p(f), cp);
    CHECK(a.member == b.member);
    CHECK(rel_err(a.sum, b.sum) <= 1e-14);
    REQUIRE(a.per_term.size() == b.per_term.size());
    for (std::size_t j = 0; j < a.per_term.size(); ++j) {
      CHECK(a.per_term[j].first == b.per_term[j].first);
      CHECK(rel_err(a.per_term[j].second, b.per_term[j].second) <= 1e-14);
    }
  }
}

TEST_CASE("random members have the requested criterion sum") {
  auto rng = testing::make_rng(36);
  for (int i = 0; i < 200; ++i) {
    const auto cp = random_class_params(rng);
    const double target = testing::uniform(rng, 0.0, 1.0);
    CHECK(rel_err(check_r_membership(random_member(rng, cp, target), cp).sum, target) <= 1e-14);
  }
}

TEST_CASE("compensated summation recovers cancelled low-order bits") {
  CompensatedSum s;
  s += 1.0;
  for (int i = 0; i < 1000; ++i) s += 1e-17;
  CHECK(s.value() == doctest::Approx(1.0 + 1e-14).epsilon(1e-16));
  double naive = 1.0;
  for (int i = 0; i < 1000; ++i) naive += 1e-17;
  CHECK(naive == 1.0);
}

TEST_CASE("class parameter validation") {
  ClassParams cp;
  cp.alpha = 1.0;
  CHECK_THROWS_AS(cp.validate(), DomainError);
  cp = ClassParams{};
  cp.A = cp.B;
  CHECK_THROWS_AS(cp.validate(), DomainError);
  cp = ClassParams{};
  cp.B = -1.1;
  CHECK_THROWS_AS(cp.validate(), DomainError);
  cp = ClassParams{};
  cp.mu = 1.0;
  CHECK_THROWS_AS(cp.validate(), DomainError);
  cp = ClassParams{};
  cp.p = 0;
  CHECK_THROWS_AS(cp.validate(), DomainError);
}
