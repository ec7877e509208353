#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pvalent/error.hpp"
#include "pvalent/geometry.hpp"
#include "pvalent/oracle.hpp"
#include "support.hpp"

using namespace pvalent;
using testing::rel_err;

namespace {

// Root of fn(r) = target on (0, hi) by bisection, fn decreasing through the target.
double bisect_down(const std::function<double(double)>& fn, double target, double hi) {
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (fn(mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Radius at which the single-term extremal first loses the property on the
// positive real axis, found by bisection. The defining quantities decrease
// (ctc: increase) monotonically along the axis up to the zero of f'.
double extremal_axis_radius(RadiusKind kind, int k, const ClassParams& cp, double zeta) {
  const auto f0 = extremal_r(k, cp);
  const double a = f0.coeff(k);
  const double p = cp.p;
  // f0'(r) vanishes at r = (p / (k a))^{1/(k-p)}; every crossing lies below it.
  const double hi = std::pow(p / (k * a), 1.0 / (k - p));
  switch (kind) {
    case RadiusKind::Starlike:
      return bisect_down([&](double r) { return starlike_value(f0, Complex{r, 0.0}); }, zeta, hi);
    case RadiusKind::Convex:
      return bisect_down([&](double r) { return convex_value(f0, Complex{r, 0.0}); }, zeta, hi);
    case RadiusKind::CloseToConvex:
      return bisect_down([&](double r) { return -ctc_value(f0, Complex{r, 0.0}); }, -(p - zeta), hi);
  }
  return 0.0;
}

}  // namespace

TEST_CASE("distortion bound examples") {
  const auto cp = canonical_params();
  const auto b = distortion_bounds(cp, 0, 0.5);
  CHECK(b.lower == 0.4375);
  CHECK(b.upper == 0.5625);

  const auto tiny = distortion_bounds(cp, 0, 1e-8);
  CHECK(rel_err(tiny.lower / 1e-8, 1.0) <= 1e-7);
  CHECK(rel_err(tiny.upper / 1e-8, 1.0) <= 1e-7);

  CHECK_THROWS_AS(distortion_bounds(cp, 2, 0.5), DomainError);
  CHECK_THROWS_AS(distortion_bounds(cp, 0, 1.0), DomainError);
}

TEST_CASE("the extremal attains the lower distortion bound on the positive axis") {
  auto rng = testing::make_rng(41);
  for (int i = 0; i < 200; ++i) {
    const auto cp = random_class_params(rng);
    const int m = std::uniform_int_distribution<int>(0, cp.p)(rng);
    const double r = testing::uniform(rng, 0.01, 0.99);
    const double value = evaluate(derivative_m(extremal_r(cp.p + 1, cp), m), Complex{r, 0.0}).real();
    CHECK(std::abs(value - distortion_bounds(cp, m, r).lower) <= 1e-10);
  }
}

TEST_CASE("distortion bounds hold for members when the first tail term dominates") {
  auto rng = testing::make_rng(42);
  int tested = 0;
  while (tested < 1000) {
    const auto cp = random_class_params(rng);
    const int m = std::uniform_int_distribution<int>(0, 1)(rng);
    if (!distortion_certified(cp, m)) continue;
    ++tested;
    const auto f = random_member(rng, cp);
    const Complex z = std::polar(testing::uniform(rng, 0.01, 0.99), testing::uniform(rng, 0.0, 6.3));
    const auto b = distortion_bounds(cp, m, std::abs(z));
    const double value = std::abs(evaluate(derivative_m(f, m), z));
    CHECK(value >= b.lower - 1e-12 * b.upper);
    CHECK(value <= b.upper * (1.0 + 1e-12));
  }
}

TEST_CASE("distortion bounds fail where a later tail term dominates") {
  // mu = 0.9, delta = 0: term_3 = 0.06 < term_2 = 0.2, so the k = 3 extremal
  // carries more tail mass than the budget T = 5 allows for.
  ClassParams cp;
  cp.mu = 0.9;
  cp.delta = 0.0;
  CHECK_FALSE(distortion_certified(cp, 0));
  const auto f = extremal_r(3, cp);
  CHECK(check_r_membership(f, cp).member);
  const double r = 0.9;
  CHECK(std::abs(evaluate(f, Complex{r, 0.0})) > distortion_bounds(cp, 0, r).upper);
  CHECK(distortion_certified(canonical_params(), 0));
  CHECK(distortion_certified(canonical_params(), 1));
}

TEST_CASE("distortion curve is evenly spaced and carries the certificate") {
  const auto curve = distortion_curve(canonical_params(), 1, 0.1, 0.9, 5);
  REQUIRE(curve.samples.size() == 5);
  CHECK(curve.samples.front().r == 0.1);
  CHECK(curve.samples.back().r == 0.9);
  CHECK(curve.certified);
  for (const auto& s : curve.samples) CHECK(s.lower <= s.upper);
}

TEST_CASE("canonical starlikeness radius") {
  const auto rep = radius_starlike(canonical_params(), 0.0, 50);
  REQUIRE(rep.candidates.size() == 49);
  CHECK(rep.candidates[0].first == 2);
  CHECK(rep.candidates[0].second == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(rep.candidates[1].second == doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));
  CHECK(rep.argmin_k == 2);
  CHECK(rep.radius == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(rep.whole_disk());
  CHECK(rep.monotone_tail);
  CHECK_FALSE(rep.warning);
  for (std::size_t i = 1; i < rep.candidates.size(); ++i)
    CHECK(rep.candidates[i].second > rep.candidates[i - 1].second);
}

TEST_CASE("candidates vanish as zeta approaches p") {
  const auto cp = canonical_params();
  for (auto kind : {RadiusKind::Starlike, RadiusKind::Convex, RadiusKind::CloseToConvex}) {
    const auto near = radius(kind, cp, 1.0 - 1e-12, 20);
    const auto far = radius(kind, cp, 1.0 - 1e-3, 20);
    CHECK(near.candidates.front().second < 1e-5);
    for (std::size_t j = 0; j < near.candidates.size(); ++j)
      CHECK(near.candidates[j].second < far.candidates[j].second);
  }
}

TEST_CASE("candidates match bisection on the extremal functions") {
  auto rng = testing::make_rng(43);
  for (int i = 0; i < 60; ++i) {
    const auto cp = random_class_params(rng);
    const double zeta = testing::uniform(rng, 0.0, cp.p);
    for (auto kind : {RadiusKind::Starlike, RadiusKind::Convex, RadiusKind::CloseToConvex})
      for (int k = cp.p + 1; k <= cp.p + 4; ++k) {
        const double expected = radius_candidate(kind, k, cp, zeta);
        const double found = extremal_axis_radius(kind, k, cp, zeta);
        CHECK(rel_err(found, expected) <= 1e-9);
      }
  }
}

TEST_CASE("starlikeness radius agrees with the oracle on the extremal") {
  auto rng = testing::make_rng(44);
  int found = 0;
  while (found < 30) {
    const auto cp = random_class_params(rng);
    const double zeta = testing::uniform(rng, 0.0, cp.p);
    const auto rep = radius_starlike(cp, zeta);
    if (!(rep.radius < 0.999) || rep.warning) continue;
    ++found;
    const auto f0 = extremal_r(rep.argmin_k, cp);
    const auto inside = starlike_min_re(f0, zeta, rep.radius * (1.0 - 1e-6), 256);
    CHECK(inside.pass);
    CHECK(std::abs(starlike_value(f0, Complex{rep.radius, 0.0}) - zeta) <= 1e-6);
  }
}

TEST_CASE("radius ordering and monotonicity in alpha") {
  auto rng = testing::make_rng(45);
  for (int i = 0; i < 200; ++i) {
    const auto cp = random_class_params(rng);
    const double zeta = testing::uniform(rng, 0.0, cp.p);
    const auto star = radius_starlike(cp, zeta);
    const auto convex = radius_convex(cp, zeta);
    CHECK(convex.radius <= star.radius);
    for (std::size_t j = 0; j < star.candidates.size(); ++j)
      CHECK(convex.candidates[j].second <= star.candidates[j].second);

    const auto larger = cp.with_alpha(cp.alpha + testing::uniform(rng, 0.0, cp.p - cp.alpha));
    for (auto kind : {RadiusKind::Starlike, RadiusKind::Convex, RadiusKind::CloseToConvex})
      CHECK(radius(kind, larger, zeta).radius >= radius(kind, cp, zeta).radius * (1.0 - 1e-14));
  }
}

TEST_CASE("a truncated search that ends on its minimum is flagged") {
  const auto cut = radius_starlike(canonical_params(), 0.0, 2);
  CHECK(cut.argmin_k == 2);
  CHECK(cut.warning);
  const auto full = radius_starlike(canonical_params(), 0.0);
  CHECK_FALSE(full.warning);
  CHECK(full.monotone_tail);
}

TEST_CASE("radius kinds parse from their names") {
  CHECK(radius_kind_from_string("starlike") == RadiusKind::Starlike);
  CHECK(radius_kind_from_string("convex") == RadiusKind::Convex);
  CHECK(radius_kind_from_string("ctc") == RadiusKind::CloseToConvex);
  CHECK_THROWS_AS(radius_kind_from_string("round"), DomainError);
}
