#include <catch2/catch_amalgamated.hpp>

#include "matopt/tropical.hpp"

#include <random>

#include "matopt/brute.hpp"
#include "matopt/instances.hpp"
#include "matopt/matroid.hpp"
#include "matopt/rational.hpp"
#include "matopt/weighting.hpp"
#include "support/random_instances.hpp"

using namespace matopt;

namespace {

Matroid triangle() {
  GraphDescription g;
  g.vertex_count = 3;
  g.edges = {{"a", 0, 1}, {"b", 1, 2}, {"c", 0, 2}};
  return graphic(g);
}

Weighting weights123() {
  Weighting x;
  x.set(ElementId(0), 1);
  x.set(ElementId(1), 2);
  x.set(ElementId(2), 3);
  return x;
}

Matroid u24() { return uniform(2, {"e1", "e2", "e3", "e4"}); }

Weighting weights1234() {
  Weighting x;
  for (std::uint32_t i = 0; i < 4; ++i) x.set(ElementId(i), i + 1);
  return x;
}

}  // namespace

TEST_CASE("greedy minimum basis on the worked examples") {
  const OptResult t = min_weight_basis(triangle(), weights123());
  REQUIRE(t.value == Rational(3));
  REQUIRE(t.basis.elements == make_elements({0, 1}));

  const OptResult u = min_weight_basis(u24(), weights1234());
  REQUIRE(u.value == Rational(3));
  REQUIRE(u.basis.elements == make_elements({0, 1}));
}

TEST_CASE("greedy breaks weight ties by element id") {
  Matroid m = triangle();
  Weighting flat;
  for (ElementId e : m.ground()) flat.set(e, 5);
  REQUIRE(min_weight_basis(m, flat).basis.elements == make_elements({0, 1}));

  Weighting mixed;  // b lighter than a and c
  mixed.set(ElementId(0), 2);
  mixed.set(ElementId(1), 1);
  mixed.set(ElementId(2), 2);
  REQUIRE(min_weight_basis(m, mixed).basis.elements == make_elements({0, 1}));
}

TEST_CASE("preconditions of the optimization entry points") {
  Matroid m = triangle();
  Weighting partial;
  partial.set(ElementId(0), 1);
  REQUIRE_THROWS_AS(min_weight_basis(m, partial), DomainError);
  REQUIRE_THROWS_AS(minmax_weight(m, weights123(), ElementId(9)), DomainError);

  GraphDescription with_bridge;
  with_bridge.vertex_count = 4;
  with_bridge.edges = {{"a", 0, 1}, {"b", 1, 2}, {"c", 0, 2}, {"d", 2, 3}};
  Weighting x;
  for (std::uint32_t i = 0; i < 4; ++i) x.set(ElementId(i), 1);
  REQUIRE_THROWS_WITH(min_weight_basis(graphic(with_bridge), x),
                      Catch::Matchers::ContainsSubstring("coloop 'd'"));
}

TEST_CASE("min-max circuit weights on the worked examples") {
  Matroid t = triangle();
  const Weighting xt = weights123();
  REQUIRE(minmax_weight(t, xt, ElementId(0)) == Rational(3));
  REQUIRE(minmax_weight(t, xt, ElementId(1)) == Rational(3));
  REQUIRE(minmax_weight(t, xt, ElementId(2)) == Rational(2));

  Matroid u = u24();
  const Weighting xu = weights1234();
  REQUIRE(minmax_weight(u, xu, ElementId(0)) == Rational(3));
  REQUIRE(minmax_weight(u, xu, ElementId(1)) == Rational(3));
  REQUIRE(minmax_weight(u, xu, ElementId(2)) == Rational(2));
  REQUIRE(minmax_weight(u, xu, ElementId(3)) == Rational(2));
}

TEST_CASE("bottleneck, tolerance and the element analysis bundle") {
  Matroid t = triangle();
  const Weighting x = weights123();

  REQUIRE(bottleneck_weight(t, x, ElementId(0)) == Rational(1));
  REQUIRE(bottleneck_weight(t, x, ElementId(1)) == Rational(2));
  REQUIRE(bottleneck_weight(t, x, ElementId(2)) == Rational(2));

  const ElementAnalysis a = element_analysis(t, x, ElementId(0));
  REQUIRE(a.minmax == Rational(3));
  REQUIRE(a.bottleneck == Rational(1));
  REQUIRE(a.tolerance == Rational(2));
  const ElementAnalysis c = element_analysis(t, x, ElementId(2));
  REQUIRE(c.minmax == Rational(2));
  REQUIRE(c.bottleneck == Rational(2));
  REQUIRE(c.tolerance == Rational(1));
}

TEST_CASE("greedy agrees with exhaustive search on random instances") {
  std::mt19937 rng(101);
  for (int round = 0; round < 200; ++round) {
    Matroid m = testsupport::random_matroid(rng);
    const Weighting x = testsupport::random_weights(rng, m, round % 2 == 0);
    const OptResult fast = min_weight_basis(m, x);
    const OptResult slow = brute::brute_optimum(m, x);
    REQUIRE(fast.value == slow.value);
    REQUIRE(is_basis(m, fast.basis.elements));
    REQUIRE(x.total(fast.basis.elements) == fast.value);
  }
}

TEST_CASE("min-max weights agree with circuit enumeration on random instances") {
  std::mt19937 rng(202);
  for (int round = 0; round < 60; ++round) {
    Matroid m = testsupport::random_matroid(rng);
    if (m.size() > 10) continue;
    const Weighting x = testsupport::random_weights(rng, m, round % 2 == 0);
    for (ElementId e : m.ground()) {
      REQUIRE(minmax_weight(m, x, e) == brute::brute_minmax(m, x, e));
    }
  }
}

TEST_CASE("next-best bases with a forced or forbidden element") {
  Matroid t = triangle();
  const Weighting x = weights123();

  const OptResult avoid_a = next_best_avoiding(t, x, ElementId(0));
  REQUIRE(avoid_a.basis.elements == make_elements({1, 2}));
  REQUIRE(avoid_a.value == Rational(5));

  const OptResult contain_c = next_best_containing(t, x, ElementId(2));
  REQUIRE(contain_c.basis.elements == make_elements({0, 2}));
  REQUIRE(contain_c.value == Rational(4));

  // When the optimum already satisfies the constraint it is returned as is.
  REQUIRE(next_best_avoiding(t, x, ElementId(2)) == min_weight_basis(t, x));
  REQUIRE(next_best_containing(t, x, ElementId(0)) == min_weight_basis(t, x));

  Matroid u = u24();
  const Weighting xu = weights1234();
  const OptResult avoid_e1 = next_best_avoiding(u, xu, ElementId(0));
  REQUIRE(avoid_e1.basis.elements == make_elements({1, 2}));
  REQUIRE(avoid_e1.value == Rational(5));
  const OptResult contain_e4 = next_best_containing(u, xu, ElementId(3));
  REQUIRE(contain_e4.basis.elements == make_elements({0, 3}));
  REQUIRE(contain_e4.value == Rational(5));
}

TEST_CASE("next-best values agree with exhaustive search on random instances") {
  std::mt19937 rng(303);
  for (int round = 0; round < 60; ++round) {
    Matroid m = testsupport::random_matroid(rng);
    if (m.size() > 10) continue;
    const Weighting x = testsupport::random_weights(rng, m, round % 2 == 0);
    for (ElementId e : m.ground()) {
      const OptResult avoid = next_best_avoiding(m, x, e);
      REQUIRE_FALSE(contains(avoid.basis.elements, e));
      REQUIRE(is_basis(m, avoid.basis.elements));
      REQUIRE(x.total(avoid.basis.elements) == avoid.value);
      REQUIRE(avoid.value ==
              brute::brute_next_best(m, x, e, brute::BasisFilter::kAvoiding).value);

      const OptResult contain = next_best_containing(m, x, e);
      REQUIRE(contains(contain.basis.elements, e));
      REQUIRE(is_basis(m, contain.basis.elements));
      REQUIRE(x.total(contain.basis.elements) == contain.value);
      REQUIRE(contain.value ==
              brute::brute_next_best(m, x, e, brute::BasisFilter::kContaining).value);
    }
  }
}

TEST_CASE("the min-max route never enumerates many subsets") {
  // One greedy solve plus the prefix or cut probes: the query count stays
  // quadratic in the ground size, far below the exponential enumeration.
  Matroid m = u24();
  const Weighting x = weights1234();
  const std::uint64_t before = m.oracle_calls();
  (void)minmax_weight(m, x, ElementId(3));
  const std::uint64_t used = m.oracle_calls() - before;
  REQUIRE(used <= m.size() * m.size() + 4 * m.size());
}
