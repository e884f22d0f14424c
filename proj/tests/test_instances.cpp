#include <catch2/catch_amalgamated.hpp>

#include "matopt/instances.hpp"

#include <array>
#include <random>
#include <vector>

#include "matopt/brute.hpp"
#include "matopt/matroid.hpp"
#include "matopt/rational.hpp"

using namespace matopt;

namespace {

GraphDescription k4() {
  GraphDescription g;
  g.vertex_count = 4;
  std::size_t id = 0;
  for (std::size_t u = 0; u < 4; ++u) {
    for (std::size_t v = u + 1; v < 4; ++v) {
      g.edges.push_back({"e" + std::to_string(id++), u, v});
    }
  }
  return g;
}

// Counts the simple cycles of a graph directly: a nonempty edge subset is a
// simple cycle iff every touched vertex has degree exactly 2 and the touched
// vertices are connected. Independent of the matroid code.
std::size_t count_simple_cycles(const GraphDescription& g) {
  const std::size_t m = g.edges.size();
  std::size_t cycles = 0;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> degree(g.vertex_count, 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (1u << i)) {
        degree[g.edges[i].tail] += 1;
        degree[g.edges[i].head] += 1;
      }
    }
    bool all_two = true;
    std::size_t touched = 0;
    for (int d : degree) {
      if (d != 0 && d != 2) all_two = false;
      if (d != 0) touched += 1;
    }
    if (!all_two || touched == 0) continue;

    // Connectivity over touched vertices, via edge-based flood fill.
    std::vector<char> seen(g.vertex_count, 0);
    std::vector<std::size_t> stack;
    for (std::size_t v = 0; v < g.vertex_count; ++v) {
      if (degree[v] != 0) {
        stack.push_back(v);
        seen[v] = 1;
        break;
      }
    }
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t i = 0; i < m; ++i) {
        if (!(mask & (1u << i))) continue;
        const auto& e = g.edges[i];
        std::size_t other = g.vertex_count;
        if (e.tail == v) other = e.head;
        if (e.head == v) other = e.tail;
        if (other != g.vertex_count && !seen[other]) {
          seen[other] = 1;
          stack.push_back(other);
        }
      }
    }
    std::size_t reached = 0;
    for (std::size_t v = 0; v < g.vertex_count; ++v) {
      if (seen[v] && degree[v] != 0) reached += 1;
    }
    if (reached == touched) cycles += 1;
  }
  return cycles;
}

}  // namespace

TEST_CASE("graphic matroid of the complete graph on four vertices") {
  Matroid m = graphic(k4());
  REQUIRE(m.size() == 6);
  REQUIRE(m.rank() == 3);  // spanning trees have |V| - 1 edges

  // The circuits are exactly the simple cycles of the graph; count them
  // independently instead of trusting a remembered number.
  const auto circuits = brute::enumerate_circuits(m);
  REQUIRE(circuits.size() == count_simple_cycles(k4()));
  for (const Circuit& c : circuits) {
    REQUIRE(c.elements.size() >= 3);  // simple graph: no 1- or 2-cycles
    REQUIRE_FALSE(m.is_independent(c.elements));
    for (ElementId e : c.elements) {
      REQUIRE(m.is_independent(without_element(c.elements, e)));
    }
  }

  // Spanning tree count of K4 by Cayley's formula: 4^2 = 16.
  REQUIRE(brute::enumerate_bases(m).size() == 16);
}

TEST_CASE("graphic matroid handles self-loops, parallel edges and bridges") {
  GraphDescription g;
  g.vertex_count = 3;
  g.edges.push_back({"self", 1, 1});
  g.edges.push_back({"p1", 0, 1});
  g.edges.push_back({"p2", 0, 1});
  g.edges.push_back({"bridge", 1, 2});
  Matroid m = graphic(g);

  const auto [loops, coloops] = loops_and_coloops(m);
  REQUIRE(loops == make_elements({0}));
  REQUIRE(coloops == make_elements({3}));
  REQUIRE_FALSE(m.is_independent(make_elements({0})));
  REQUIRE_FALSE(m.is_independent(make_elements({1, 2})));  // parallel pair is a 2-circuit
  REQUIRE(m.is_independent(make_elements({1, 3})));
  REQUIRE(m.rank() == 2);
}

TEST_CASE("graphic matroid of a disconnected graph") {
  GraphDescription g;  // two triangles side by side
  g.vertex_count = 6;
  std::size_t id = 0;
  for (std::size_t base : {std::size_t{0}, std::size_t{3}}) {
    for (std::size_t i = 0; i < 3; ++i) {
      g.edges.push_back({"e" + std::to_string(id++), base + i, base + (i + 1) % 3});
    }
  }
  Matroid m = graphic(g);
  REQUIRE(m.rank() == 4);  // vertices minus components
}

TEST_CASE("path graph edges are all coloops") {
  GraphDescription g;
  g.vertex_count = 3;
  g.edges.push_back({"left", 0, 1});
  g.edges.push_back({"right", 1, 2});
  Matroid m = graphic(g);
  const auto [loops, coloops] = loops_and_coloops(m);
  REQUIRE(loops.empty());
  REQUIRE(coloops == make_elements({0, 1}));
  REQUIRE_THROWS_WITH(assert_loopless(m),
                      Catch::Matchers::ContainsSubstring("coloop 'left'") &&
                          Catch::Matchers::ContainsSubstring("coloop 'right'"));
}

TEST_CASE("fundamental path in a four-cycle is the rest of the cycle") {
  GraphDescription g;
  g.vertex_count = 4;
  for (std::size_t i = 0; i < 4; ++i) {
    g.edges.push_back({"e" + std::to_string(i), i, (i + 1) % 4});
  }
  Matroid m = graphic(g);
  const Basis tree{make_elements({0, 1, 2})};
  REQUIRE(fundamental_path(m, tree, ElementId(3)) == make_elements({0, 1, 2}));
  REQUIRE(fundamental_circuit(m, tree, ElementId(3)).elements == make_elements({0, 1, 2, 3}));
}

TEST_CASE("graphic matroid rejects malformed graphs") {
  GraphDescription bad_endpoint;
  bad_endpoint.vertex_count = 2;
  bad_endpoint.edges.push_back({"e", 0, 5});
  REQUIRE_THROWS_AS(graphic(bad_endpoint), DomainError);

  GraphDescription dup;
  dup.vertex_count = 2;
  dup.edges.push_back({"e", 0, 1});
  dup.edges.push_back({"e", 1, 0});
  REQUIRE_THROWS_AS(graphic(dup), DomainError);
}

TEST_CASE("uniform matroid independence is a size test") {
  Matroid m = uniform(2, {"e1", "e2", "e3", "e4"});
  REQUIRE(m.rank() == 2);
  REQUIRE(m.is_independent(make_elements({1, 3})));
  REQUIRE_FALSE(m.is_independent(make_elements({0, 1, 2})));
  REQUIRE(brute::enumerate_bases(m).size() == 6);
  REQUIRE(brute::enumerate_circuits(m).size() == 4);

  REQUIRE_THROWS_AS(uniform(5, {"a", "b"}), DomainError);
  REQUIRE_THROWS_AS(uniform(1, {"a", "a"}), DomainError);

  // Degenerate ranks exist but fail the loopless gate used by the analyses.
  const auto [l_full, c_full] = loops_and_coloops(uniform(2, {"a", "b"}));
  REQUIRE(c_full == make_elements({0, 1}));
  const auto [l_zero, c_zero] = loops_and_coloops(uniform(0, {"a", "b"}));
  REQUIRE(l_zero == make_elements({0, 1}));
}

TEST_CASE("linear matroid does exact rational rank computations") {
  RationalMatrix a;
  a.column_labels = {"p", "q", "r", "s", "t"};
  a.rows = {
      {Rational(1), Rational(0), Rational(0), Rational(1), Rational(1)},
      {Rational(0), Rational(1), Rational(0), Rational(1), Rational(2)},
      {Rational(0), Rational(0), Rational(1), Rational(0), Rational(1, 2)},
  };
  Matroid m = linear(a);
  REQUIRE(m.rank() == 3);
  REQUIRE(m.is_independent(make_elements({0, 1, 2})));
  REQUIRE_FALSE(m.is_independent(make_elements({0, 1, 3})));  // s = p + q
  REQUIRE_FALSE(m.is_independent(make_elements({0, 1, 2, 4})));
  REQUIRE(m.is_independent(make_elements({1, 2, 4})));

  RationalMatrix ragged;
  ragged.column_labels = {"a", "b"};
  ragged.rows = {{Rational(1), Rational(2)}, {Rational(1)}};
  REQUIRE_THROWS_AS(linear(ragged), DomainError);

  RationalMatrix with_zero;
  with_zero.column_labels = {"u", "z"};
  with_zero.rows = {{Rational(1), Rational(0)}, {Rational(2), Rational(0)}};
  Matroid zero_col = linear(with_zero);
  REQUIRE(loops_and_coloops(zero_col).first == make_elements({1}));
  REQUIRE_THROWS_AS(assert_loopless(zero_col), DomainError);
}

TEST_CASE("linear representation of a graph matches the graphic matroid") {
  // Incidence matrix of K4 (rows = vertices, column e = tail - head) is a
  // rational representation of its cycle matroid.
  const GraphDescription g = k4();
  RationalMatrix a;
  a.rows.assign(g.vertex_count, {});
  for (const auto& e : g.edges) {
    a.column_labels.push_back(e.label);
    for (std::size_t v = 0; v < g.vertex_count; ++v) {
      Rational entry = 0;
      if (v == e.tail) entry = 1;
      if (v == e.head) entry = -1;
      a.rows[v].push_back(entry);
    }
  }
  Matroid from_graph = graphic(g);
  Matroid from_matrix = linear(a);
  for (std::uint32_t mask = 0; mask < (1u << g.edges.size()); ++mask) {
    ElementSet s;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      if (mask & (1u << i)) s.push_back(ElementId(i));
    }
    REQUIRE(from_graph.is_independent(s) == from_matrix.is_independent(s));
  }
}

TEST_CASE("explicit basis families are validated eagerly") {
  ExplicitBases triangle;
  triangle.ground_labels = {"a", "b", "c"};
  triangle.bases = {{"a", "b"}, {"a", "c"}, {"b", "c"}};
  Matroid m = explicit_bases(triangle);
  REQUIRE(m.rank() == 2);
  REQUIRE(m.is_independent(make_elements({0, 2})));
  REQUIRE_FALSE(m.is_independent(make_elements({0, 1, 2})));

  // Listing a basis twice is harmless.
  ExplicitBases repeated = triangle;
  repeated.bases.push_back({"b", "a"});
  REQUIRE(brute::enumerate_bases(explicit_bases(repeated)).size() == 3);

  ExplicitBases broken;
  broken.ground_labels = {"a", "b", "c", "d"};
  broken.bases = {{"a", "b"}, {"c", "d"}};
  REQUIRE_THROWS_WITH(explicit_bases(broken),
                      Catch::Matchers::ContainsSubstring("exchange axiom"));

  ExplicitBases mixed_sizes;
  mixed_sizes.ground_labels = {"a", "b", "c"};
  mixed_sizes.bases = {{"a", "b"}, {"c"}};
  REQUIRE_THROWS_AS(explicit_bases(mixed_sizes), DomainError);

  ExplicitBases unknown;
  unknown.ground_labels = {"a"};
  unknown.bases = {{"z"}};
  REQUIRE_THROWS_AS(explicit_bases(unknown), DomainError);

  ExplicitBases empty;
  empty.ground_labels = {"a"};
  REQUIRE_THROWS_AS(explicit_bases(empty), DomainError);

  // A family whose only basis is empty is a valid rank-0 matroid; every
  // element is then a loop, which the analysis entry points reject.
  ExplicitBases rank0;
  rank0.ground_labels = {"a", "b"};
  rank0.bases = {{}};
  Matroid zero = explicit_bases(rank0);
  REQUIRE(zero.rank() == 0);
  REQUIRE(loops_and_coloops(zero).first == make_elements({0, 1}));
  REQUIRE_THROWS_AS(assert_loopless(zero), DomainError);

  ExplicitBases too_big;
  for (int i = 0; i < 13; ++i) too_big.ground_labels.push_back("g" + std::to_string(i));
  too_big.bases = {{"g0"}};
  REQUIRE_THROWS_AS(explicit_bases(too_big), CapError);
}

TEST_CASE("explicit family equals the uniform matroid it lists") {
  ExplicitBases u13;
  u13.ground_labels = {"x", "y", "z"};
  u13.bases = {{"x"}, {"y"}, {"z"}};
  Matroid from_family = explicit_bases(u13);
  Matroid reference = uniform(1, {"x", "y", "z"});
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    ElementSet s;
    for (std::size_t i = 0; i < 3; ++i) {
      if (mask & (1u << i)) s.push_back(ElementId(i));
    }
    REQUIRE(from_family.is_independent(s) == reference.is_independent(s));
  }
}
