#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "counting.hpp"
#include "errors.hpp"
#include "families.hpp"
#include "search.hpp"

using namespace affina;

TEST_CASE("compatibility graph of planes in AG(3,2)") {
  FieldSpec f(2);
  CompatibilityGraph g(f, 3, 2);
  REQUIRE(g.vertex_count() == 14);
  CHECK(g.q() == 2);
  CHECK(g.ambient_dim() == 3);
  CHECK(g.k() == 2);

  // Adjacency agrees with the pairwise predicate, is symmetric, and has no
  // self-loops.  Every plane is incompatible only with its parallel mate.
  for (std::uint32_t i = 0; i < g.vertex_count(); ++i) {
    CHECK(!g.adjacent(i, i));
    CHECK(g.degree(i) == 12);
    for (std::uint32_t j = 0; j < g.vertex_count(); ++j) {
      if (i == j) continue;
      CHECK(g.adjacent(i, j) == flats_intersecting(g.flats()[i], g.flats()[j]));
      CHECK(g.adjacent(i, j) == g.adjacent(j, i));
    }
  }

  // Deterministic vertex order.
  CompatibilityGraph g2(f, 3, 2);
  CHECK(g.flats() == g2.flats());
}

TEST_CASE("maximum family of planes in AG(3,2) is 7, with or without tau >= 2") {
  FieldSpec f(2);
  CompatibilityGraph g(f, 3, 2);

  SearchOutcome plain = max_family(g);
  CHECK(plain.optimal);
  CHECK(plain.best.size() == 7);
  CHECK(is_intersecting(plain.best));
  CHECK(plain.nodes > 0);

  SearchOutcome constrained = max_family(g, 2);
  CHECK(constrained.optimal);
  CHECK(constrained.best.size() == 7);
  CHECK(is_intersecting(constrained.best));
  TauResult tau = covering_number(constrained.best);
  REQUIRE(tau.status == TauResult::Status::Exact);
  CHECK(tau.value >= 2);
}

TEST_CASE("hyperplanes of AG(4,2): one per parallel class, even demanding tau >= 2") {
  FieldSpec f(2);
  CompatibilityGraph g(f, 4, 3);
  REQUIRE(g.vertex_count() == 30);
  // Each hyperplane meets all but its parallel mate in a 2-flat.
  for (std::uint32_t i = 0; i < g.vertex_count(); ++i) CHECK(g.degree(i) == 28);

  SearchOutcome plain = max_family(g);
  CHECK(plain.optimal);
  CHECK(plain.best.size() == 15);

  // The 15 hyperplanes through the origin share only a point, so a family of
  // this size exists even under the tau >= 2 constraint.
  SearchOutcome constrained = max_family(g, 2);
  CHECK(constrained.optimal);
  CHECK(constrained.best.size() == 15);
  TauResult tau = covering_number(constrained.best);
  REQUIRE(tau.status == TauResult::Status::Exact);
  CHECK(tau.value >= 2);
}

TEST_CASE("distinct lines never share a line: searches collapse") {
  FieldSpec f(2);
  CompatibilityGraph g(f, 2, 1);
  REQUIRE(g.vertex_count() == 6);
  for (std::uint32_t i = 0; i < g.vertex_count(); ++i) CHECK(g.degree(i) == 0);

  SearchOutcome plain = max_family(g);
  CHECK(plain.optimal);
  CHECK(plain.best.size() == 1);

  // A single line has covering number 1, so no non-empty family passes.
  SearchOutcome constrained = max_family(g, 2);
  CHECK(constrained.optimal);
  CHECK(constrained.best.size() == 0);
}

TEST_CASE("vertex cap and node budget guards") {
  FieldSpec f(2);
  CHECK_THROWS_AS(CompatibilityGraph(f, 4, 1, 100), ScaleError);  // 120 lines

  CompatibilityGraph g(f, 3, 2);
  SearchOutcome starved = max_family(g, std::nullopt, 1);
  CHECK(!starved.optimal);
  CHECK(starved.best.size() <= 7);
  CHECK(is_intersecting(starved.best));
  CHECK(starved.nodes >= 1);
}
