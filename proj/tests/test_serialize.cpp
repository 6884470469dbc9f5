#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <string>

#include "errors.hpp"
#include "families.hpp"
#include "search.hpp"
#include "serialize.hpp"

using namespace affina;
using json = nlohmann::json;

namespace {

Flat axis_flat(const FieldSpec& f, std::uint32_t n, std::uint32_t lo, std::uint32_t dim,
               Vec point) {
  std::vector<Vec> rows;
  for (std::uint32_t i = 0; i < dim; ++i) {
    Vec row(n, 0);
    row[lo + i] = 1;
    rows.push_back(row);
  }
  return Flat::through(Subspace(f, n, rows), point);
}

FlatFamily reference_family() {
  FieldSpec f(2);
  Flat E = axis_flat(f, 7, 3, 1, Vec(7, 0));
  Flat U = axis_flat(f, 7, 0, 3, Vec(7, 0));
  return hm_family(E, U);
}

std::string expect_parse_error(const std::string& text) {
  try {
    family_from_json(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  FAIL("expected ParseError");
  return {};
}

}  // namespace

TEST_CASE("family JSON round-trips byte-for-byte") {
  FlatFamily fam = reference_family();
  std::string text = family_to_json(fam);
  FlatFamily back = family_from_json(text);
  CHECK(back == fam);
  CHECK(family_to_json(back) == text);

  // Compact form round-trips too.
  std::string compact = family_to_json(fam, -1);
  CHECK(compact.find('\n') == std::string::npos);
  CHECK(family_from_json(compact) == fam);

  FieldSpec f(3);
  FlatFamily empty(f, 4, 2);
  CHECK(family_from_json(family_to_json(empty)) == empty);
}

TEST_CASE("family JSON document shape is as documented") {
  FieldSpec f(2);
  FlatFamily fam(f, 3, 2);
  fam.add(Flat::through(Subspace(f, 3, {{1, 0, 0}, {0, 1, 0}}), {0, 0, 1}));
  json doc = json::parse(family_to_json(fam));
  CHECK(doc["q"] == 2);
  CHECK(doc["n"] == 3);
  CHECK(doc["k"] == 2);
  REQUIRE(doc["flats"].size() == 1);
  CHECK(doc["flats"][0]["basis"] == json::parse("[[1,0,0],[0,1,0]]"));
  CHECK(doc["flats"][0]["point"] == json::parse("[0,0,1]"));
}

TEST_CASE("loader accepts a hand-written canonical document") {
  std::string text = R"({
    "q": 2, "n": 3, "k": 2,
    "flats": [
      {"basis": [[1,0,0],[0,1,0]], "point": [0,0,0]},
      {"basis": [[1,0,0],[0,1,0]], "point": [0,0,1]},
      {"basis": [[1,0,0],[0,0,1]], "point": [0,1,0]}
    ]
  })";
  FlatFamily fam = family_from_json(text);
  CHECK(fam.size() == 3);
  CHECK(fam.q() == 2);
  CHECK(fam.ambient_dim() == 3);
  CHECK(fam.k() == 2);
}

TEST_CASE("loader rejects malformed or non-canonical documents") {
  CHECK_THROWS_AS(family_from_json("not json {"), ParseError);
  CHECK_THROWS_AS(family_from_json("[]"), ParseError);
  CHECK_THROWS_AS(family_from_json(R"({"q":2,"n":3})"), ParseError);
  CHECK_THROWS_AS(family_from_json(R"({"q":2,"n":3,"k":2,"flats":7})"), ParseError);
  // q must be prime.
  CHECK_THROWS_AS(family_from_json(R"({"q":4,"n":3,"k":2,"flats":[]})"), ParseError);
  CHECK_THROWS_AS(family_from_json(R"({"q":1,"n":3,"k":2,"flats":[]})"), ParseError);
  // k must fit inside n.
  CHECK_THROWS_AS(family_from_json(R"({"q":2,"n":2,"k":3,"flats":[]})"), ParseError);
  // Negative or fractional parameters.
  CHECK_THROWS_AS(family_from_json(R"({"q":2,"n":-3,"k":2,"flats":[]})"), ParseError);
  CHECK_THROWS_AS(family_from_json(R"({"q":2,"n":3.5,"k":2,"flats":[]})"), ParseError);

  auto doc = [](const std::string& flat) {
    return R"({"q":2,"n":3,"k":2,"flats":[)" + flat + "]}";
  };
  // Not an object / missing keys.
  CHECK_THROWS_AS(family_from_json(doc("[1,2]")), ParseError);
  CHECK_THROWS_AS(family_from_json(doc(R"({"basis":[[1,0,0],[0,1,0]]})")), ParseError);
  // Wrong row length.
  CHECK_THROWS_AS(family_from_json(doc(R"({"basis":[[1,0],[0,1,0]],"point":[0,0,0]})")),
                  ParseError);
  // Entry out of the coefficient range.
  CHECK_THROWS_AS(family_from_json(doc(R"({"basis":[[1,0,2],[0,1,0]],"point":[0,0,0]})")),
                  ParseError);
  CHECK_THROWS_AS(family_from_json(doc(R"({"basis":[[1,0,0],[0,1,0]],"point":[0,0,-1]})")),
                  ParseError);
  CHECK_THROWS_AS(family_from_json(doc(R"({"basis":[[1,0,0],[0,1,"x"]],"point":[0,0,0]})")),
                  ParseError);
  // Dependent rows.
  CHECK_THROWS_AS(family_from_json(doc(R"({"basis":[[1,0,0],[1,0,0]],"point":[0,0,0]})")),
                  ParseError);
  // Independent but not reduced row echelon form (rows out of order).
  CHECK_THROWS_AS(family_from_json(doc(R"({"basis":[[0,1,0],[1,0,0]],"point":[0,0,0]})")),
                  ParseError);
  // Rank != k.
  CHECK_THROWS_AS(family_from_json(doc(R"({"basis":[[1,0,0]],"point":[0,0,0]})")), ParseError);
  // Point not the canonical representative (nonzero at a pivot column).
  CHECK_THROWS_AS(family_from_json(doc(R"({"basis":[[1,0,0],[0,1,0]],"point":[1,0,0]})")),
                  ParseError);
  // Duplicates.
  CHECK_THROWS_AS(
      family_from_json(doc(R"({"basis":[[1,0,0],[0,1,0]],"point":[0,0,0]},
                              {"basis":[[1,0,0],[0,1,0]],"point":[0,0,0]})")),
      ParseError);

  // Diagnostics carry the offending flat's index.
  std::string msg = expect_parse_error(
      R"({"q":2,"n":3,"k":2,"flats":[
          {"basis":[[1,0,0],[0,1,0]],"point":[0,0,0]},
          {"basis":[[0,1,0],[1,0,0]],"point":[0,0,0]}]})");
  CHECK(msg.find("flat #1") != std::string::npos);
}

TEST_CASE("stats JSON carries the size, predicate, bounds, and tau block") {
  FlatFamily fam = reference_family();
  FamilyStats st = family_stats(fam);
  json doc = json::parse(family_stats_to_json(st));
  CHECK(doc["size"] == 211);
  CHECK(doc["intersecting"] == true);
  CHECK(doc["pencil_bound"] == "651");
  CHECK(doc["le_pencil_bound"] == true);
  CHECK(doc["hm_bound"] == "211");
  CHECK(doc["le_hm_bound"] == true);
  REQUIRE(doc.contains("tau"));
  CHECK(doc["tau"]["exact"] == true);
  CHECK(doc["tau"]["value"] == 2);
  REQUIRE(doc["tau"].contains("witness"));
  // The witness is itself a canonical flat document fragment.
  CHECK(doc["tau"]["witness"].contains("basis"));
  CHECK(doc["tau"]["witness"].contains("point"));

  // A starved tau search reports a lower bound instead.
  FamilyStats starved = family_stats(fam, 1);
  json sdoc = json::parse(family_stats_to_json(starved));
  CHECK(sdoc["tau"]["exact"] == false);
  CHECK(sdoc["tau"].contains("lower_bound"));
  CHECK(!sdoc["tau"].contains("witness"));

  // Empty family: no tau block.
  FieldSpec f(2);
  FamilyStats est = family_stats(FlatFamily(f, 3, 2));
  json edoc = json::parse(family_stats_to_json(est));
  CHECK(edoc["size"] == 0);
  CHECK(!edoc.contains("tau"));
}

TEST_CASE("search outcome JSON embeds the winning family") {
  FieldSpec f(2);
  CompatibilityGraph g(f, 3, 2);
  SearchOutcome out = max_family(g, 2);
  json doc = json::parse(search_outcome_to_json(out));
  CHECK(doc["size"] == 7);
  CHECK(doc["optimal"] == true);
  CHECK(doc["nodes"].get<std::uint64_t>() > 0);
  REQUIRE(doc["family"]["flats"].size() == 7);
  CHECK(family_from_json(doc["family"].dump()).size() == 7);
}
