#include <catch2/catch_amalgamated.hpp>

#include "gog/decision.hpp"
#include "gog/fixtures.hpp"
#include "gog/format.hpp"
#include "gog/presentation.hpp"
#include "gog/tree.hpp"

TEST_CASE("headers compile and fixtures parse") {
  for (const auto& f : gog::fixtures()) {
    gog::GraphOfGroups g = gog::parse(f.document);
    REQUIRE(gog::validate(g).ok());
  }
}

TEST_CASE("dinf tower smoke") {
  gog::GraphOfGroups g = gog::parse(gog::fixture_by_name("dinf")->document);
  gog::TowerOptions topts;
  topts.max_order = 8;
  gog::Tower t = gog::build_tower(g, topts);
  REQUIRE(t.size() >= 3);
  for (int i = 0; i < t.size(); ++i) {
    REQUIRE(gog::validate(t.stages[i].stage).ok());
    REQUIRE(gog::morphism_valid(g, t.stages[i].stage, t.stages[i].projection));
  }
}

TEST_CASE("conjugacy smoke") {
  gog::GraphOfGroups g = gog::parse(gog::fixture_by_name("dinf")->document);
  auto h1 = gog::classify_subgroup(g, {gog::parse_word(g, "v1.a")});
  auto h2 = gog::classify_subgroup(g, {gog::based_word(g, gog::parse_word(g, "v2.b"))});
  auto v = gog::decide_conjugacy(g, h1, h2);
  REQUIRE(v.kind == gog::ConjugacyVerdict::Kind::NotConjugate);
  REQUIRE(v.certificate->target_name == "C2xC2");
}
