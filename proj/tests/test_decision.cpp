#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "gog/decision.hpp"
#include "gog/errors.hpp"
#include "gog/format.hpp"
#include "support/test_support.hpp"

using namespace gog;
using gogtest::fixture_graph;

namespace {

SubgroupSpec spec_of(const GraphOfGroups& g, const std::string& words) {
  return classify_subgroup(g, parse_word_list(g, words));
}

/* Re-verify a conjugacy witness independently of the search that found it. */
void check_witness(const GraphOfGroups& g, const PathWord& w, const SubgroupSpec& h1,
                   const SubgroupSpec& h2) {
  for (const PathWord& h : h1.generators) {
    PathWord moved = conjugate(g, w, h);
    if (h2.finiteness == SubgroupSpec::Finiteness::Finite) {
      CHECK(std::find(h2.elements.begin(), h2.elements.end(), moved) != h2.elements.end());
    } else {
      REQUIRE(h2.generators.size() == 1);
      const PathWord& k = h2.generators[0];
      CHECK((equal(g, moved, k) || equal(g, moved, invert(g, k))));
    }
  }
}

}  // namespace

TEST_CASE("subgroup classification settles finiteness with evidence") {
  const GraphOfGroups& dinf = fixture_graph("dinf");

  SubgroupSpec a = spec_of(dinf, "v1.a");
  CHECK(a.finiteness == SubgroupSpec::Finiteness::Finite);
  CHECK(a.elements.size() == 2);

  SubgroupSpec ab = spec_of(dinf, "v1.a e v2.b e^-1");
  CHECK(ab.finiteness == SubgroupSpec::Finiteness::Infinite);
  REQUIRE(ab.witness.has_value());
  CHECK_FALSE(order_of(dinf, *ab.witness).has_value());

  /* Two reflections generate the whole infinite group. */
  SubgroupSpec whole = spec_of(dinf, "v1.a ; e v2.b e^-1");
  CHECK(whole.finiteness == SubgroupSpec::Finiteness::Infinite);
  REQUIRE(whole.witness.has_value());
  CHECK_FALSE(order_of(dinf, *whole.witness).has_value());

  /* The embedded p is x squared, so this closes up to one C4. */
  const GraphOfGroups& chain = fixture_graph("c4chain");
  SubgroupSpec c4 = spec_of(chain, "v1.x ; e1 v2.p e1^-1");
  CHECK(c4.finiteness == SubgroupSpec::Finiteness::Finite);
  CHECK(c4.elements.size() == 4);

  /* A tiny closure bound gives up without lying. */
  SubgroupSpec unknown = classify_subgroup(dinf, {parse_word(dinf, "v1.a")}, 1);
  CHECK(unknown.finiteness == SubgroupSpec::Finiteness::Unknown);

  /* Generators are stored in canonical form. */
  SubgroupSpec respelled = spec_of(dinf, "v1.a e e^-1");
  CHECK(respelled.generators[0] == parse_word(dinf, "v1.a"));

  CHECK_THROWS_AS(spec_of(dinf, "e"), TypeError);
}

TEST_CASE("membership is exact on finite subgroups and sound on infinite ones") {
  const GraphOfGroups& dinf = fixture_graph("dinf");
  const GraphOfGroups& chain = fixture_graph("c4chain");

  SubgroupSpec a = spec_of(dinf, "v1.a");
  CHECK(membership_semitest(dinf, parse_word(dinf, "v1.a"), a, 2) == Membership::Yes);
  CHECK(membership_semitest(dinf, parse_word(dinf, "e v2.b e^-1"), a, 2) == Membership::No);

  SubgroupSpec trans = spec_of(dinf, "v1.a e v2.b e^-1");
  PathWord cubed = parse_word(dinf, "v1.a e v2.b e^-1 v1.a e v2.b e^-1 v1.a e v2.b e^-1");
  CHECK(membership_semitest(dinf, cubed, trans, 3) == Membership::Yes);
  CHECK(membership_semitest(dinf, parse_word(dinf, "v1.a"), trans, 3) == Membership::Unknown);

  SubgroupSpec c4 = spec_of(chain, "v1.x");
  CHECK(membership_semitest(chain, parse_word(chain, "e1 v2.p e1^-1"), c4, 1) ==
        Membership::Yes);
  CHECK(membership_semitest(chain, parse_word(chain, "v1.x e1 v2.q e1^-1"), c4, 1) ==
        Membership::No);
}

TEST_CASE("conjugacy decisions across the corpus") {
  const GraphOfGroups& dinf = fixture_graph("dinf");
  const GraphOfGroups& mod = fixture_graph("modular");
  const GraphOfGroups& f2 = fixture_graph("f2");
  const GraphOfGroups& hnn = fixture_graph("hnn_c2");
  const GraphOfGroups& chain = fixture_graph("c4chain");

  SECTION("reflections at the two ends of the segment are not conjugate") {
    ConjugacyVerdict v =
        decide_conjugacy(dinf, spec_of(dinf, "v1.a"), spec_of(dinf, "e v2.b e^-1"));
    CHECK(v.kind == ConjugacyVerdict::Kind::NotConjugate);
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->target_name == "C2xC2");
    CHECK(v.rounds_used == 1);
    CHECK(v.detail.find("not conjugate") != std::string::npos);
  }

  SECTION("a and its translate by b are conjugate with the expected witness") {
    SubgroupSpec h1 = spec_of(dinf, "v1.a");
    SubgroupSpec h2 = spec_of(dinf, "e v2.b e^-1 v1.a e v2.b e^-1");
    ConjugacyVerdict v = decide_conjugacy(dinf, h1, h2);
    CHECK(v.kind == ConjugacyVerdict::Kind::Conjugate);
    REQUIRE(v.witness.has_value());
    CHECK(word_to_string(dinf, *v.witness) == "e v2.b e^-1");
    check_witness(dinf, *v.witness, h1, h2);
  }

  SECTION("a subgroup is conjugate to itself via the identity") {
    SubgroupSpec h = spec_of(dinf, "v1.a");
    ConjugacyVerdict v = decide_conjugacy(dinf, h, h);
    CHECK(v.kind == ConjugacyVerdict::Kind::Conjugate);
    REQUIRE(v.witness.has_value());
    CHECK(is_identity(dinf, *v.witness));
  }

  SECTION("the same translation subgroup spelled two ways") {
    SubgroupSpec h1 = spec_of(dinf, "v1.a e v2.b e^-1 v1.a e v2.b e^-1");
    SubgroupSpec h2 = spec_of(dinf, "e v2.b e^-1 v1.a e v2.b e^-1 v1.a");
    ConjugacyVerdict v = decide_conjugacy(dinf, h1, h2);
    CHECK(v.kind == ConjugacyVerdict::Kind::Conjugate);
    REQUIRE(v.witness.has_value());
    CHECK(is_identity(dinf, *v.witness));
  }

  SECTION("order separates the two elliptic classes of the modular group") {
    ConjugacyVerdict v =
        decide_conjugacy(mod, spec_of(mod, "v1.s"), spec_of(mod, "e v2.r e^-1"));
    CHECK(v.kind == ConjugacyVerdict::Kind::NotConjugate);
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->target_name == "C6");
    CHECK(v.rounds_used == 1);
  }

  SECTION("a class-restricted search can be honestly undecided") {
    ConjugacySchedule sched;
    sched.rounds = 2;
    sched.group_class = "p:2";
    ConjugacyVerdict v =
        decide_conjugacy(mod, spec_of(mod, "v1.s"), spec_of(mod, "e v2.r e^-1"), sched);
    CHECK(v.kind == ConjugacyVerdict::Kind::Undecided);
    CHECK(v.rounds_used == 2);
    CHECK(v.detail.find("exhausted") != std::string::npos);
  }

  SECTION("free generators are separated by the abelianization") {
    ConjugacyVerdict v = decide_conjugacy(f2, spec_of(f2, "x"), spec_of(f2, "y"));
    CHECK(v.kind == ConjugacyVerdict::Kind::NotConjugate);
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->target_name == "C2");
    CHECK(v.rounds_used == 1);
  }

  SECTION("a generator and its inverse span the same line") {
    ConjugacyVerdict v = decide_conjugacy(f2, spec_of(f2, "x"), spec_of(f2, "x^-1"));
    CHECK(v.kind == ConjugacyVerdict::Kind::Conjugate);
    REQUIRE(v.witness.has_value());
    CHECK(is_identity(f2, *v.witness));
  }

  SECTION("cyclically permuted commutator halves are conjugate") {
    SubgroupSpec h1 = spec_of(f2, "x y");
    SubgroupSpec h2 = spec_of(f2, "y x");
    ConjugacyVerdict v = decide_conjugacy(f2, h1, h2);
    CHECK(v.kind == ConjugacyVerdict::Kind::Conjugate);
    REQUIRE(v.witness.has_value());
    check_witness(f2, *v.witness, h1, h2);
  }

  SECTION("a deep conjugate needs wider rounds than a shallow schedule allows") {
    SubgroupSpec h1 = spec_of(f2, "x");
    SubgroupSpec h2 = spec_of(f2, "y x y x y^-1 x^-1 y^-1");
    ConjugacySchedule one;
    one.rounds = 1;
    ConjugacyVerdict shallow = decide_conjugacy(f2, h1, h2, one);
    CHECK(shallow.kind == ConjugacyVerdict::Kind::Undecided);
    CHECK(shallow.rounds_used == 1);

    ConjugacySchedule three;
    three.rounds = 3;
    ConjugacyVerdict deep = decide_conjugacy(f2, h1, h2, three);
    CHECK(deep.kind == ConjugacyVerdict::Kind::Conjugate);
    CHECK(deep.rounds_used == 3);
    REQUIRE(deep.witness.has_value());
    CHECK(word_to_string(f2, *deep.witness) == "y x y");
    check_witness(f2, *deep.witness, h1, h2);
  }

  SECTION("distinct cyclic subgroups of an abelian extension never fuse") {
    ConjugacyVerdict v = decide_conjugacy(hnn, spec_of(hnn, "t"), spec_of(hnn, "v.c t"));
    CHECK(v.kind == ConjugacyVerdict::Kind::NotConjugate);
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->target_name == "C2");
  }

  SECTION("the stable letter fixes the vertex group pointwise") {
    SubgroupSpec h1 = spec_of(hnn, "v.c");
    SubgroupSpec h2 = spec_of(hnn, "t v.c t^-1");
    ConjugacyVerdict v = decide_conjugacy(hnn, h1, h2);
    CHECK(v.kind == ConjugacyVerdict::Kind::Conjugate);
    REQUIRE(v.witness.has_value());
    CHECK(is_identity(hnn, *v.witness));
  }

  SECTION("the two order-four vertex groups of the chain are independent") {
    SubgroupSpec h1 = spec_of(chain, "v1.x");
    SubgroupSpec h2 = spec_of(chain, "e1 e2 v3.y e2^-1 e1^-1");
    ConjugacyVerdict v = decide_conjugacy(chain, h1, h2);
    CHECK(v.kind == ConjugacyVerdict::Kind::NotConjugate);
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->target_name == "C4xC4");
  }

  SECTION("subgroups of different order are separated as soon as stages exist") {
    SubgroupSpec h1 = spec_of(chain, "v1.x");
    SubgroupSpec h2 = spec_of(chain, "e1 v2.p e1^-1");
    CHECK(h2.elements.size() == 2);
    ConjugacyVerdict v = decide_conjugacy(chain, h1, h2);
    CHECK(v.kind == ConjugacyVerdict::Kind::NotConjugate);
    CHECK(v.rounds_used <= 3);
  }
}

TEST_CASE("normalizer chains over the dihedral tower") {
  const GraphOfGroups& g = fixture_graph("dinf");
  Tower t = build_tower(g, TowerOptions{16, "all", 1, true});
  REQUIRE(t.size() == 8);
  REQUIRE(t.stages[1].quot.target_name == "C2xC2");

  SECTION("the reflection subgroup has index-two normalizer") {
    NormalizerReport rep = normalizer_chain(g, t, spec_of(g, "v1.a"), 1, 3);
    REQUIRE(rep.chain.entries.size() == 4);
    CHECK(rep.chain.entries[0].stage == 1);
    CHECK(rep.chain.entries[0].projected.size() == 4);
    for (int i = 1; i < 4; ++i) CHECK(rep.chain.entries[i].projected.size() == 2);
    CHECK(rep.chain.entries[1].stage == 3);
    CHECK(rep.chain.entries[2].stage == 5);
    CHECK(rep.chain.entries[3].stage == 7);
    CHECK(rep.chain.stabilized_at == 3);
    CHECK(rep.chain.skipped == std::vector<int>{0, 2, 4, 6});

    /* The verified normalizing words are exactly the stabilizer of a. */
    REQUIRE(rep.discovered.size() == 2);
    CHECK(word_to_string(g, rep.discovered[0]) == "v1.1");
    CHECK(word_to_string(g, rep.discovered[1]) == "v1.a");
  }

  SECTION("a translation subgroup is normalized by everything in sight") {
    NormalizerReport rep = normalizer_chain(
        g, t, spec_of(g, "v1.a e v2.b e^-1 v1.a e v2.b e^-1"), 1, 3);
    for (const ChainEntry& e : rep.chain.entries) CHECK(e.projected.size() == 4);
    CHECK(rep.chain.stabilized_at == 1);
    CHECK(rep.discovered.size() >= 2);
    for (const PathWord& w : rep.discovered) {
      CHECK(is_closed(g, w));
      CHECK(w.start == g.base_vertex);
    }
  }

  SECTION("a reference with nothing above it cannot stabilize") {
    Tower small = build_tower(g, TowerOptions{4, "all", 1, true});
    REQUIRE(small.size() == 2);
    NormalizerReport rep = normalizer_chain(g, small, spec_of(g, "v1.a"), 1, 2);
    CHECK(rep.chain.entries.size() == 1);
    CHECK_FALSE(rep.chain.stabilized_at.has_value());
    CHECK(rep.chain.skipped == std::vector<int>{0});
  }

  CHECK_THROWS_AS(normalizer_chain(g, t, spec_of(g, "v1.a"), 99, 2), InvalidInput);
}

TEST_CASE("centralizers of roots contain no extra commuting elements") {
  const GraphOfGroups& g = fixture_graph("dinf");
  Tower t = build_tower(g, TowerOptions{16, "all", 1, true});

  PathWord ab = parse_word(g, "v1.a e v2.b e^-1");
  CentralizerReport rep = centralizer_root_check(g, t, ab, 2, 4);
  CHECK(rep.kernel_stage == 0);
  CHECK(rep.commuting.size() == 5);
  CHECK(rep.violations.empty());
  REQUIRE(rep.chain.entries.size() == 8);
  CHECK(rep.chain.entries[0].projected.size() == 2);
  CHECK(rep.chain.entries[1].projected.size() == 2);
  for (int i = 2; i < 8; ++i) CHECK(rep.chain.entries[i].projected.size() == 1);
  CHECK(rep.chain.stabilized_at == 2);

  /* Everything that commutes with the square is a power of the translation. */
  const GraphOfGroups& f2 = fixture_graph("f2");
  Tower tf = build_tower(f2, TowerOptions{2, "all", 1, true});
  PathWord xy = parse_word(f2, "x y");
  CentralizerReport frep = centralizer_root_check(f2, tf, xy, 3, 6);
  CHECK(frep.kernel_stage == 0);
  CHECK(frep.violations.empty());
  std::set<PathWord> powers;
  PathWord acc = identity_word(f2, f2.base_vertex);
  for (int k = 0; k <= 3; ++k) {
    powers.insert(britton_reduce_word(f2, acc));
    powers.insert(britton_reduce_word(f2, invert(f2, acc)));
    acc = multiply(f2, acc, xy);
  }
  CHECK(frep.commuting.size() == 7);
  for (const PathWord& w : frep.commuting) CHECK(powers.count(w) == 1);

  CHECK_THROWS_AS(centralizer_root_check(g, t, parse_word(g, "v1.a"), 2),
                  PreconditionFailed);
  CHECK_THROWS_AS(centralizer_root_check(g, t, ab, 0), InvalidInput);

  /* An element outside every kernel in a truncated tower is rejected. */
  const GraphOfGroups& hnn = fixture_graph("hnn_c2");
  Tower th = build_tower(hnn, TowerOptions{2, "all", 1, true});
  REQUIRE(th.size() == 2);
  PathWord tword = parse_word(hnn, "t");
  int live = -1;
  for (int i = 0; i < th.size(); ++i)
    if (eval(hnn, th.stages[i].quot, tword) != th.stages[i].quot.target.identity()) live = i;
  REQUIRE(live >= 0);
  Tower cut;
  cut.stages = {th.stages[live]};
  cut.links.assign(1, std::vector<std::optional<TowerMorphism>>(1));
  CHECK_THROWS_AS(centralizer_root_check(hnn, cut, tword, 1), PreconditionFailed);
}
