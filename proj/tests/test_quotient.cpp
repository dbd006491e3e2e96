#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "gog/catalog.hpp"
#include "gog/errors.hpp"
#include "gog/format.hpp"
#include "gog/quotient.hpp"
#include "support/rank_oracle.hpp"
#include "support/test_support.hpp"

using namespace gog;
using gogtest::fixture_graph;

namespace {

std::vector<FiniteQuotient> into(const GraphOfGroups& g, const char* target,
                                 bool vf, bool onto) {
  EnumerateOptions opts;
  opts.require_vertex_faithful = vf;
  opts.require_surjective = onto;
  return quotients_into(g, *catalog_by_name(target), opts);
}

}  // namespace

TEST_CASE("homomorphism enumeration hits the textbook counts") {
  const FiniteGroup& c2 = catalog_by_name("C2")->group;
  const FiniteGroup& c3 = catalog_by_name("C3")->group;
  const FiniteGroup& s3 = catalog_by_name("S3")->group;

  CHECK(detail::all_homomorphisms(c2, c2).size() == 2);
  CHECK(detail::all_homomorphisms(c3, c2).size() == 1);
  CHECK(detail::all_homomorphisms(c2, s3).size() == 4);   // trivial + three involutions
  CHECK(detail::all_homomorphisms(s3, c2).size() == 2);   // trivial + sign
  CHECK(detail::all_homomorphisms(s3, s3).size() == 10);  // 6 autos + 3 sign-like + trivial

  for (const ElementHom& f : detail::all_homomorphisms(s3, s3))
    CHECK(is_homomorphism(f, s3, s3));
}

TEST_CASE("quotient enumeration counts and flags") {
  const GraphOfGroups& dinf = fixture_graph("dinf");

  CHECK(into(dinf, "C2", false, false).size() == 4);
  CHECK(into(dinf, "C2", false, true).size() == 3);
  CHECK(into(dinf, "C2", true, false).size() == 1);
  CHECK(into(dinf, "C2", true, true).size() == 1);

  for (const FiniteQuotient& q : into(dinf, "C2", false, false)) {
    Presentation pres = to_presentation(dinf);
    CHECK(quotient_valid(dinf, pres, q));
  }

  /* One involution-pair class onto S3 once automorphisms are folded in. */
  const GraphOfGroups& mod = fixture_graph("modular");
  CHECK(into(mod, "S3", true, true).size() == 1);

  /* Free group F2 onto C2: three nonzero sign vectors. */
  const GraphOfGroups& f2 = fixture_graph("f2");
  CHECK(into(f2, "C2", false, false).size() == 4);
  CHECK(into(f2, "C2", true, true).size() == 3);

  /* The full battery over the small catalog, as the tower uses it. */
  EnumerateOptions opts;
  opts.require_vertex_faithful = true;
  opts.require_surjective = true;
  std::vector<FiniteQuotient> battery = enumerate_quotients(dinf, catalog_up_to(8), opts);
  std::set<std::string> targets;
  for (const FiniteQuotient& q : battery) {
    targets.insert(q.target_name);
    CHECK(q.vertex_faithful);
    CHECK(q.surjective);
  }
  CHECK(battery.size() == 4);
  CHECK(targets == std::set<std::string>{"C2", "C2xC2", "D8", "S3"});

  /* The parallel path returns the same data. */
  EnumerateOptions par = opts;
  par.jobs = 2;
  std::vector<FiniteQuotient> battery2 = enumerate_quotients(dinf, catalog_up_to(8), par);
  REQUIRE(battery2.size() == battery.size());
  for (std::size_t i = 0; i < battery.size(); ++i) {
    CHECK(battery2[i].target_name == battery[i].target_name);
    CHECK(battery2[i].key() == battery[i].key());
  }

  EnumerateOptions tight;
  tight.max_quotients = 2;
  CHECK_THROWS_AS(quotients_into(f2, *catalog_by_name("C2"), tight), BudgetExceeded);
}

TEST_CASE("evaluation respects multiplication and the presentation") {
  const GraphOfGroups& mod = fixture_graph("modular");
  FiniteQuotient q = into(mod, "S3", true, true).at(0);

  PathWord u = parse_word(mod, "v1.s e v2.r e^-1");
  PathWord v = parse_word(mod, "e v2.r e^-1 v1.s");
  CHECK(eval(mod, q, multiply(mod, u, v)) ==
        q.target.mul(eval(mod, q, u), eval(mod, q, v)));
  CHECK(eval(mod, q, invert(mod, u)) == q.target.inverse(eval(mod, q, u)));
  CHECK(eval(mod, q, identity_word(mod, mod.base_vertex)) == q.target.identity());

  Presentation pres = to_presentation(mod);
  std::vector<int> images = presentation_images(mod, pres, q);
  REQUIRE(images.size() == pres.generators.size());
  for (std::size_t i = 0; i < pres.generators.size(); ++i)
    CHECK(eval(mod, q, generator_word(mod, pres.generators[i])) == images[i]);

  /* Corrupting a tree edge image breaks validity. */
  const GraphOfGroups& dinf = fixture_graph("dinf");
  FiniteQuotient bad = into(dinf, "C2", true, true).at(0);
  bad.edge_images[0] = 1;
  CHECK_FALSE(quotient_valid(dinf, to_presentation(dinf), bad));
}

TEST_CASE("kernel ranks match the index formula and the rewriting oracle") {
  const GraphOfGroups& dinf = fixture_graph("dinf");
  const GraphOfGroups& mod = fixture_graph("modular");
  const GraphOfGroups& f2 = fixture_graph("f2");

  FiniteQuotient d_v4 = into(dinf, "C2xC2", true, true).at(0);
  CHECK(kernel_rank(dinf, d_v4) == 1);
  bool collapsed = false;
  CHECK(gogtest::rewriting_rank(dinf, d_v4, &collapsed) == 1);
  CHECK(collapsed);

  FiniteQuotient m_s3 = into(mod, "S3", true, true).at(0);
  CHECK(kernel_rank(mod, m_s3) == 2);
  CHECK(gogtest::rewriting_rank(mod, m_s3, &collapsed) == 2);
  CHECK(collapsed);

  FiniteQuotient f_triv = into(f2, "C1", true, true).at(0);
  CHECK(kernel_rank(f2, f_triv) == 2);
  CHECK(gogtest::rewriting_rank(f2, f_triv, &collapsed) == 2);
  CHECK(collapsed);

  /* Index-two subgroups of F2 have rank 3. */
  for (const FiniteQuotient& q : into(f2, "C2", true, true)) {
    CHECK(kernel_rank(f2, q) == 3);
    CHECK(gogtest::rewriting_rank(f2, q, &collapsed) == 3);
    CHECK(collapsed);
  }

  /* Preconditions: vertex-faithful and surjective. */
  for (const FiniteQuotient& q : into(dinf, "C2", false, false)) {
    if (!q.vertex_faithful)
      CHECK_THROWS_AS(kernel_rank(dinf, q), NotVertexFaithful);
  }
  for (const FiniteQuotient& q : into(dinf, "C2xC2", true, false)) {
    if (!q.surjective) CHECK_THROWS_AS(kernel_rank(dinf, q), PreconditionFailed);
  }
}

TEST_CASE("quotient stages collapse cells exactly when their data agree") {
  const GraphOfGroups& dinf = fixture_graph("dinf");

  /* Faithful into C2xC2: nothing collapses. */
  QuotientStage fine = quotient_stage(dinf, into(dinf, "C2xC2", true, true).at(0));
  CHECK(fine.vertex_classes() == 2);
  CHECK(fine.edge_classes() == 1);
  CHECK(fine.cell_class == std::vector<int>{0, 1, 2});
  CHECK(stage_reduced(fine));
  CHECK(morphism_valid(dinf, fine.stage, fine.projection));
  CHECK(validate(fine.stage).ok());

  /* Onto C2 with both vertices faithful: the two sides fold together. */
  QuotientStage folded = quotient_stage(dinf, into(dinf, "C2", true, true).at(0));
  CHECK(folded.vertex_classes() == 1);
  CHECK(folded.edge_classes() == 1);
  CHECK(folded.cell_class == std::vector<int>{0, 0, 1});
  CHECK(folded.stage.graph.edges[0].src == folded.stage.graph.edges[0].dst);
  CHECK(stage_reduced(folded));
  CHECK(morphism_valid(dinf, folded.stage, folded.projection));

  /* One faithful side, one dead side: the stage has a collapsible edge. */
  for (const FiniteQuotient& q : into(dinf, "C2", false, true)) {
    if (q.vertex_faithful) continue;
    bool v1_faithful = is_injective(q.vertex_maps[0]);
    bool v2_faithful = is_injective(q.vertex_maps[1]);
    if (v1_faithful == v2_faithful) continue;
    QuotientStage lop = quotient_stage(dinf, q);
    CHECK(lop.vertex_classes() == 2);
    CHECK_FALSE(stage_reduced(lop));
  }

  /* A free-product stage keeps its loops. */
  const GraphOfGroups& f2 = fixture_graph("f2");
  QuotientStage loops = quotient_stage(f2, into(f2, "C2", true, true).at(0));
  CHECK(loops.vertex_classes() == 1);
  CHECK(validate(loops.stage).ok());
}
