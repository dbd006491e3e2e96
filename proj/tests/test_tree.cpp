#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>

#include "gog/errors.hpp"
#include "gog/format.hpp"
#include "gog/tree.hpp"
#include "support/test_support.hpp"

using namespace gog;
using gogtest::fixture_graph;

namespace {

std::vector<int> sorted_dists(const TreePatch& p) {
  std::vector<int> d = p.dist;
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<int> patch_degrees(const TreePatch& p) {
  std::vector<int> deg(p.vertices.size(), 0);
  for (const auto& [a, b] : p.incidence) {
    ++deg[a];
    ++deg[b];
  }
  return deg;
}

}  // namespace

TEST_CASE("branching degrees match the coset indices") {
  struct Expect {
    const char* name;
    std::vector<int> degrees;  // one per vertex cell
  };
  for (const Expect& e : {Expect{"dinf", {2, 2}}, Expect{"modular", {2, 3}},
                          Expect{"hnn_c2", {2}}, Expect{"f2", {4}},
                          Expect{"c4chain", {2, 4, 2}}}) {
    INFO(e.name);
    const GraphOfGroups& g = fixture_graph(e.name);
    for (int v = 0; v < g.graph.vertex_count; ++v) {
      CHECK(branching_degree(g, v) == e.degrees[v]);
      TreeVertex x = tree_vertex(g, identity_word(g, g.base_vertex), v);
      CHECK(neighbors(g, x).size() == static_cast<std::size_t>(e.degrees[v]));
    }
  }
}

TEST_CASE("balls have the right shape") {
  struct Expect {
    const char* name;
    int radius;
    int vertices;
    int edges;
    int frontier;
  };
  for (const Expect& e : {Expect{"dinf", 3, 7, 6, 2}, Expect{"modular", 2, 7, 6, 4},
                          Expect{"hnn_c2", 3, 7, 6, 2}, Expect{"f2", 2, 17, 16, 12},
                          Expect{"c4chain", 2, 9, 8, 6}}) {
    INFO(e.name);
    const GraphOfGroups& g = fixture_graph(e.name);
    TreePatch ballp = ball(g, base_tree_vertex(g), e.radius);
    CHECK(ballp.vertices.size() == static_cast<std::size_t>(e.vertices));
    CHECK(ballp.edges.size() == static_cast<std::size_t>(e.edges));
    CHECK(std::count(ballp.frontier.begin(), ballp.frontier.end(), 1) == e.frontier);
    CHECK(ballp.dist[0] == 0);
    CHECK(*std::max_element(ballp.dist.begin(), ballp.dist.end()) == e.radius);

    /* Interior vertices carry their full branching degree. */
    std::vector<int> deg = patch_degrees(ballp);
    for (std::size_t i = 0; i < ballp.vertices.size(); ++i) {
      if (ballp.frontier[i]) {
        CHECK(deg[i] >= 1);
      } else {
        CHECK(deg[i] == branching_degree(g, ballp.vertices[i].cell));
      }
    }

    /* A tree fragment: connected with one fewer edge than vertices. */
    CHECK(ballp.edges.size() + 1 == ballp.vertices.size());
  }

  /* The line in dinf has two vertices at each positive distance. */
  TreePatch line = ball(fixture_graph("dinf"), base_tree_vertex(fixture_graph("dinf")), 3);
  CHECK(sorted_dists(line) == std::vector<int>{0, 1, 1, 2, 2, 3, 3});

  CHECK_THROWS_AS(ball(fixture_graph("f2"), base_tree_vertex(fixture_graph("f2")), 3, 10),
                  BudgetExceeded);
}

TEST_CASE("geodesics run straight between translates of the base") {
  struct Expect {
    const char* name;
    const char* word;
    int distance;
  };
  for (const Expect& e :
       {Expect{"dinf", "v1.a e v2.b e^-1", 2}, Expect{"modular", "v1.s e v2.r e^-1", 2},
        Expect{"f2", "x", 1}, Expect{"f2", "x y", 2}, Expect{"hnn_c2", "t", 1},
        Expect{"c4chain", "v1.x e1 v2.q e1^-1", 2}}) {
    INFO(e.name << ": " << e.word);
    const GraphOfGroups& g = fixture_graph(e.name);
    TreeVertex base = base_tree_vertex(g);
    TreeVertex moved = tree_vertex(g, parse_word(g, e.word), g.base_vertex);
    CHECK(geodesic_distance(g, base, moved) == e.distance);

    TreePatch path = geodesic(g, base, moved);
    REQUIRE(path.vertices.size() == static_cast<std::size_t>(e.distance + 1));
    CHECK(path.edges.size() == static_cast<std::size_t>(e.distance));
    CHECK(path.vertices.front() == base);
    CHECK(path.vertices.back() == moved);
    std::vector<int> expect_dist(path.vertices.size());
    for (std::size_t i = 0; i < expect_dist.size(); ++i) expect_dist[i] = static_cast<int>(i);
    CHECK(path.dist == expect_dist);
    /* Each edge joins consecutive path vertices. */
    for (std::size_t i = 0; i < path.incidence.size(); ++i) {
      auto [lo, hi] = std::minmax(path.incidence[i].first, path.incidence[i].second);
      CHECK(lo == static_cast<int>(i));
      CHECK(hi == static_cast<int>(i) + 1);
    }
  }

  const GraphOfGroups& dinf = fixture_graph("dinf");
  TreeVertex base = base_tree_vertex(dinf);
  TreePatch still = geodesic(dinf, base, base);
  CHECK(still.vertices.size() == 1);
  CHECK(still.edges.empty());
}

TEST_CASE("stabilizers are the conjugated cell groups") {
  struct Expect {
    const char* name;
    std::size_t base_stab;
  };
  for (const Expect& e : {Expect{"dinf", 2}, Expect{"modular", 2}, Expect{"hnn_c2", 2},
                          Expect{"f2", 1}, Expect{"c4chain", 4}}) {
    INFO(e.name);
    const GraphOfGroups& g = fixture_graph(e.name);
    TreeVertex base = base_tree_vertex(g);
    std::vector<PathWord> stab = stabilizer(g, base);
    CHECK(stab.size() == e.base_stab);
    CHECK(std::adjacent_find(stab.begin(), stab.end()) == stab.end());
    for (const PathWord& p : stab) {
      CHECK(is_closed(g, p));
      CHECK(canonical_coset(g, multiply(g, p, base.rep), base.cell) == base.rep);
    }
  }

  /* Edge stabilizers sit inside both endpoint stabilizers. */
  const GraphOfGroups& chain = fixture_graph("c4chain");
  TreeEdge e1{3, canonical_coset(chain, identity_word(chain, chain.base_vertex), 3)};
  std::vector<PathWord> estab = edge_stabilizer(chain, e1);
  CHECK(estab.size() == 2);
  auto [v0, v1] = tree_edge_endpoints(chain, e1);
  std::vector<PathWord> s0 = stabilizer(chain, v0);
  std::vector<PathWord> s1 = stabilizer(chain, v1);
  for (const PathWord& p : estab) {
    CHECK(std::find(s0.begin(), s0.end(), p) != s0.end());
    CHECK(std::find(s1.begin(), s1.end(), p) != s1.end());
  }

  const GraphOfGroups& dinf = fixture_graph("dinf");
  TreeEdge de{2, canonical_coset(dinf, identity_word(dinf, 0), 2)};
  CHECK(edge_stabilizer(dinf, de).size() == 1);
}

TEST_CASE("coset representatives are canonical") {
  const GraphOfGroups& dinf = fixture_graph("dinf");
  const GraphOfGroups& chain = fixture_graph("c4chain");

  for (const char* text : {"v1.1", "v1.a", "e v2.b e^-1", "v1.a e v2.b e^-1 v1.a"}) {
    PathWord w = parse_word(dinf, text);
    PathWord canon = canonical_coset(dinf, w, 0);
    /* Every member of the coset names the same representative. */
    for (int s = 0; s < 2; ++s) {
      PathWord member = multiply(dinf, w, embedded_element(dinf, 0, s));
      CHECK(canonical_coset(dinf, member, 0) == canon);
    }
    /* And the representative is itself a member. */
    bool found = false;
    for (int s = 0; s < 2; ++s)
      found = found || equal(dinf, canon, multiply(dinf, w, embedded_element(dinf, 0, s)));
    CHECK(found);
  }

  PathWord far = parse_word(chain, "v1.x e1 v2.q e1^-1");
  PathWord canon = canonical_coset(chain, far, 2);
  for (int s = 0; s < 4; ++s)
    CHECK(canonical_coset(chain, multiply(chain, far, embedded_element(chain, 2, s)), 2) == canon);

  CHECK_THROWS_AS(canonical_coset(dinf, parse_word(dinf, "e"), 0), TypeError);
  CHECK_THROWS_AS(tree_vertex(dinf, identity_word(dinf, 0), 2), InvalidInput);
  CHECK_THROWS_AS(tree_edge(dinf, identity_word(dinf, 0), 0), InvalidInput);
}

TEST_CASE("minimal invariant subtrees of cyclic hyperbolic subgroups") {
  struct Expect {
    const char* name;
    const char* word;
    int vertex_orbits;
    int edge_orbits;
  };
  for (const Expect& e :
       {Expect{"dinf", "v1.a e v2.b e^-1", 2, 2}, Expect{"modular", "v1.s e v2.r e^-1", 2, 2},
        Expect{"f2", "x", 1, 1}, Expect{"hnn_c2", "t", 1, 1},
        Expect{"c4chain", "v1.x e1 v2.q e1^-1", 2, 2}}) {
    INFO(e.name << ": " << e.word);
    const GraphOfGroups& g = fixture_graph(e.name);
    SubtreeQuotient q = minimal_invariant_subtree(g, {parse_word(g, e.word)});
    CHECK(q.vertex_orbits() == e.vertex_orbits);
    CHECK(q.edge_orbits() == e.edge_orbits);
    REQUIRE(q.incidence.size() == static_cast<std::size_t>(e.edge_orbits));
    for (const auto& [a, b] : q.incidence) {
      CHECK(a >= 0);
      CHECK(a < q.vertex_orbits());
      CHECK(b >= 0);
      CHECK(b < q.vertex_orbits());
    }
    /* An infinite cyclic group acts freely on its axis. */
    for (const auto& stab : q.vertex_stabilizers) {
      REQUIRE(stab.size() == 1);
      CHECK(is_identity(g, stab[0]));
    }
    CHECK(q.passes >= 1);
  }

  /* The two-orbit quotients pair one orbit of each vertex type. */
  const GraphOfGroups& dinf = fixture_graph("dinf");
  SubtreeQuotient q = minimal_invariant_subtree(dinf, {parse_word(dinf, "v1.a e v2.b e^-1")});
  CHECK(q.vertex_reps[0].cell != q.vertex_reps[1].cell);
}

TEST_CASE("subtree preconditions reject bad subgroups") {
  const GraphOfGroups& dinf = fixture_graph("dinf");
  const GraphOfGroups& chain = fixture_graph("c4chain");

  CHECK_THROWS_AS(minimal_invariant_subtree(dinf, {}), InvalidInput);
  CHECK_THROWS_AS(minimal_invariant_subtree(dinf, {parse_word(dinf, "e")}), TypeError);
  CHECK_THROWS_AS(minimal_invariant_subtree(dinf, {parse_word(dinf, "v1.a")}),
                  FiniteGroupInput);

  /* x and the embedded p generate one C4: still finite. */
  std::vector<PathWord> gens = {parse_word(chain, "v1.x"),
                                parse_word(chain, "e1 v2.p e1^-1")};
  CHECK_THROWS_AS(minimal_invariant_subtree(chain, gens), FiniteGroupInput);

  /* Two independent letters give a genuinely larger quotient. */
  const GraphOfGroups& f2 = fixture_graph("f2");
  SubtreeQuotient q =
      minimal_invariant_subtree(f2, {parse_word(f2, "x"), parse_word(f2, "y")});
  CHECK(q.vertex_orbits() == 1);
  CHECK(q.edge_orbits() == 2);
}
