#include <catch2/catch_amalgamated.hpp>

#include "gog/format.hpp"
#include "gog/graph_of_groups.hpp"
#include "support/test_support.hpp"

using namespace gog;
using gogtest::fixture_graph;

namespace {

/* Amalgam of two copies of Z/2 over Z/2 with both boundary maps onto:
   the edge is fictitious and the whole thing collapses to one vertex. */
const char* kFictitiousEdge = R"(
[graph]
vertices = u v
edge = f u v

[group.u]
table = [[0,1],[1,0]]
labels = ["1","a"]

[group.v]
table = [[0,1],[1,0]]
labels = ["1","b"]

[group.f]
table = [[0,1],[1,0]]
labels = ["1","m"]

[boundary.f]
into_source = [0,1]
into_target = [0,1]

[basepoint]
vertex = u

[tree]
edges = f
)";

}  // namespace

TEST_CASE("fixture graphs validate and report expected shape") {
  struct Expect {
    const char* name;
    int vertices;
    int edges;
    Rational euler;
  };
  const Expect table[] = {
      {"dinf", 2, 1, Rational(0)},        {"modular", 2, 1, Rational(-1, 6)},
      {"hnn_c2", 1, 1, Rational(0)},      {"f2", 1, 2, Rational(-1)},
      {"c4chain", 3, 2, Rational(-1, 4)},
  };
  for (const Expect& e : table) {
    INFO(e.name);
    const GraphOfGroups& g = fixture_graph(e.name);
    CHECK(validate(g).ok());
    CHECK(g.graph.vertex_count == e.vertices);
    CHECK(g.graph.edge_count() == e.edges);
    CHECK(euler_characteristic(g) == e.euler);
    CHECK(is_reduced(g));
    CHECK(g.graph.connected());
  }
}

TEST_CASE("validation flags broken structures") {
  GraphOfGroups g = fixture_graph("dinf");

  SECTION("tree edges must span") {
    g.tree_edges.clear();
    ValidationReport r = validate(g);
    REQUIRE_FALSE(r.ok());
    CHECK(r.issues[0].code == "tree");
  }

  SECTION("base vertex must exist") {
    g.base_vertex = 9;
    CHECK_FALSE(validate(g).ok());
  }

  SECTION("boundary maps must be injective homomorphisms") {
    /* Send the edge group somewhere non-injectively: collapse both images. */
    g.groups[2] = FiniteGroup::from_table({{0, 1}, {1, 0}}, {"1", "m"});
    g.into_source[0] = ElementHom{{0, 0}};
    g.into_target[0] = ElementHom{{0, 0}};
    CHECK_FALSE(validate(g).ok());
  }
}

TEST_CASE("loops are never contracted, fictitious non-loop edges are") {
  CHECK(is_reduced(fixture_graph("hnn_c2")));  // loop with iso boundaries

  GraphOfGroups amalgam = parse(kFictitiousEdge);
  REQUIRE(validate(amalgam).ok());
  CHECK_FALSE(is_reduced(amalgam));

  GraphOfGroups collapsed = reduce(amalgam);
  CHECK(validate(collapsed).ok());
  CHECK(collapsed.graph.vertex_count == 1);
  CHECK(collapsed.graph.edge_count() == 0);
  CHECK(collapsed.groups[0].order() == 2);
  CHECK(is_reduced(collapsed));

  /* Contraction preserves the Euler characteristic. */
  CHECK(euler_characteristic(collapsed) == euler_characteristic(amalgam));
  CHECK(euler_characteristic(amalgam) == Rational(1, 2));
}

TEST_CASE("reduce leaves already-reduced inputs untouched") {
  for (const char* name : {"dinf", "modular", "hnn_c2", "f2", "c4chain"}) {
    const GraphOfGroups& g = fixture_graph(name);
    GraphOfGroups r = reduce(g);
    CHECK(r.graph.vertex_count == g.graph.vertex_count);
    CHECK(r.graph.edge_count() == g.graph.edge_count());
    CHECK(euler_characteristic(r) == euler_characteristic(g));
  }
}

TEST_CASE("spanning trees from breadth-first search") {
  const GraphOfGroups& chain = fixture_graph("c4chain");
  std::vector<int> tree = bfs_spanning_tree(chain.graph, chain.base_vertex);
  CHECK(tree == chain.tree_edges);
  CHECK(is_spanning_tree(chain.graph, tree));
  CHECK_FALSE(is_spanning_tree(chain.graph, {}));
  CHECK_FALSE(is_spanning_tree(chain.graph, {tree[0]}));

  /* Loops can never sit in a spanning tree. */
  const GraphOfGroups& hnn = fixture_graph("hnn_c2");
  CHECK(hnn.tree_edges.empty());
  CHECK(is_spanning_tree(hnn.graph, {}));
  CHECK_FALSE(is_spanning_tree(hnn.graph, {hnn.graph.edge_cell(0)}));
}

TEST_CASE("edge ends enumerate incidences with multiplicity") {
  const GraphOfGroups& chain = fixture_graph("c4chain");
  auto ends_v2 = chain.graph.edge_ends_at(1);
  REQUIRE(ends_v2.size() == 2);  // target of e1, source of e2

  const GraphOfGroups& hnn = fixture_graph("hnn_c2");
  auto ends_v = hnn.graph.edge_ends_at(0);
  CHECK(ends_v.size() == 2);  // the loop contributes both of its ends

  const GraphOfGroups& f2 = fixture_graph("f2");
  CHECK(f2.graph.edge_ends_at(0).size() == 4);
}

TEST_CASE("identity morphism is valid, scrambled boundary data is not") {
  const GraphOfGroups& g = fixture_graph("c4chain");
  GoGMorphism id;
  for (int c = 0; c < g.graph.cell_count(); ++c) {
    id.cell_map.push_back(c);
    id.group_maps.push_back(identity_hom(g.group(c)));
  }
  CHECK(morphism_valid(g, g, id));

  SECTION("cell map must respect incidence") {
    GoGMorphism bad = id;
    bad.cell_map[0] = 2;  // v1 -> v3 while edges stay put
    CHECK_FALSE(morphism_valid(g, g, bad));
  }

  SECTION("group maps must commute with the boundaries") {
    GoGMorphism bad = id;
    /* Swapping p and q is an automorphism of the middle Klein group, but it
       moves e1's boundary image off itself, so the square cannot commute. */
    bad.group_maps[1] = ElementHom{{0, 2, 1, 3}};
    CHECK_FALSE(morphism_valid(g, g, bad));
  }

  SECTION("inner symmetries that fix the boundary images are fine") {
    GoGMorphism twist = id;
    twist.group_maps[0] = ElementHom{{0, 3, 2, 1}};  // C4 inversion fixes x^2
    CHECK(morphism_valid(g, g, twist));
  }
}

TEST_CASE("tree paths from the base follow the spanning tree only") {
  const GraphOfGroups& chain = fixture_graph("c4chain");
  auto path = tree_path_from_base(chain, 2);  // v3
  REQUIRE(path.size() == 2);
  CHECK(path[0].first == chain.graph.edge_cell(0));
  CHECK(path[0].second == +1);
  CHECK(path[1].first == chain.graph.edge_cell(1));
  CHECK(path[1].second == +1);
  CHECK(tree_path_from_base(chain, chain.base_vertex).empty());

  /* Paths to an edge cell land at its source vertex. */
  auto to_edge = tree_path_from_base(chain, chain.graph.edge_cell(1));
  CHECK(to_edge.size() == 1);
}
