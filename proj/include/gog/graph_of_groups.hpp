#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "gog/errors.hpp"
#include "gog/finite_group.hpp"

namespace gog {

using Rational = boost::rational<long long>;

/*
 * Finite graph in the cell convention: cells 0..V-1 are vertices, cells
 * V..V+E-1 are edges. The incidence maps d0/d1 act on all cells and fix the
 * vertices, so "d0(c)" is meaningful whether c is a vertex or an edge.
 */
struct FiniteGraph {
  struct Edge {
    int src = 0;
    int dst = 0;
  };

  int vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<std::string> names;  // one per cell

  int edge_count() const { return static_cast<int>(edges.size()); }
  int cell_count() const { return vertex_count + edge_count(); }
  bool is_vertex(int cell) const { return cell >= 0 && cell < vertex_count; }
  bool is_edge(int cell) const { return cell >= vertex_count && cell < cell_count(); }
  int edge_index(int cell) const { return cell - vertex_count; }
  int edge_cell(int index) const { return vertex_count + index; }

  int d0(int cell) const { return is_vertex(cell) ? cell : edges[edge_index(cell)].src; }
  int d1(int cell) const { return is_vertex(cell) ? cell : edges[edge_index(cell)].dst; }

  const std::string& name(int cell) const { return names[cell]; }

  std::optional<int> cell_by_name(const std::string& name) const {
    for (int c = 0; c < cell_count(); ++c)
      if (names[c] == name) return c;
    return std::nullopt;
  }

  /* Edge ends at v: (edge cell, end) with end 0 for d0, 1 for d1; loops give both. */
  std::vector<std::pair<int, int>> edge_ends_at(int v) const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < edge_count(); ++i) {
      if (edges[i].src == v) out.emplace_back(edge_cell(i), 0);
      if (edges[i].dst == v) out.emplace_back(edge_cell(i), 1);
    }
    return out;
  }

  bool connected() const {
    if (vertex_count == 0) return false;
    std::vector<int> parent(vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& e : edges) parent[find(e.src)] = find(e.dst);
    int root = find(0);
    for (int v = 1; v < vertex_count; ++v)
      if (find(v) != root) return false;
    return true;
  }
};

/*
 * Finite graph of finite groups: one group per cell and, for every edge, a
 * pair of boundary monomorphisms into the endpoint groups. A spanning tree
 * and a base vertex pin down canonical forms everywhere downstream.
 */
struct GraphOfGroups {
  FiniteGraph graph;
  std::vector<FiniteGroup> groups;      // per cell
  std::vector<ElementHom> into_source;  // per edge, G(e) -> G(d0 e)
  std::vector<ElementHom> into_target;  // per edge, G(e) -> G(d1 e)
  std::vector<int> tree_edges;          // edge cells, sorted
  int base_vertex = 0;

  const FiniteGroup& group(int cell) const { return groups[cell]; }
  const ElementHom& boundary(int edge_cell, int end) const {
    return end == 0 ? into_source[graph.edge_index(edge_cell)]
                    : into_target[graph.edge_index(edge_cell)];
  }
  bool in_tree(int edge_cell) const {
    return std::binary_search(tree_edges.begin(), tree_edges.end(), edge_cell);
  }
};

struct ValidationIssue {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

/* Deterministic spanning tree: BFS from the base, edges scanned in index order. */
inline std::vector<int> bfs_spanning_tree(const FiniteGraph& graph, int base) {
  std::vector<char> reached(graph.vertex_count, 0);
  std::vector<int> tree;
  std::vector<int> queue{base};
  reached[base] = 1;
  for (std::size_t at = 0; at < queue.size(); ++at) {
    int v = queue[at];
    for (auto [edge_cell, end] : graph.edge_ends_at(v)) {
      int other = end == 0 ? graph.d1(edge_cell) : graph.d0(edge_cell);
      if (!reached[other]) {
        reached[other] = 1;
        tree.push_back(edge_cell);
        queue.push_back(other);
      }
    }
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

inline bool is_spanning_tree(const FiniteGraph& graph, const std::vector<int>& tree_edges) {
  if (static_cast<int>(tree_edges.size()) != graph.vertex_count - 1) return false;
  std::vector<int> parent(graph.vertex_count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int cell : tree_edges) {
    if (!graph.is_edge(cell)) return false;
    int a = find(graph.d0(cell)), b = find(graph.d1(cell));
    if (a == b) return false;  // cycle (also rejects loops)
    parent[a] = b;
  }
  return true;
}

inline ValidationReport validate(const GraphOfGroups& g) {
  ValidationReport report;
  auto issue = [&](std::string code, std::string message) {
    report.issues.push_back({std::move(code), std::move(message)});
  };

  if (g.graph.vertex_count == 0) {
    issue("empty", "graph has no vertices");
    return report;
  }
  if (static_cast<int>(g.graph.names.size()) != g.graph.cell_count())
    issue("names", "cell name list does not match cell count");
  else {
    auto sorted = g.graph.names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      issue("names", "cell names are not unique");
  }
  for (const auto& e : g.graph.edges)
    if (e.src < 0 || e.src >= g.graph.vertex_count || e.dst < 0 || e.dst >= g.graph.vertex_count)
      issue("incidence", "edge endpoint out of range");
  if (!g.graph.connected()) issue("connectivity", "graph is not connected");

  if (static_cast<int>(g.groups.size()) != g.graph.cell_count()) {
    issue("groups", "group list does not match cell count");
    return report;
  }
  for (int c = 0; c < g.graph.cell_count(); ++c) {
    const auto& labels = g.groups[c].labels();
    auto sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      issue("labels", "duplicate element labels in group at " + g.graph.name(c));
  }

  if (static_cast<int>(g.into_source.size()) != g.graph.edge_count() ||
      static_cast<int>(g.into_target.size()) != g.graph.edge_count()) {
    issue("boundary", "boundary map count does not match edge count");
    return report;
  }
  for (int i = 0; i < g.graph.edge_count(); ++i) {
    int e = g.graph.edge_cell(i);
    const auto& f0 = g.into_source[i];
    const auto& f1 = g.into_target[i];
    if (!is_homomorphism(f0, g.group(e), g.group(g.graph.d0(e))))
      issue("boundary", "into_source of " + g.graph.name(e) + " is not a homomorphism");
    else if (!is_injective(f0))
      issue("boundary", "into_source of " + g.graph.name(e) + " is not injective");
    if (!is_homomorphism(f1, g.group(e), g.group(g.graph.d1(e))))
      issue("boundary", "into_target of " + g.graph.name(e) + " is not a homomorphism");
    else if (!is_injective(f1))
      issue("boundary", "into_target of " + g.graph.name(e) + " is not injective");
  }

  if (g.base_vertex < 0 || g.base_vertex >= g.graph.vertex_count)
    issue("basepoint", "base vertex out of range");
  if (!std::is_sorted(g.tree_edges.begin(), g.tree_edges.end()))
    issue("tree", "tree edge list is not sorted");
  else if (!is_spanning_tree(g.graph, g.tree_edges))
    issue("tree", "tree edges do not form a spanning tree");

  return report;
}

inline std::string rational_string(const Rational& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
  return s;
}

inline Rational euler_characteristic(const GraphOfGroups& g) {
  Rational chi(0);
  for (int v = 0; v < g.graph.vertex_count; ++v) chi += Rational(1, g.group(v).order());
  for (int i = 0; i < g.graph.edge_count(); ++i)
    chi -= Rational(1, g.group(g.graph.edge_cell(i)).order());
  return chi;
}

/* An edge end is fictitious when its boundary map is onto (hence an isomorphism). */
inline bool boundary_is_iso(const GraphOfGroups& g, int edge_cell, int end) {
  return g.group(edge_cell).order() ==
         g.group(end == 0 ? g.graph.d0(edge_cell) : g.graph.d1(edge_cell)).order();
}

/* Loops are exempt: collapsing a loop changes the fundamental group. */
inline bool is_reduced(const GraphOfGroups& g) {
  for (int i = 0; i < g.graph.edge_count(); ++i) {
    int e = g.graph.edge_cell(i);
    if (g.graph.d0(e) == g.graph.d1(e)) continue;
    if (boundary_is_iso(g, e, 0) || boundary_is_iso(g, e, 1)) return false;
  }
  return true;
}

namespace detail {

/* Contract one fictitious non-loop edge; `end` is the absorbed side. */
inline GraphOfGroups contract_edge(const GraphOfGroups& g, int edge_cell, int end) {
  const int absorbed = end == 0 ? g.graph.d0(edge_cell) : g.graph.d1(edge_cell);
  const int kept = end == 0 ? g.graph.d1(edge_cell) : g.graph.d0(edge_cell);
  const int ei = g.graph.edge_index(edge_cell);

  /* G(absorbed) -> G(kept), through the edge group. */
  const auto& iso = end == 0 ? g.into_source[ei] : g.into_target[ei];
  const auto& other = end == 0 ? g.into_target[ei] : g.into_source[ei];
  ElementHom lift = inverse_of_injective(iso, g.group(edge_cell), g.group(absorbed));
  ElementHom reroute = compose(lift, other);

  auto map_vertex = [&](int v) {
    if (v == absorbed) v = kept;
    return v > absorbed ? v - 1 : v;
  };

  GraphOfGroups out;
  out.graph.vertex_count = g.graph.vertex_count - 1;
  for (int v = 0; v < g.graph.vertex_count; ++v) {
    if (v == absorbed) continue;
    out.graph.names.push_back(g.graph.name(v));
    out.groups.push_back(g.group(v));
  }
  std::vector<std::string> edge_names;
  for (int i = 0; i < g.graph.edge_count(); ++i) {
    if (i == ei) continue;
    int e = g.graph.edge_cell(i);
    out.graph.edges.push_back({map_vertex(g.graph.d0(e)), map_vertex(g.graph.d1(e))});
    edge_names.push_back(g.graph.name(e));
    ElementHom f0 = g.into_source[i];
    ElementHom f1 = g.into_target[i];
    if (g.graph.d0(e) == absorbed) f0 = compose(f0, reroute);
    if (g.graph.d1(e) == absorbed) f1 = compose(f1, reroute);
    out.into_source.push_back(std::move(f0));
    out.into_target.push_back(std::move(f1));
  }
  for (int i = 0; i < g.graph.edge_count(); ++i) {
    if (i == ei) continue;
    int e = g.graph.edge_cell(i);
    out.groups.push_back(g.group(e));
  }
  out.graph.names.insert(out.graph.names.end(), edge_names.begin(), edge_names.end());
  out.base_vertex = map_vertex(g.base_vertex);
  out.tree_edges = bfs_spanning_tree(out.graph, out.base_vertex);
  return out;
}

}  // namespace detail

/*
 * Contract fictitious non-loop edges until none remain. Each pass takes the
 * lexicographically first offender (edge cell order, source end preferred),
 * so the result is deterministic.
 */
inline GraphOfGroups reduce(const GraphOfGroups& g) {
  GraphOfGroups current = g;
  for (;;) {
    bool contracted = false;
    for (int i = 0; i < current.graph.edge_count() && !contracted; ++i) {
      int e = current.graph.edge_cell(i);
      if (current.graph.d0(e) == current.graph.d1(e)) continue;
      for (int end = 0; end < 2 && !contracted; ++end) {
        if (boundary_is_iso(current, e, end)) {
          current = detail::contract_edge(current, e, end);
          contracted = true;
        }
      }
    }
    if (!contracted) return current;
  }
}

/*
 * Morphism of graphs of groups: a cell map commuting with the incidence maps
 * and a group map per cell commuting with the boundary maps.
 */
struct GoGMorphism {
  std::vector<int> cell_map;           // source cell -> target cell
  std::vector<ElementHom> group_maps;  // per source cell
};

inline bool morphism_valid(const GraphOfGroups& src, const GraphOfGroups& dst,
                           const GoGMorphism& m) {
  if (static_cast<int>(m.cell_map.size()) != src.graph.cell_count()) return false;
  if (static_cast<int>(m.group_maps.size()) != src.graph.cell_count()) return false;
  for (int c = 0; c < src.graph.cell_count(); ++c) {
    int mc = m.cell_map[c];
    if (src.graph.is_vertex(c) != dst.graph.is_vertex(mc)) return false;
    if (dst.graph.d0(mc) != m.cell_map[src.graph.d0(c)]) return false;
    if (dst.graph.d1(mc) != m.cell_map[src.graph.d1(c)]) return false;
    if (!is_homomorphism(m.group_maps[c], src.group(c), dst.group(mc))) return false;
  }
  for (int i = 0; i < src.graph.edge_count(); ++i) {
    int e = src.graph.edge_cell(i);
    int me = m.cell_map[e];
    int mei = dst.graph.edge_index(me);
    ElementHom lhs0 = compose(src.into_source[i], m.group_maps[src.graph.d0(e)]);
    ElementHom rhs0 = compose(m.group_maps[e], dst.into_source[mei]);
    if (!(lhs0 == rhs0)) return false;
    ElementHom lhs1 = compose(src.into_target[i], m.group_maps[src.graph.d1(e)]);
    ElementHom rhs1 = compose(m.group_maps[e], dst.into_target[mei]);
    if (!(lhs1 == rhs1)) return false;
  }
  return true;
}

/* Tree path from the base to cell target: (edge cell, +1/-1) steps. */
inline std::vector<std::pair<int, int>> tree_path_from_base(const GraphOfGroups& g, int target) {
  int target_vertex = g.graph.is_vertex(target) ? target : g.graph.d0(target);
  std::vector<int> prev_vertex(g.graph.vertex_count, -1);
  std::vector<std::pair<int, int>> prev_step(g.graph.vertex_count, {-1, 0});
  std::vector<int> queue{g.base_vertex};
  prev_vertex[g.base_vertex] = g.base_vertex;
  for (std::size_t at = 0; at < queue.size(); ++at) {
    int v = queue[at];
    for (auto [edge_cell, end] : g.graph.edge_ends_at(v)) {
      if (!g.in_tree(edge_cell)) continue;
      int other = end == 0 ? g.graph.d1(edge_cell) : g.graph.d0(edge_cell);
      if (prev_vertex[other] < 0) {
        prev_vertex[other] = v;
        prev_step[other] = {edge_cell, end == 0 ? +1 : -1};
        queue.push_back(other);
      }
    }
  }
  std::vector<std::pair<int, int>> path;
  for (int v = target_vertex; v != g.base_vertex; v = prev_vertex[v]) path.push_back(prev_step[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace gog
