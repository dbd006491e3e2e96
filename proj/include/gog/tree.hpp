#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "gog/errors.hpp"
#include "gog/graph_of_groups.hpp"
#include "gog/words.hpp"

namespace gog {

/*
 * Vertices and edges of the standard tree are cosets of the cell groups,
 * embedded at the base along the spanning tree. A coset is named by its
 * canonical representative: the least Britton-reduced member under the
 * (length, lexicographic) word order.
 */
struct TreeVertex {
  int cell = 0;
  PathWord rep;

  bool operator==(const TreeVertex& other) const {
    return cell == other.cell && rep == other.rep;
  }
  bool operator<(const TreeVertex& other) const {
    if (cell != other.cell) return cell < other.cell;
    return rep < other.rep;
  }
};

struct TreeEdge {
  int cell = 0;
  PathWord rep;

  bool operator==(const TreeEdge& other) const {
    return cell == other.cell && rep == other.rep;
  }
  bool operator<(const TreeEdge& other) const {
    if (cell != other.cell) return cell < other.cell;
    return rep < other.rep;
  }
};

inline PathWord canonical_coset(const GraphOfGroups& g, const PathWord& w, int cell) {
  if (!is_closed(g, w) || w.start != g.base_vertex)
    throw TypeError("coset representatives must be closed at the base", 0);
  const FiniteGroup& gc = g.group(cell);
  std::optional<PathWord> best;
  for (int s = 0; s < gc.order(); ++s) {
    PathWord cand = britton_reduce_word(g, concat(g, w, embedded_element(g, cell, s)));
    if (!best || cand < *best) best = std::move(cand);
  }
  return *best;
}

inline TreeVertex tree_vertex(const GraphOfGroups& g, const PathWord& w, int vertex_cell) {
  if (!g.graph.is_vertex(vertex_cell)) throw InvalidInput("tree vertex needs a vertex cell");
  return TreeVertex{vertex_cell, canonical_coset(g, w, vertex_cell)};
}

inline TreeEdge tree_edge(const GraphOfGroups& g, const PathWord& w, int edge_cell) {
  if (!g.graph.is_edge(edge_cell)) throw InvalidInput("tree edge needs an edge cell");
  return TreeEdge{edge_cell, canonical_coset(g, w, edge_cell)};
}

inline TreeVertex base_tree_vertex(const GraphOfGroups& g) {
  return tree_vertex(g, identity_word(g, g.base_vertex), g.base_vertex);
}

inline std::pair<TreeVertex, TreeVertex> tree_edge_endpoints(const GraphOfGroups& g,
                                                             const TreeEdge& e) {
  TreeVertex v0 = tree_vertex(g, e.rep, g.graph.d0(e.cell));
  PathWord shifted = multiply(g, e.rep, edge_letter_word(g, e.cell));
  TreeVertex v1 = tree_vertex(g, shifted, g.graph.d1(e.cell));
  return {v0, v1};
}

/* Elements g rep s rep^-1 over the cell group; a conjugate of a finite group. */
inline std::vector<PathWord> stabilizer(const GraphOfGroups& g, const TreeVertex& x) {
  const FiniteGroup& gc = g.group(x.cell);
  std::vector<PathWord> elems;
  for (int s = 0; s < gc.order(); ++s)
    elems.push_back(conjugate(g, x.rep, embedded_element(g, x.cell, s)));
  std::sort(elems.begin(), elems.end());
  return elems;
}

inline std::vector<PathWord> edge_stabilizer(const GraphOfGroups& g, const TreeEdge& x) {
  const FiniteGroup& gc = g.group(x.cell);
  std::vector<PathWord> elems;
  for (int s = 0; s < gc.order(); ++s)
    elems.push_back(conjugate(g, x.rep, embedded_element(g, x.cell, s)));
  std::sort(elems.begin(), elems.end());
  return elems;
}

struct TreeNeighbor {
  TreeEdge edge;
  TreeVertex vertex;
};

/*
 * One edge per incident edge-end of the cell and coset of the boundary image
 * in the cell group; the branching degree is the sum of those indices.
 */
inline std::vector<TreeNeighbor> neighbors(const GraphOfGroups& g, const TreeVertex& x) {
  std::vector<TreeNeighbor> out;
  const FiniteGroup& gv = g.group(x.cell);
  for (auto [edge_cell, end] : g.graph.edge_ends_at(x.cell)) {
    const ElementHom& bd = g.boundary(edge_cell, end);
    std::vector<int> image;
    for (int s = 0; s < g.group(edge_cell).order(); ++s) image.push_back(bd(s));
    std::sort(image.begin(), image.end());
    PathWord letter = edge_letter_word(g, edge_cell);
    for (int s : left_transversal(gv, image)) {
      PathWord u = multiply(g, x.rep, embedded_element(g, x.cell, s));
      if (end == 1) u = multiply(g, u, invert(g, letter));
      TreeEdge e{edge_cell, canonical_coset(g, u, edge_cell)};
      int other_cell = end == 0 ? g.graph.d1(edge_cell) : g.graph.d0(edge_cell);
      PathWord shifted = end == 0 ? multiply(g, u, letter) : u;
      TreeVertex v{other_cell, canonical_coset(g, shifted, other_cell)};
      out.push_back({std::move(e), std::move(v)});
    }
  }
  return out;
}

inline int branching_degree(const GraphOfGroups& g, int vertex_cell) {
  int total = 0;
  for (auto [edge_cell, end] : g.graph.edge_ends_at(vertex_cell))
    total += g.group(vertex_cell).order() / g.group(edge_cell).order();
  return total;
}

/*
 * Connected fragment of the standard tree. Incidence is internal: edge i
 * joins vertices[incidence[i].first] and [...].second. Frontier vertices are
 * those whose neighbors have not all been expanded.
 */
struct TreePatch {
  std::vector<TreeVertex> vertices;
  std::vector<TreeEdge> edges;
  std::vector<std::pair<int, int>> incidence;
  std::vector<char> frontier;
  std::vector<int> dist;  // from the center / position along the path

  int vertex_index(const TreeVertex& v) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == v) return static_cast<int>(i);
    return -1;
  }
};

inline TreePatch ball(const GraphOfGroups& g, const TreeVertex& center, int radius,
                      int max_cells = 100000) {
  TreePatch patch;
  std::map<TreeVertex, int> index;
  std::vector<int> dist;
  patch.vertices.push_back(center);
  index[center] = 0;
  dist.push_back(0);
  std::map<TreeEdge, char> edge_seen;
  for (std::size_t at = 0; at < patch.vertices.size(); ++at) {
    if (dist[at] == radius) continue;
    TreeVertex from = patch.vertices[at];
    for (const TreeNeighbor& nb : neighbors(g, from)) {
      if (!edge_seen.emplace(nb.edge, 1).second) continue;
      auto it = index.find(nb.vertex);
      int to;
      if (it == index.end()) {
        to = static_cast<int>(patch.vertices.size());
        patch.vertices.push_back(nb.vertex);
        index[nb.vertex] = to;
        dist.push_back(dist[at] + 1);
        if (static_cast<int>(patch.vertices.size()) + static_cast<int>(patch.edges.size()) >
            max_cells)
          throw BudgetExceeded("ball grew past " + std::to_string(max_cells) + " cells",
                               max_cells);
      } else {
        to = it->second;
      }
      auto [d0v, d1v] = tree_edge_endpoints(g, nb.edge);
      patch.edges.push_back(nb.edge);
      patch.incidence.emplace_back(index.at(d0v), index.at(d1v));
    }
  }
  patch.frontier.assign(patch.vertices.size(), 0);
  for (std::size_t i = 0; i < patch.vertices.size(); ++i)
    if (dist[i] == radius) patch.frontier[i] = 1;
  patch.dist = std::move(dist);
  return patch;
}

/*
 * The unique reduced path between two vertices, found by expanding balls
 * around both ends by turns. Vertices come back in path order; edge i joins
 * path vertices i and i+1.
 */
inline TreePatch geodesic(const GraphOfGroups& g, const TreeVertex& from, const TreeVertex& to,
                          int max_radius = 64) {
  struct Side {
    std::vector<TreeVertex> order;
    std::map<TreeVertex, int> parent;          // index of parent in `order`
    std::map<TreeVertex, TreeEdge> parent_edge;
    std::size_t frontier_begin = 0;
  };
  Side a, b;
  a.order.push_back(from);
  a.parent[from] = -1;
  b.order.push_back(to);
  b.parent[to] = -1;

  auto build_path = [&](const TreeVertex& meet) {
    std::vector<TreeVertex> left;
    std::vector<TreeEdge> left_edges;
    TreeVertex at = meet;
    while (true) {
      left.push_back(at);
      int p = a.parent.at(at);
      if (p < 0) break;
      left_edges.push_back(a.parent_edge.at(at));
      at = a.order[p];
    }
    std::reverse(left.begin(), left.end());
    std::reverse(left_edges.begin(), left_edges.end());
    at = meet;
    std::vector<TreeVertex> right;
    std::vector<TreeEdge> right_edges;
    while (true) {
      int p = b.parent.at(at);
      if (p < 0) break;
      right_edges.push_back(b.parent_edge.at(at));
      at = b.order[p];
      right.push_back(at);
    }
    TreePatch patch;
    patch.vertices = std::move(left);
    patch.vertices.insert(patch.vertices.end(), right.begin(), right.end());
    patch.edges = std::move(left_edges);
    patch.edges.insert(patch.edges.end(), right_edges.begin(), right_edges.end());
    for (std::size_t i = 0; i < patch.edges.size(); ++i) {
      auto [d0v, d1v] = tree_edge_endpoints(g, patch.edges[i]);
      int i0 = patch.vertex_index(d0v), i1 = patch.vertex_index(d1v);
      patch.incidence.emplace_back(i0, i1);
    }
    patch.frontier.assign(patch.vertices.size(), 0);
    patch.dist.resize(patch.vertices.size());
    std::iota(patch.dist.begin(), patch.dist.end(), 0);
    return patch;
  };

  if (from == to) return build_path(from);

  for (int round = 0; round < 2 * max_radius; ++round) {
    Side& grow = (round % 2 == 0) ? a : b;
    Side& other = (round % 2 == 0) ? b : a;
    std::size_t begin = grow.frontier_begin;
    std::size_t end = grow.order.size();
    grow.frontier_begin = end;
    if (begin == end) break;  // side exhausted; unreachable in a tree
    for (std::size_t at = begin; at < end; ++at) {
      TreeVertex v = grow.order[at];
      for (const TreeNeighbor& nb : neighbors(g, v)) {
        if (grow.parent.count(nb.vertex)) continue;
        grow.parent[nb.vertex] = static_cast<int>(at);
        grow.parent_edge[nb.vertex] = nb.edge;
        grow.order.push_back(nb.vertex);
        if (other.parent.count(nb.vertex)) return build_path(nb.vertex);
      }
    }
  }
  throw BudgetExceeded("geodesic search passed radius " + std::to_string(max_radius), max_radius);
}

inline int geodesic_distance(const GraphOfGroups& g, const TreeVertex& from, const TreeVertex& to,
                             int max_radius = 64) {
  return static_cast<int>(geodesic(g, from, to, max_radius).edges.size());
}

/*
 * Quotient of the smallest invariant subtree of an infinite subgroup: orbit
 * classes of the cells of the seed geodesics, closed under generator
 * translation until a full pass merges nothing.
 */
struct SubtreeQuotient {
  std::vector<TreeVertex> vertex_reps;
  std::vector<TreeEdge> edge_reps;
  std::vector<std::pair<int, int>> incidence;  // per edge orbit: vertex orbit ids
  std::vector<std::vector<PathWord>> vertex_stabilizers;  // discovered elements per orbit
  std::vector<std::vector<PathWord>> edge_stabilizers;
  int passes = 0;

  int vertex_orbits() const { return static_cast<int>(vertex_reps.size()); }
  int edge_orbits() const { return static_cast<int>(edge_reps.size()); }
};

struct SubtreeOptions {
  int max_cells = 5000;
  int max_passes = 32;
  int stabilizer_search_length = 2;
  int finiteness_probe_length = 3;
  int finiteness_closure_bound = 2000;
};

namespace detail {

/* Dovetailed probe: hyperbolic witness means infinite, closed closure means finite. */
inline bool subgroup_is_infinite(const GraphOfGroups& g, const std::vector<PathWord>& gens,
                                 const SubtreeOptions& opts) {
  std::vector<PathWord> sided;
  for (const PathWord& h : gens) {
    sided.push_back(britton_reduce_word(g, h));
    sided.push_back(britton_reduce_word(g, invert(g, h)));
  }
  std::vector<PathWord> layer{identity_word(g, g.base_vertex)};
  std::vector<PathWord> seen = layer;
  for (int len = 1; len <= opts.finiteness_probe_length; ++len) {
    std::vector<PathWord> next;
    for (const PathWord& w : layer)
      for (const PathWord& h : sided) {
        PathWord p = multiply(g, w, h);
        if (!order_of(g, p)) return true;
        if (std::find(seen.begin(), seen.end(), p) == seen.end()) {
          seen.push_back(p);
          next.push_back(p);
          if (static_cast<int>(seen.size()) > opts.finiteness_closure_bound)
            throw BudgetExceeded("could not settle finiteness of the input subgroup",
                                 opts.finiteness_closure_bound);
        }
      }
    if (next.empty()) return false;  // closure complete: finite
    layer = std::move(next);
  }
  /* No hyperbolic element in the probe and closure still open. */
  std::vector<PathWord> frontier = layer;
  while (!frontier.empty()) {
    std::vector<PathWord> next;
    for (const PathWord& w : frontier)
      for (const PathWord& h : sided) {
        PathWord p = multiply(g, w, h);
        if (!order_of(g, p)) return true;
        if (std::find(seen.begin(), seen.end(), p) == seen.end()) {
          seen.push_back(p);
          next.push_back(p);
          if (static_cast<int>(seen.size()) > opts.finiteness_closure_bound)
            throw BudgetExceeded("could not settle finiteness of the input subgroup",
                                 opts.finiteness_closure_bound);
        }
      }
    frontier = std::move(next);
  }
  return false;
}

}  // namespace detail

inline SubtreeQuotient minimal_invariant_subtree(const GraphOfGroups& g,
                                                 const std::vector<PathWord>& gens,
                                                 const SubtreeOptions& opts = {}) {
  if (gens.empty()) throw InvalidInput("subgroup needs at least one generator");
  for (const PathWord& h : gens)
    if (!is_closed(g, h) || h.start != g.base_vertex)
      throw TypeError("subgroup generators must be closed at the base", 0);
  if (!detail::subgroup_is_infinite(g, gens, opts))
    throw FiniteGroupInput("minimal invariant subtree wants an infinite subgroup");

  std::vector<PathWord> action;
  for (const PathWord& h : gens) {
    action.push_back(britton_reduce_word(g, h));
    action.push_back(britton_reduce_word(g, invert(g, h)));
  }

  TreeVertex base = base_tree_vertex(g);
  std::vector<TreeVertex> seed_vertices;
  std::vector<TreeEdge> seed_edges;
  auto add_vertex = [&](const TreeVertex& v) {
    if (std::find(seed_vertices.begin(), seed_vertices.end(), v) == seed_vertices.end())
      seed_vertices.push_back(v);
  };
  auto add_edge = [&](const TreeEdge& e) {
    if (std::find(seed_edges.begin(), seed_edges.end(), e) == seed_edges.end())
      seed_edges.push_back(e);
  };
  add_vertex(base);
  for (const PathWord& h : gens) {
    TreeVertex target = tree_vertex(g, h, g.base_vertex);
    TreePatch path = geodesic(g, base, target);
    for (const TreeVertex& v : path.vertices) add_vertex(v);
    for (const TreeEdge& e : path.edges) add_edge(e);
  }

  /* Orbit classes: seeds start distinct, translates inherit, collisions merge. */
  struct Cells {
    std::map<TreeVertex, int> vertex_id;
    std::map<TreeEdge, int> edge_id;
    std::vector<TreeVertex> vertices;
    std::vector<TreeEdge> edges;
  } cells;
  std::vector<int> cls;  // union-find over cell ids (vertices then edges, shared id space)
  auto find = [&](int x) {
    while (cls[x] != x) x = cls[x] = cls[cls[x]];
    return x;
  };

  auto intern_vertex = [&](const TreeVertex& v, int inherit) {
    auto it = cells.vertex_id.find(v);
    if (it != cells.vertex_id.end()) return it->second;
    int id = static_cast<int>(cls.size());
    cells.vertex_id[v] = id;
    cells.vertices.push_back(v);
    cls.push_back(inherit < 0 ? id : inherit);
    return id;
  };
  auto intern_edge = [&](const TreeEdge& e, int inherit) {
    auto it = cells.edge_id.find(e);
    if (it != cells.edge_id.end()) return it->second;
    int id = static_cast<int>(cls.size());
    cells.edge_id[e] = id;
    cells.edges.push_back(e);
    cls.push_back(inherit < 0 ? id : inherit);
    return id;
  };

  std::vector<int> seed_vertex_ids, seed_edge_ids;
  for (const TreeVertex& v : seed_vertices) seed_vertex_ids.push_back(intern_vertex(v, -1));
  for (const TreeEdge& e : seed_edges) seed_edge_ids.push_back(intern_edge(e, -1));

  SubtreeQuotient q;
  for (q.passes = 1; q.passes <= opts.max_passes; ++q.passes) {
    bool merged = false;
    std::size_t vertex_snapshot = cells.vertices.size();
    std::size_t edge_snapshot = cells.edges.size();
    for (std::size_t i = 0; i < vertex_snapshot; ++i) {
      TreeVertex v = cells.vertices[i];
      int vid = cells.vertex_id.at(v);
      for (const PathWord& h : action) {
        TreeVertex moved{v.cell, canonical_coset(g, multiply(g, h, v.rep), v.cell)};
        auto it = cells.vertex_id.find(moved);
        if (it == cells.vertex_id.end()) {
          intern_vertex(moved, find(vid));
          if (static_cast<int>(cls.size()) > opts.max_cells)
            throw BudgetExceeded("orbit closure passed " + std::to_string(opts.max_cells) +
                                     " cells",
                                 opts.max_cells);
        } else if (find(it->second) != find(vid)) {
          cls[find(it->second)] = find(vid);
          merged = true;
        }
      }
    }
    for (std::size_t i = 0; i < edge_snapshot; ++i) {
      TreeEdge e = cells.edges[i];
      int eid = cells.edge_id.at(e);
      for (const PathWord& h : action) {
        TreeEdge moved{e.cell, canonical_coset(g, multiply(g, h, e.rep), e.cell)};
        auto it = cells.edge_id.find(moved);
        if (it == cells.edge_id.end()) {
          intern_edge(moved, find(eid));
          if (static_cast<int>(cls.size()) > opts.max_cells)
            throw BudgetExceeded("orbit closure passed " + std::to_string(opts.max_cells) +
                                     " cells",
                                 opts.max_cells);
        } else if (find(it->second) != find(eid)) {
          cls[find(it->second)] = find(eid);
          merged = true;
        }
      }
    }
    if (!merged) break;
  }

  /* Orbit representatives: least seed cell of each class, in seed order. */
  std::map<int, int> vertex_orbit_of_class;
  for (std::size_t i = 0; i < seed_vertices.size(); ++i) {
    int root = find(seed_vertex_ids[i]);
    if (!vertex_orbit_of_class.count(root)) {
      vertex_orbit_of_class[root] = static_cast<int>(q.vertex_reps.size());
      q.vertex_reps.push_back(seed_vertices[i]);
    }
  }
  std::map<int, int> edge_orbit_of_class;
  for (std::size_t i = 0; i < seed_edges.size(); ++i) {
    int root = find(seed_edge_ids[i]);
    if (!edge_orbit_of_class.count(root)) {
      edge_orbit_of_class[root] = static_cast<int>(q.edge_reps.size());
      q.edge_reps.push_back(seed_edges[i]);
    }
  }
  for (const TreeEdge& e : q.edge_reps) {
    auto [v0, v1] = tree_edge_endpoints(g, e);
    int c0 = vertex_orbit_of_class.at(find(cells.vertex_id.at(v0)));
    int c1 = vertex_orbit_of_class.at(find(cells.vertex_id.at(v1)));
    q.incidence.emplace_back(c0, c1);
  }

  /* Stabilizer elements discovered by short products fixing the representative. */
  std::vector<PathWord> probes{identity_word(g, g.base_vertex)};
  {
    std::vector<PathWord> layer = probes;
    for (int len = 1; len <= opts.stabilizer_search_length; ++len) {
      std::vector<PathWord> next;
      for (const PathWord& w : layer)
        for (const PathWord& h : action) {
          PathWord p = multiply(g, w, h);
          if (std::find(probes.begin(), probes.end(), p) == probes.end()) {
            probes.push_back(p);
            next.push_back(p);
          }
        }
      layer = std::move(next);
    }
  }
  for (const TreeVertex& v : q.vertex_reps) {
    std::vector<PathWord> stab;
    for (const PathWord& p : probes) {
      TreeVertex moved{v.cell, canonical_coset(g, multiply(g, p, v.rep), v.cell)};
      if (moved == v && std::find(stab.begin(), stab.end(), p) == stab.end()) stab.push_back(p);
    }
    std::sort(stab.begin(), stab.end());
    q.vertex_stabilizers.push_back(std::move(stab));
  }
  for (const TreeEdge& e : q.edge_reps) {
    std::vector<PathWord> stab;
    for (const PathWord& p : probes) {
      TreeEdge moved{e.cell, canonical_coset(g, multiply(g, p, e.rep), e.cell)};
      if (moved == e && std::find(stab.begin(), stab.end(), p) == stab.end()) stab.push_back(p);
    }
    std::sort(stab.begin(), stab.end());
    q.edge_stabilizers.push_back(std::move(stab));
  }
  return q;
}

}  // namespace gog
