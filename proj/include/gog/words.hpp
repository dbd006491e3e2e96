#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "gog/errors.hpp"
#include "gog/graph_of_groups.hpp"

namespace gog {

struct EdgeStep {
  int edge_cell = 0;
  int sign = +1;  // +1 traverses d0 -> d1, -1 the reverse

  bool operator==(const EdgeStep& other) const {
    return edge_cell == other.edge_cell && sign == other.sign;
  }
};

/*
 * Path word g0 (e1,s1) g1 ... (en,sn) gn: one more group syllable than edge
 * step, starting at a vertex cell. Syllable i is an element index in the
 * group of the vertex reached after i steps.
 */
struct PathWord {
  int start = 0;
  std::vector<int> syllables;
  std::vector<EdgeStep> steps;

  int length() const { return static_cast<int>(steps.size()); }

  bool operator==(const PathWord& other) const {
    return start == other.start && syllables == other.syllables && steps == other.steps;
  }
  bool operator<(const PathWord& other) const {
    if (length() != other.length()) return length() < other.length();
    if (start != other.start) return start < other.start;
    for (int i = 0; i < length(); ++i) {
      if (syllables[i] != other.syllables[i]) return syllables[i] < other.syllables[i];
      if (steps[i].edge_cell != other.steps[i].edge_cell)
        return steps[i].edge_cell < other.steps[i].edge_cell;
      if (steps[i].sign != other.steps[i].sign) return steps[i].sign > other.steps[i].sign;
    }
    return syllables.back() < other.syllables.back();
  }
};

inline int step_entry_vertex(const FiniteGraph& graph, const EdgeStep& s) {
  return s.sign > 0 ? graph.d0(s.edge_cell) : graph.d1(s.edge_cell);
}

inline int step_exit_vertex(const FiniteGraph& graph, const EdgeStep& s) {
  return s.sign > 0 ? graph.d1(s.edge_cell) : graph.d0(s.edge_cell);
}

/* Vertex reached after i steps. */
inline int vertex_at(const GraphOfGroups& g, const PathWord& w, int i) {
  int v = w.start;
  for (int k = 0; k < i; ++k) v = step_exit_vertex(g.graph, w.steps[k]);
  return v;
}

inline int end_vertex(const GraphOfGroups& g, const PathWord& w) {
  return vertex_at(g, w, w.length());
}

inline bool is_closed(const GraphOfGroups& g, const PathWord& w) {
  return end_vertex(g, w) == w.start;
}

/*
 * Typing check. Positions interleave: syllable i sits at position 2i, step i
 * at position 2i+1.
 */
inline void check_word(const GraphOfGroups& g, const PathWord& w) {
  if (!g.graph.is_vertex(w.start)) throw TypeError("start is not a vertex cell", 0);
  if (w.syllables.size() != w.steps.size() + 1)
    throw TypeError("syllable count must exceed step count by one", 0);
  int v = w.start;
  for (int i = 0; i <= w.length(); ++i) {
    int s = w.syllables[i];
    if (s < 0 || s >= g.group(v).order())
      throw TypeError("group element out of range at " + g.graph.name(v), 2 * i);
    if (i == w.length()) break;
    const EdgeStep& st = w.steps[i];
    if (!g.graph.is_edge(st.edge_cell) || (st.sign != 1 && st.sign != -1))
      throw TypeError("not an edge traversal", 2 * i + 1);
    if (step_entry_vertex(g.graph, st) != v)
      throw TypeError("edge " + g.graph.name(st.edge_cell) + " does not start at " +
                          g.graph.name(v),
                      2 * i + 1);
    v = step_exit_vertex(g.graph, st);
  }
}

inline PathWord identity_word(const GraphOfGroups& g, int vertex) {
  PathWord w;
  w.start = vertex;
  w.syllables.push_back(g.group(vertex).identity());
  return w;
}

inline PathWord group_element_word(const GraphOfGroups& g, int vertex, int element) {
  PathWord w;
  w.start = vertex;
  w.syllables.push_back(element);
  return w;
}

namespace detail {

inline const ElementHom& entry_map(const GraphOfGroups& g, const EdgeStep& s) {
  return g.boundary(s.edge_cell, s.sign > 0 ? 0 : 1);
}

inline const ElementHom& exit_map(const GraphOfGroups& g, const EdgeStep& s) {
  return g.boundary(s.edge_cell, s.sign > 0 ? 1 : 0);
}

inline int hom_preimage(const ElementHom& f, const FiniteGroup& src, int value) {
  for (int x = 0; x < src.order(); ++x)
    if (f(x) == value) return x;
  return -1;
}

}  // namespace detail

/*
 * Britton-reduced canonical form: no pinch (e,s) g (e,-s) with g in the exit
 * image, and every syllable before a step is the least element of its left
 * coset of the entry image, remainders pushed through to the right. Two
 * words with the same endpoints represent the same element iff their
 * canonical forms coincide.
 */
struct NormalForm {
  PathWord word;
  bool reduced = false;
};

inline PathWord britton_reduce_word(const GraphOfGroups& g, PathWord w) {
  check_word(g, w);

  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i + 1 < w.length(); ++i) {
      const EdgeStep& a = w.steps[i];
      const EdgeStep& b = w.steps[i + 1];
      if (a.edge_cell != b.edge_cell || a.sign != -b.sign) continue;
      const FiniteGroup& ge = g.group(a.edge_cell);
      const ElementHom& exit = detail::exit_map(g, a);
      int x = detail::hom_preimage(exit, ge, w.syllables[i + 1]);
      if (x < 0) continue;
      const FiniteGroup& gv = g.group(step_entry_vertex(g.graph, a));
      int merged = gv.mul(gv.mul(w.syllables[i], detail::entry_map(g, a)(x)), w.syllables[i + 2]);
      w.syllables[i] = merged;
      w.syllables.erase(w.syllables.begin() + i + 1, w.syllables.begin() + i + 3);
      w.steps.erase(w.steps.begin() + i, w.steps.begin() + i + 2);
      changed = true;
      break;
    }
  }

  int v = w.start;
  for (int i = 0; i < w.length(); ++i) {
    const EdgeStep& st = w.steps[i];
    const FiniteGroup& gv = g.group(v);
    const FiniteGroup& ge = g.group(st.edge_cell);
    const ElementHom& entry = detail::entry_map(g, st);
    const ElementHom& exit = detail::exit_map(g, st);
    int best = w.syllables[i];
    int best_x = ge.identity();
    for (int x = 0; x < ge.order(); ++x) {
      int cand = gv.mul(w.syllables[i], entry(x));
      if (cand < best) {
        best = cand;
        best_x = x;
      }
    }
    w.syllables[i] = best;
    int push = exit(ge.inverse(best_x));
    int next_vertex = step_exit_vertex(g.graph, st);
    w.syllables[i + 1] = g.group(next_vertex).mul(push, w.syllables[i + 1]);
    v = next_vertex;
  }
  return w;
}

inline NormalForm britton_reduce(const GraphOfGroups& g, const PathWord& w) {
  return NormalForm{britton_reduce_word(g, w), true};
}

inline bool is_britton_reduced(const GraphOfGroups& g, const PathWord& w) {
  check_word(g, w);
  for (int i = 0; i + 1 < w.length(); ++i) {
    const EdgeStep& a = w.steps[i];
    const EdgeStep& b = w.steps[i + 1];
    if (a.edge_cell != b.edge_cell || a.sign != -b.sign) continue;
    if (detail::hom_preimage(detail::exit_map(g, a), g.group(a.edge_cell), w.syllables[i + 1]) >= 0)
      return false;
  }
  int v = w.start;
  for (int i = 0; i < w.length(); ++i) {
    const EdgeStep& st = w.steps[i];
    const FiniteGroup& gv = g.group(v);
    const FiniteGroup& ge = g.group(st.edge_cell);
    const ElementHom& entry = detail::entry_map(g, st);
    for (int x = 0; x < ge.order(); ++x)
      if (gv.mul(w.syllables[i], entry(x)) < w.syllables[i]) return false;
    v = step_exit_vertex(g.graph, st);
  }
  return true;
}

/* Concatenation without reduction; endpoints must match. */
inline PathWord concat(const GraphOfGroups& g, const PathWord& a, const PathWord& b) {
  int junction = end_vertex(g, a);
  if (junction != b.start)
    throw EndpointMismatch("product of a word ending at " + g.graph.name(junction) +
                           " with a word starting at " + g.graph.name(b.start));
  PathWord c;
  c.start = a.start;
  c.syllables = a.syllables;
  c.steps = a.steps;
  c.syllables.back() = g.group(junction).mul(c.syllables.back(), b.syllables.front());
  c.syllables.insert(c.syllables.end(), b.syllables.begin() + 1, b.syllables.end());
  c.steps.insert(c.steps.end(), b.steps.begin(), b.steps.end());
  return c;
}

inline PathWord multiply(const GraphOfGroups& g, const PathWord& a, const PathWord& b) {
  return britton_reduce_word(g, concat(g, a, b));
}

inline PathWord invert(const GraphOfGroups& g, const PathWord& w) {
  check_word(g, w);
  PathWord r;
  r.start = end_vertex(g, w);
  int n = w.length();
  r.syllables.reserve(n + 1);
  r.steps.reserve(n);
  int v = r.start;
  for (int i = n; i >= 0; --i) {
    r.syllables.push_back(g.group(v).inverse(w.syllables[i]));
    if (i == 0) break;
    EdgeStep st = w.steps[i - 1];
    st.sign = -st.sign;
    r.steps.push_back(st);
    v = step_exit_vertex(g.graph, st);
  }
  return r;
}

inline PathWord conjugate(const GraphOfGroups& g, const PathWord& by, const PathWord& w) {
  return multiply(g, multiply(g, by, w), invert(g, by));
}

inline bool equal(const GraphOfGroups& g, const PathWord& a, const PathWord& b) {
  if (a.start != b.start) return false;
  return britton_reduce_word(g, a) == britton_reduce_word(g, b);
}

inline bool is_identity(const GraphOfGroups& g, const PathWord& w) {
  PathWord r = britton_reduce_word(g, w);
  return r.length() == 0 && r.syllables[0] == g.group(r.start).identity();
}

/*
 * Conjugate a closed word until no pinch wraps around the base point. The
 * result has minimal edge length in its conjugacy class; `conjugator` c
 * satisfies  reduced = c^-1 w c.
 */
struct CyclicReduction {
  PathWord word;
  PathWord conjugator;
};

inline CyclicReduction cyclically_reduce(const GraphOfGroups& g, const PathWord& w0) {
  if (!is_closed(g, w0)) throw TypeError("cyclic reduction needs a closed word", 0);
  CyclicReduction r;
  r.word = britton_reduce_word(g, w0);
  r.conjugator = identity_word(g, w0.start);
  for (;;) {
    int n = r.word.length();
    if (n == 0) return r;
    const EdgeStep& last = r.word.steps[n - 1];
    const EdgeStep& first = r.word.steps[0];
    bool wrap = last.edge_cell == first.edge_cell && last.sign == -first.sign;
    if (wrap) {
      const FiniteGroup& gv = g.group(r.word.start);
      int around = gv.mul(r.word.syllables[n], r.word.syllables[0]);
      wrap = detail::hom_preimage(detail::exit_map(g, last), g.group(last.edge_cell), around) >= 0;
    }
    if (!wrap) return r;
    PathWord prefix;  // g0 (e1,s1) 1, an open word
    prefix.start = r.word.start;
    prefix.syllables = {r.word.syllables[0],
                        g.group(step_exit_vertex(g.graph, first)).identity()};
    prefix.steps = {first};
    r.conjugator = multiply(g, r.conjugator, prefix);
    r.word = britton_reduce_word(g, concat(g, concat(g, invert(g, prefix), r.word), prefix));
  }
}

/* Exact order for elliptic words, std::nullopt for infinite order. */
inline std::optional<long long> order_of(const GraphOfGroups& g, const PathWord& w) {
  if (!is_closed(g, w)) throw TypeError("order is defined for closed words", 0);
  CyclicReduction r = cyclically_reduce(g, w);
  if (r.word.length() > 0) return std::nullopt;
  return g.group(r.word.start).element_order(r.word.syllables[0]);
}

/*
 * Image in the fundamental group of the underlying graph: tree edges die,
 * group syllables die, the rest reduces freely.
 */
inline std::vector<EdgeStep> graph_projection(const GraphOfGroups& g, const PathWord& w) {
  check_word(g, w);
  std::vector<EdgeStep> out;
  for (const EdgeStep& st : w.steps) {
    if (g.in_tree(st.edge_cell)) continue;
    if (!out.empty() && out.back().edge_cell == st.edge_cell && out.back().sign == -st.sign)
      out.pop_back();
    else
      out.push_back(st);
  }
  return out;
}

/* Open word from the base along the tree, all syllables trivial. */
inline PathWord tree_path_word(const GraphOfGroups& g, int cell) {
  PathWord w;
  w.start = g.base_vertex;
  int v = g.base_vertex;
  w.syllables.push_back(g.group(v).identity());
  for (auto [edge_cell, sign] : tree_path_from_base(g, cell)) {
    EdgeStep st{edge_cell, sign};
    w.steps.push_back(st);
    v = step_exit_vertex(g.graph, st);
    w.syllables.push_back(g.group(v).identity());
  }
  return w;
}

/*
 * A closed word anywhere, conjugated to the base along the tree path; the
 * standard reading of a vertex element as a fundamental group element.
 */
inline PathWord based_word(const GraphOfGroups& g, const PathWord& w) {
  if (!is_closed(g, w)) throw TypeError("based_word wants a closed word", 0);
  if (w.start == g.base_vertex) return britton_reduce_word(g, w);
  PathWord path = tree_path_word(g, w.start);
  return britton_reduce_word(g, concat(g, concat(g, path, w), invert(g, path)));
}

/* Element s of the group at `cell`, embedded at the base by the tree path. */
inline PathWord embedded_element(const GraphOfGroups& g, int cell, int s) {
  PathWord path = tree_path_word(g, cell);
  int v = g.graph.is_vertex(cell) ? cell : g.graph.d0(cell);
  int elem = g.graph.is_vertex(cell) ? s : g.boundary(cell, 0)(s);
  PathWord mid = group_element_word(g, v, elem);
  return britton_reduce_word(g, concat(g, concat(g, path, mid), invert(g, path)));
}

/* The edge letter as a closed word at the base; trivial exactly for tree edges. */
inline PathWord edge_letter_word(const GraphOfGroups& g, int edge_cell) {
  PathWord head = tree_path_word(g, g.graph.d0(edge_cell));
  PathWord tail = tree_path_word(g, g.graph.d1(edge_cell));
  PathWord mid;
  mid.start = g.graph.d0(edge_cell);
  mid.syllables = {g.group(g.graph.d0(edge_cell)).identity(),
                   g.group(g.graph.d1(edge_cell)).identity()};
  mid.steps = {EdgeStep{edge_cell, +1}};
  return britton_reduce_word(g, concat(g, concat(g, head, mid), invert(g, tail)));
}

/*
 * Generating set of the fundamental group at the base: every nontrivial
 * vertex element embedded along the tree, plus one letter per non-tree edge.
 */
struct Pi1Generator {
  std::string name;
  PathWord word;
};

inline std::vector<Pi1Generator> pi1_generators(const GraphOfGroups& g) {
  std::vector<Pi1Generator> gens;
  for (int v = 0; v < g.graph.vertex_count; ++v) {
    const FiniteGroup& gv = g.group(v);
    for (int s = 0; s < gv.order(); ++s) {
      if (s == gv.identity()) continue;
      gens.push_back({g.graph.name(v) + "." + gv.label(s), embedded_element(g, v, s)});
    }
  }
  for (int i = 0; i < g.graph.edge_count(); ++i) {
    int e = g.graph.edge_cell(i);
    if (g.in_tree(e)) continue;
    gens.push_back({g.graph.name(e), edge_letter_word(g, e)});
  }
  return gens;
}

/* Word under a morphism of graphs of groups; typing is preserved by validity. */
inline PathWord map_word(const GraphOfGroups& src, const GraphOfGroups& dst,
                         const GoGMorphism& m, const PathWord& w) {
  check_word(src, w);
  PathWord out;
  out.start = m.cell_map[w.start];
  int v = w.start;
  for (int i = 0; i <= w.length(); ++i) {
    out.syllables.push_back(m.group_maps[v](w.syllables[i]));
    if (i == w.length()) break;
    const EdgeStep& st = w.steps[i];
    out.steps.push_back(EdgeStep{m.cell_map[st.edge_cell], st.sign});
    v = step_exit_vertex(src.graph, st);
  }
  return out;
}

}  // namespace gog
