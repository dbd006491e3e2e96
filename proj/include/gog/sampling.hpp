#pragma once

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "gog/graph_of_groups.hpp"
#include "gog/words.hpp"

namespace gog {

/*
 * Seeded word generators for self-checks and randomized batteries. All
 * randomness flows through the caller's engine, so a fixed seed reproduces
 * the exact sample.
 */

namespace detail {

/* Edge-ends leaving each vertex, as ready-made steps. */
inline std::vector<std::vector<EdgeStep>> outgoing_steps(const GraphOfGroups& g) {
  std::vector<std::vector<EdgeStep>> out(g.graph.vertex_count);
  for (int i = 0; i < g.graph.edge_count(); ++i) {
    int e = g.graph.edge_cell(i);
    out[g.graph.d0(e)].push_back(EdgeStep{e, +1});
    out[g.graph.d1(e)].push_back(EdgeStep{e, -1});
  }
  return out;
}

inline int random_element(const FiniteGroup& group, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, group.order() - 1);
  return pick(rng);
}

}  // namespace detail

/*
 * A random closed word at the base vertex: wander up to `forward_steps` edges,
 * return home along the spanning tree, then scramble every syllable. The edge
 * length is at most forward_steps plus the tree distance home.
 */
inline PathWord random_based_word(const GraphOfGroups& g, std::mt19937_64& rng,
                                  int forward_steps) {
  auto outgoing = detail::outgoing_steps(g);
  PathWord w;
  w.start = g.base_vertex;
  w.syllables.push_back(g.group(w.start).identity());
  int at = g.base_vertex;
  std::uniform_int_distribution<int> count(0, forward_steps);
  int wander = count(rng);
  for (int i = 0; i < wander; ++i) {
    const auto& options = outgoing[at];
    if (options.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    EdgeStep st = options[pick(rng)];
    w.steps.push_back(st);
    at = step_exit_vertex(g.graph, st);
    w.syllables.push_back(g.group(at).identity());
  }
  if (at != g.base_vertex) w = concat(g, w, invert(g, tree_path_word(g, at)));
  for (std::size_t i = 0; i < w.syllables.size(); ++i)
    w.syllables[i] = detail::random_element(g.group(vertex_at(g, w, static_cast<int>(i))), rng);
  return w;
}

/*
 * Rewrites that keep the group element fixed while changing the spelling.
 * A shift slides boundary-image material across a step; an expansion splices
 * in a pinch pair and compensates on the next syllable. Both are checked
 * identities of the boundary relations, so the result always equals `w`.
 */
inline PathWord random_shift(const GraphOfGroups& g, const PathWord& w, std::mt19937_64& rng) {
  if (w.length() == 0) return w;
  std::uniform_int_distribution<int> pick_step(0, w.length() - 1);
  int i = pick_step(rng);
  const EdgeStep& st = w.steps[i];
  const FiniteGroup& ge = g.group(st.edge_cell);
  int x = detail::random_element(ge, rng);
  const ElementHom& entry = detail::entry_map(g, st);
  const ElementHom& exit = detail::exit_map(g, st);
  PathWord out = w;
  const FiniteGroup& gv = g.group(step_entry_vertex(g.graph, st));
  const FiniteGroup& gu = g.group(step_exit_vertex(g.graph, st));
  out.syllables[i] = gv.mul(out.syllables[i], entry(x));
  out.syllables[i + 1] = gu.mul(exit(ge.inverse(x)), out.syllables[i + 1]);
  return out;
}

inline PathWord random_expansion(const GraphOfGroups& g, const PathWord& w,
                                 std::mt19937_64& rng) {
  auto outgoing = detail::outgoing_steps(g);
  std::uniform_int_distribution<int> pick_pos(0, w.length());
  int i = pick_pos(rng);
  int v = vertex_at(g, w, i);
  const auto& options = outgoing[v];
  if (options.empty()) return w;
  std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
  EdgeStep st = options[pick(rng)];
  EdgeStep back{st.edge_cell, -st.sign};
  const FiniteGroup& ge = g.group(st.edge_cell);
  int x = detail::random_element(ge, rng);
  const ElementHom& entry = detail::entry_map(g, st);
  const ElementHom& exit = detail::exit_map(g, st);

  PathWord out;
  out.start = w.start;
  out.syllables.assign(w.syllables.begin(), w.syllables.begin() + i + 1);
  out.steps.assign(w.steps.begin(), w.steps.begin() + i);
  /* (st) exit(x) (back) equals entry(x) in the group at v; the trailing
     entry(x)^-1 cancels it, so the value is unchanged. */
  out.steps.push_back(st);
  out.syllables.push_back(exit(x));
  out.steps.push_back(back);
  out.syllables.push_back(entry(ge.inverse(x)));
  out.steps.insert(out.steps.end(), w.steps.begin() + i, w.steps.end());
  out.syllables.insert(out.syllables.end(), w.syllables.begin() + i + 1, w.syllables.end());
  return out;
}

/* Apply `expansions` pinch splices and `shifts` slides in random order. */
inline PathWord random_disguise(const GraphOfGroups& g, const PathWord& w, std::mt19937_64& rng,
                                int expansions, int shifts) {
  PathWord out = w;
  std::vector<int> plan;
  plan.insert(plan.end(), expansions, 0);
  plan.insert(plan.end(), shifts, 1);
  std::shuffle(plan.begin(), plan.end(), rng);
  for (int kind : plan)
    out = kind == 0 ? random_expansion(g, out, rng) : random_shift(g, out, rng);
  return out;
}

}  // namespace gog
