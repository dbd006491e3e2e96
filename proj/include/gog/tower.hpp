#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gog/errors.hpp"
#include "gog/quotient.hpp"

namespace gog {

/*
 * Link from a finer stage to a coarser one: delta carries the target of the
 * finer quotient onto the target of the coarser, alpha the induced map of
 * stage graphs of groups. The induced map of stage fundamental groups is
 * map_word along alpha.
 */
struct TowerMorphism {
  int finer = -1;
  int coarser = -1;
  ElementHom delta;   // target of finer -> target of coarser
  GoGMorphism alpha;  // stage of finer  -> stage of coarser
};

namespace detail {

/*
 * Graph closure in QV x QU over the presentation generator image pairs: a
 * connecting map exists exactly when the closure is the graph of a function,
 * which happens exactly when ker(finer) lies in ker(coarser).
 */
inline std::optional<ElementHom> connecting_delta(const FiniteGroup& qv, const FiniteGroup& qu,
                                                  const std::vector<int>& images_v,
                                                  const std::vector<int>& images_u) {
  std::vector<std::pair<int, int>> pairs{{qv.identity(), qu.identity()}};
  std::map<std::pair<int, int>, char> seen{{pairs[0], 1}};
  std::vector<std::pair<int, int>> gens;
  for (std::size_t i = 0; i < images_v.size(); ++i) gens.emplace_back(images_v[i], images_u[i]);
  for (std::size_t at = 0; at < pairs.size(); ++at)
    for (const auto& [gv, gu] : gens) {
      std::pair<int, int> next{qv.mul(pairs[at].first, gv), qu.mul(pairs[at].second, gu)};
      if (seen.emplace(next, 1).second) pairs.push_back(next);
    }
  ElementHom delta;
  delta.image.assign(qv.order(), -1);
  for (const auto& [a, b] : pairs) {
    if (delta.image[a] >= 0 && delta.image[a] != b) return std::nullopt;
    delta.image[a] = b;
  }
  for (int v : delta.image)
    if (v < 0) return std::nullopt;  // finer quotient not surjective
  return delta;
}

}  // namespace detail

inline std::optional<TowerMorphism> connecting(const GraphOfGroups& g, const Presentation& pres,
                                               const QuotientStage& fine,
                                               const QuotientStage& coarse) {
  std::vector<int> images_v = presentation_images(g, pres, fine.quot);
  std::vector<int> images_u = presentation_images(g, pres, coarse.quot);
  auto delta = detail::connecting_delta(fine.quot.target, coarse.quot.target, images_v, images_u);
  if (!delta) return std::nullopt;

  TowerMorphism m;
  m.delta = *delta;

  /* Classes refine along delta, so the cell map factors through the base. */
  m.alpha.cell_map.assign(fine.stage.graph.cell_count(), -1);
  for (int c = 0; c < g.graph.cell_count(); ++c) {
    int fc = fine.cell_class[c];
    int cc = coarse.cell_class[c];
    if (m.alpha.cell_map[fc] >= 0 && m.alpha.cell_map[fc] != cc) return std::nullopt;
    m.alpha.cell_map[fc] = cc;
  }

  m.alpha.group_maps.resize(fine.stage.graph.cell_count());
  for (int fc = 0; fc < fine.stage.graph.cell_count(); ++fc) {
    const FiniteGroup& src = fine.stage.group(fc);
    const FiniteGroup& dst = coarse.stage.group(m.alpha.cell_map[fc]);
    ElementHom f;
    f.image.reserve(src.order());
    for (int x = 0; x < src.order(); ++x) {
      int qv_elem = fine.quot.target.element_by_label(src.label(x)).value();
      int qu_elem = m.delta(qv_elem);
      f.image.push_back(dst.element_by_label(coarse.quot.target.label(qu_elem)).value());
    }
    m.alpha.group_maps[fc] = std::move(f);
  }
  return m;
}

/*
 * The finite family of vertex-faithful surjective stages within a catalog
 * bound, in catalog order, with every existing link precomputed.
 */
struct Tower {
  std::vector<QuotientStage> stages;
  std::vector<std::vector<std::optional<TowerMorphism>>> links;  // [finer][coarser]

  int size() const { return static_cast<int>(stages.size()); }
  const std::optional<TowerMorphism>& link(int finer, int coarser) const {
    return links[finer][coarser];
  }
};

struct TowerOptions {
  int max_order = 24;
  std::string group_class = "all";
  int jobs = 1;
  bool with_links = true;
};

inline Tower build_tower(const GraphOfGroups& g, const TowerOptions& topts = {}) {
  Tower t;
  EnumerateOptions eopts;
  eopts.require_vertex_faithful = true;
  eopts.require_surjective = true;
  eopts.dedup_by_automorphism = true;
  eopts.jobs = topts.jobs;
  for (FiniteQuotient& q :
       enumerate_quotients(g, catalog_up_to(topts.max_order, topts.group_class), eopts))
    t.stages.push_back(quotient_stage(g, q));

  Presentation pres = to_presentation(g);
  t.links.assign(t.stages.size(), std::vector<std::optional<TowerMorphism>>(t.stages.size()));
  if (topts.with_links) {
    for (int i = 0; i < t.size(); ++i)
      for (int j = 0; j < t.size(); ++j) {
        if (i == j) continue;
        auto m = connecting(g, pres, t.stages[i], t.stages[j]);
        if (m) {
          m->finer = i;
          m->coarser = j;
          t.links[i][j] = std::move(m);
        }
      }
  }
  return t;
}

/*
 * Commutativity of the square y -> u -> w against y -> z -> w, checked on
 * cells, on every stage group element, and on the stage fundamental group
 * generators (comparing canonical forms in stage w).
 */
inline bool check_square(const GraphOfGroups& g, const Tower& t, int y, int z, int u, int w) {
  const auto& yu = t.link(y, u);
  const auto& uw = t.link(u, w);
  const auto& yz = t.link(y, z);
  const auto& zw = t.link(z, w);
  if (!yu || !uw || !yz || !zw)
    throw MissingMorphism("square " + std::to_string(y) + "," + std::to_string(z) + "," +
                          std::to_string(u) + "," + std::to_string(w) +
                          " is missing a connecting morphism");
  (void)g;
  const QuotientStage& sy = t.stages[y];
  const QuotientStage& sw = t.stages[w];

  for (int c = 0; c < sy.stage.graph.cell_count(); ++c) {
    int via_u = uw->alpha.cell_map[yu->alpha.cell_map[c]];
    int via_z = zw->alpha.cell_map[yz->alpha.cell_map[c]];
    if (via_u != via_z) return false;
    for (int x = 0; x < sy.stage.group(c).order(); ++x) {
      int img_u = uw->alpha.group_maps[yu->alpha.cell_map[c]](yu->alpha.group_maps[c](x));
      int img_z = zw->alpha.group_maps[yz->alpha.cell_map[c]](yz->alpha.group_maps[c](x));
      if (img_u != img_z) return false;
    }
  }
  for (const Pi1Generator& gen : pi1_generators(sy.stage)) {
    PathWord via_u = map_word(t.stages[u].stage, sw.stage, uw->alpha,
                              map_word(sy.stage, t.stages[u].stage, yu->alpha, gen.word));
    PathWord via_z = map_word(t.stages[z].stage, sw.stage, zw->alpha,
                              map_word(sy.stage, t.stages[z].stage, yz->alpha, gen.word));
    if (!equal(sw.stage, via_u, via_z)) return false;
  }
  return true;
}

/* First stage whose classes tell the two cells apart. */
inline std::optional<int> separate_cells(const GraphOfGroups& g, const Tower& t, int m1, int m2) {
  if (m1 == m2) throw PreconditionFailed("separate_cells wants two distinct cells");
  if (g.graph.is_vertex(m1) != g.graph.is_vertex(m2))
    return t.size() > 0 ? std::optional<int>(0) : std::nullopt;  // types never merge
  for (int i = 0; i < t.size(); ++i)
    if (t.stages[i].cell_class[m1] != t.stages[i].cell_class[m2]) return i;
  return std::nullopt;
}

inline std::string describe_stage(const GraphOfGroups& g, const QuotientStage& qs, int index) {
  std::ostringstream out;
  out << "stage " << index << " target " << qs.quot.target_name << " order "
      << qs.quot.target.order() << "\n";
  for (int v = 0; v < g.graph.vertex_count; ++v) {
    out << "  vertex " << g.graph.name(v) << " ->";
    for (int x = 0; x < g.group(v).order(); ++x)
      out << " " << qs.quot.target.label(qs.quot.vertex_maps[v](x));
    out << "\n";
  }
  for (int i = 0; i < g.graph.edge_count(); ++i)
    out << "  edge " << g.graph.name(g.graph.edge_cell(i)) << " -> "
        << qs.quot.target.label(qs.quot.edge_images[i]) << "\n";
  out << "  classes";
  for (int c = 0; c < g.graph.cell_count(); ++c)
    out << " " << g.graph.name(c) << ":" << qs.cell_class[c];
  out << "\n  stage graph " << qs.stage.graph.vertex_count << " vertices "
      << qs.stage.graph.edge_count() << " edges\n";
  return out.str();
}

inline std::string serialize_tower(const GraphOfGroups& g, const Tower& t) {
  std::ostringstream out;
  out << "tower stages " << t.size() << "\n";
  for (int i = 0; i < t.size(); ++i) out << describe_stage(g, t.stages[i], i);
  out << "links\n";
  for (int i = 0; i < t.size(); ++i)
    for (int j = 0; j < t.size(); ++j) {
      if (!t.links[i][j]) continue;
      out << "  " << i << " -> " << j << " delta";
      for (int x = 0; x < t.stages[i].quot.target.order(); ++x)
        out << " " << t.stages[j].quot.target.label(t.links[i][j]->delta(x));
      out << "\n";
    }
  return out.str();
}

}  // namespace gog
