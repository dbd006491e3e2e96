#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gog/graph_of_groups.hpp"
#include "gog/words.hpp"

namespace gog {

/*
 * Finite presentation of the fundamental group: one generator per nontrivial
 * vertex element and per edge letter. Relator letters are signed generator
 * indices, +(-)(i+1) for generator i (inverted).
 */
struct Presentation {
  struct Generator {
    std::string name;
    int cell = 0;
    int element = -1;  // -1 marks an edge letter
  };
  using Word = std::vector<int>;

  std::vector<Generator> generators;
  std::vector<Word> relators;

  int generator_count() const { return static_cast<int>(generators.size()); }

  int index_of(int cell, int element) const {
    for (int i = 0; i < generator_count(); ++i)
      if (generators[i].cell == cell && generators[i].element == element) return i;
    return -1;
  }
};

inline Presentation to_presentation(const GraphOfGroups& g) {
  Presentation p;
  std::map<std::pair<int, int>, int> index;
  for (int v = 0; v < g.graph.vertex_count; ++v) {
    const FiniteGroup& gv = g.group(v);
    for (int s = 0; s < gv.order(); ++s) {
      if (s == gv.identity()) continue;
      index[{v, s}] = p.generator_count();
      p.generators.push_back({g.graph.name(v) + "." + gv.label(s), v, s});
    }
  }
  for (int i = 0; i < g.graph.edge_count(); ++i) {
    int e = g.graph.edge_cell(i);
    index[{e, -1}] = p.generator_count();
    p.generators.push_back({g.graph.name(e), e, -1});
  }

  auto vertex_letter = [&](int v, int s) { return index.at({v, s}) + 1; };
  auto edge_letter = [&](int e) { return index.at({e, -1}) + 1; };

  for (int v = 0; v < g.graph.vertex_count; ++v) {
    const FiniteGroup& gv = g.group(v);
    for (int x = 0; x < gv.order(); ++x) {
      if (x == gv.identity()) continue;
      for (int y = 0; y < gv.order(); ++y) {
        if (y == gv.identity()) continue;
        int xy = gv.mul(x, y);
        Presentation::Word r{vertex_letter(v, x), vertex_letter(v, y)};
        if (xy != gv.identity()) r.push_back(-vertex_letter(v, xy));
        p.relators.push_back(std::move(r));
      }
    }
  }
  for (int i = 0; i < g.graph.edge_count(); ++i) {
    int e = g.graph.edge_cell(i);
    const FiniteGroup& ge = g.group(e);
    int v0 = g.graph.d0(e), v1 = g.graph.d1(e);
    for (int x : small_generating_set(ge)) {
      /* e^-1 d0(x) e d1(x)^-1 */
      p.relators.push_back({-edge_letter(e), vertex_letter(v0, g.into_source[i](x)),
                            edge_letter(e), -vertex_letter(v1, g.into_target[i](x))});
    }
    if (g.in_tree(e)) p.relators.push_back({edge_letter(e)});
  }
  return p;
}

/* The closed word a presentation generator denotes, at the base vertex. */
inline PathWord generator_word(const GraphOfGroups& g, const Presentation::Generator& gen) {
  if (gen.element >= 0) return embedded_element(g, gen.cell, gen.element);
  return edge_letter_word(g, gen.cell);
}

}  // namespace gog
