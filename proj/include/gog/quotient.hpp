#pragma once

#include <atomic>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gog/catalog.hpp"
#include "gog/errors.hpp"
#include "gog/graph_of_groups.hpp"
#include "gog/presentation.hpp"
#include "gog/words.hpp"

namespace gog {

/*
 * A finite quotient of the fundamental group: one group map per vertex cell
 * (the image of the embedded copy) and one target element per edge (the
 * image of the edge letter, forced trivial on tree edges), subject to the
 * boundary relation at every edge.
 */
struct FiniteQuotient {
  std::string target_name;
  FiniteGroup target;
  std::vector<ElementHom> vertex_maps;  // per vertex cell
  std::vector<int> edge_images;         // per edge index
  bool vertex_faithful = false;
  bool surjective = false;

  std::vector<int> key() const {
    std::vector<int> k;
    for (const ElementHom& f : vertex_maps)
      k.insert(k.end(), f.image.begin(), f.image.end());
    k.insert(k.end(), edge_images.begin(), edge_images.end());
    return k;
  }
};

inline int eval(const GraphOfGroups& g, const FiniteQuotient& q, const PathWord& w) {
  check_word(g, w);
  int acc = q.target.identity();
  int v = w.start;
  for (int i = 0; i <= w.length(); ++i) {
    acc = q.target.mul(acc, q.vertex_maps[v](w.syllables[i]));
    if (i == w.length()) break;
    const EdgeStep& st = w.steps[i];
    int img = q.edge_images[g.graph.edge_index(st.edge_cell)];
    acc = q.target.mul(acc, st.sign > 0 ? img : q.target.inverse(img));
    v = step_exit_vertex(g.graph, st);
  }
  return acc;
}

/* Images of the presentation generators, aligned with to_presentation(g). */
inline std::vector<int> presentation_images(const GraphOfGroups& g, const Presentation& pres,
                                            const FiniteQuotient& q) {
  std::vector<int> images;
  images.reserve(pres.generators.size());
  for (const auto& gen : pres.generators) {
    if (g.graph.is_vertex(gen.cell))
      images.push_back(q.vertex_maps[gen.cell](gen.element));
    else
      images.push_back(q.edge_images[g.graph.edge_index(gen.cell)]);
  }
  return images;
}

/* Relator re-verification, independent of how the quotient was found. */
inline bool quotient_valid(const GraphOfGroups& g, const Presentation& pres,
                           const FiniteQuotient& q) {
  for (int v = 0; v < g.graph.vertex_count; ++v)
    if (!is_homomorphism(q.vertex_maps[v], g.group(v), q.target)) return false;
  for (int i = 0; i < g.graph.edge_count(); ++i)
    if (g.in_tree(g.graph.edge_cell(i)) && q.edge_images[i] != q.target.identity()) return false;
  std::vector<int> images = presentation_images(g, pres, q);
  for (const auto& rel : pres.relators) {
    int acc = q.target.identity();
    for (int t : rel) {
      int img = images[std::abs(t) - 1];
      acc = q.target.mul(acc, t > 0 ? img : q.target.inverse(img));
    }
    if (acc != q.target.identity()) return false;
  }
  return true;
}

namespace detail {

/* Every homomorphism src -> dst, deterministically ordered. */
inline std::vector<ElementHom> all_homomorphisms(const FiniteGroup& src, const FiniteGroup& dst) {
  std::vector<int> gens = small_generating_set(src);
  if (gens.empty()) {
    ElementHom triv;
    triv.image.assign(src.order(), dst.identity());
    return {triv};
  }
  std::vector<std::vector<int>> expr(src.order());
  std::vector<char> have(src.order(), 0);
  std::vector<int> queue{src.identity()};
  have[src.identity()] = 1;
  for (std::size_t at = 0; at < queue.size(); ++at)
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      int next = src.mul(queue[at], gens[gi]);
      if (!have[next]) {
        have[next] = 1;
        expr[next] = expr[queue[at]];
        expr[next].push_back(static_cast<int>(gi));
        queue.push_back(next);
      }
    }

  std::vector<ElementHom> out;
  std::vector<int> images(gens.size());
  std::vector<int> stack{0};
  while (!stack.empty()) {
    if (stack.size() == gens.size() + 1) {
      ElementHom f;
      f.image.resize(src.order());
      for (int x = 0; x < src.order(); ++x) {
        int acc = dst.identity();
        for (int gi : expr[x]) acc = dst.mul(acc, images[gi]);
        f.image[x] = acc;
      }
      if (is_homomorphism(f, src, dst)) out.push_back(std::move(f));
      stack.pop_back();
      if (!stack.empty()) ++stack.back();
      continue;
    }
    if (stack.back() >= dst.order()) {
      stack.pop_back();
      if (!stack.empty()) ++stack.back();
      continue;
    }
    int level = static_cast<int>(stack.size()) - 1;
    int cand = stack.back();
    if (src.element_order(gens[level]) % dst.element_order(cand) != 0) {
      ++stack.back();
      continue;
    }
    images[level] = cand;
    stack.push_back(0);
  }
  return out;
}

inline bool edge_relation_holds(const GraphOfGroups& g, const FiniteGroup& target,
                                const std::vector<ElementHom>& vertex_maps, int edge_index,
                                int q_e) {
  int e = g.graph.edge_cell(edge_index);
  const FiniteGroup& ge = g.group(e);
  const ElementHom& f0 = vertex_maps[g.graph.d0(e)];
  const ElementHom& f1 = vertex_maps[g.graph.d1(e)];
  for (int x : small_generating_set(ge)) {
    int lhs = f0(g.boundary(e, 0)(x));
    int rhs = target.conjugate(q_e, f1(g.boundary(e, 1)(x)));
    if (lhs != rhs) return false;
  }
  return true;
}

inline bool quotient_surjective(const GraphOfGroups& g, const FiniteQuotient& q) {
  std::vector<int> gens;
  for (int v = 0; v < g.graph.vertex_count; ++v)
    for (int x = 0; x < g.group(v).order(); ++x) gens.push_back(q.vertex_maps[v](x));
  for (int img : q.edge_images) gens.push_back(img);
  return subgroup_closure(q.target, gens).order() == q.target.order();
}

/* Least data vector over the automorphism orbit; makes dedup canonical. */
inline void canonicalize_under_automorphisms(FiniteQuotient& q,
                                             const std::vector<ElementHom>& auts) {
  std::vector<int> best = q.key();
  const ElementHom* best_aut = nullptr;
  for (const ElementHom& a : auts) {
    std::vector<int> k;
    k.reserve(best.size());
    for (const ElementHom& f : q.vertex_maps)
      for (int img : f.image) k.push_back(a(img));
    for (int img : q.edge_images) k.push_back(a(img));
    if (k < best) {
      best = std::move(k);
      best_aut = &a;
    }
  }
  if (!best_aut) return;
  for (ElementHom& f : q.vertex_maps)
    for (int& img : f.image) img = (*best_aut)(img);
  for (int& img : q.edge_images) img = (*best_aut)(img);
}

}  // namespace detail

struct EnumerateOptions {
  bool require_vertex_faithful = false;
  bool require_surjective = false;
  bool dedup_by_automorphism = true;
  int max_quotients = 200000;
  int jobs = 1;
};

/* All quotient data onto/into one target group. */
inline std::vector<FiniteQuotient> quotients_into(const GraphOfGroups& g,
                                                  const CatalogEntry& entry,
                                                  const EnumerateOptions& opts) {
  const FiniteGroup& target = entry.group;
  const int nv = g.graph.vertex_count;
  const int ne = g.graph.edge_count();

  std::vector<std::vector<ElementHom>> vertex_choices(nv);
  for (int v = 0; v < nv; ++v) {
    vertex_choices[v] = detail::all_homomorphisms(g.group(v), target);
    if (opts.require_vertex_faithful) {
      std::vector<ElementHom> kept;
      for (ElementHom& f : vertex_choices[v])
        if (is_injective(f)) kept.push_back(std::move(f));
      vertex_choices[v] = std::move(kept);
    }
    if (vertex_choices[v].empty()) return {};
  }

  std::vector<ElementHom> auts;
  if (opts.dedup_by_automorphism) auts = automorphisms(target);

  std::vector<FiniteQuotient> found;
  std::vector<int> pick(nv, 0);
  for (;;) {
    std::vector<ElementHom> vertex_maps;
    vertex_maps.reserve(nv);
    for (int v = 0; v < nv; ++v) vertex_maps.push_back(vertex_choices[v][pick[v]]);

    /* Per edge: admissible letter images; tree edges must admit the identity. */
    std::vector<std::vector<int>> edge_choices(ne);
    bool viable = true;
    for (int i = 0; i < ne && viable; ++i) {
      if (g.in_tree(g.graph.edge_cell(i))) {
        if (detail::edge_relation_holds(g, target, vertex_maps, i, target.identity()))
          edge_choices[i] = {target.identity()};
        else
          viable = false;
      } else {
        for (int q_e = 0; q_e < target.order(); ++q_e)
          if (detail::edge_relation_holds(g, target, vertex_maps, i, q_e))
            edge_choices[i].push_back(q_e);
        if (edge_choices[i].empty()) viable = false;
      }
    }

    if (viable) {
      std::vector<int> epick(ne, 0);
      for (;;) {
        FiniteQuotient q;
        q.target_name = entry.name;
        q.target = target;
        q.vertex_maps = vertex_maps;
        q.edge_images.resize(ne);
        for (int i = 0; i < ne; ++i) q.edge_images[i] = edge_choices[i][epick[i]];
        q.vertex_faithful = true;
        for (int v = 0; v < nv; ++v)
          if (!is_injective(q.vertex_maps[v])) q.vertex_faithful = false;
        q.surjective = detail::quotient_surjective(g, q);
        if (!opts.require_surjective || q.surjective) {
          if (opts.dedup_by_automorphism)
            detail::canonicalize_under_automorphisms(q, auts);
          found.push_back(std::move(q));
          if (static_cast<int>(found.size()) > opts.max_quotients)
            throw BudgetExceeded("quotient enumeration passed " +
                                     std::to_string(opts.max_quotients),
                                 opts.max_quotients);
        }
        int at = ne - 1;
        while (at >= 0 && ++epick[at] >= static_cast<int>(edge_choices[at].size()))
          epick[at--] = 0;
        if (at < 0) break;
      }
    }

    int at = nv - 1;
    while (at >= 0 && ++pick[at] >= static_cast<int>(vertex_choices[at].size())) pick[at--] = 0;
    if (at < 0) break;
  }

  if (opts.dedup_by_automorphism) {
    std::sort(found.begin(), found.end(),
              [](const FiniteQuotient& a, const FiniteQuotient& b) { return a.key() < b.key(); });
    found.erase(std::unique(found.begin(), found.end(),
                            [](const FiniteQuotient& a, const FiniteQuotient& b) {
                              return a.key() == b.key();
                            }),
                found.end());
  }
  return found;
}

inline std::vector<FiniteQuotient> enumerate_quotients(
    const GraphOfGroups& g, const std::vector<const CatalogEntry*>& entries,
    const EnumerateOptions& opts = {}) {
  std::vector<std::vector<FiniteQuotient>> per_entry(entries.size());
  if (opts.jobs > 1 && entries.size() > 1) {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= entries.size()) return;
        per_entry[i] = quotients_into(g, *entries[i], opts);
      }
    };
    std::vector<std::thread> pool;
    int n = std::min<int>(opts.jobs, static_cast<int>(entries.size()));
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  } else {
    for (std::size_t i = 0; i < entries.size(); ++i)
      per_entry[i] = quotients_into(g, *entries[i], opts);
  }
  std::vector<FiniteQuotient> out;
  std::size_t total = 0;
  for (const auto& part : per_entry) total += part.size();
  if (static_cast<int>(total) > opts.max_quotients)
    throw BudgetExceeded("quotient enumeration passed " + std::to_string(opts.max_quotients),
                         opts.max_quotients);
  out.reserve(total);
  for (auto& part : per_entry)
    for (FiniteQuotient& q : part) out.push_back(std::move(q));
  return out;
}

inline long long kernel_rank(const GraphOfGroups& g, const FiniteQuotient& q) {
  if (!q.vertex_faithful)
    throw NotVertexFaithful("kernel rank is defined for vertex-faithful quotients");
  if (!q.surjective)
    throw PreconditionFailed("kernel rank needs a surjective quotient (finite index)");
  Rational chi = euler_characteristic(g);
  Rational rank = Rational(1) - Rational(q.target.order()) * chi;
  if (rank.denominator() != 1)
    throw PreconditionFailed("kernel rank came out non-integral");  // unreachable when faithful
  return rank.numerator();
}

/*
 * Quotient stage: cells of the base graph collapse when their data in the
 * target agree — for vertices the image subgroup, for edges the endpoint
 * classes together with the edge group image and the edge letter image. Each
 * class carries the common image subgroup as its group.
 */
struct QuotientStage {
  FiniteQuotient quot;
  std::vector<int> cell_class;  // base cell -> stage cell
  GraphOfGroups stage;
  GoGMorphism projection;

  int vertex_classes() const { return stage.graph.vertex_count; }
  int edge_classes() const { return stage.graph.edge_count(); }
};

inline QuotientStage quotient_stage(const GraphOfGroups& g, const FiniteQuotient& q) {
  QuotientStage out;
  out.quot = q;
  out.cell_class.assign(g.graph.cell_count(), -1);

  std::vector<std::vector<int>> vertex_image(g.graph.vertex_count);
  for (int v = 0; v < g.graph.vertex_count; ++v)
    vertex_image[v] = image_elements(q.vertex_maps[v]);

  std::map<std::vector<int>, int> vclass;
  std::vector<std::vector<int>> vclass_image;
  std::vector<std::string> vclass_name;
  for (int v = 0; v < g.graph.vertex_count; ++v) {
    auto [it, fresh] = vclass.emplace(vertex_image[v], static_cast<int>(vclass.size()));
    out.cell_class[v] = it->second;
    if (fresh) {
      vclass_image.push_back(vertex_image[v]);
      vclass_name.push_back(g.graph.name(v));
    } else {
      vclass_name[it->second] += "+" + g.graph.name(v);
    }
  }
  const int nvc = static_cast<int>(vclass.size());

  struct EdgeKey {
    int c0, c1, letter;
    std::vector<int> image;
    bool operator<(const EdgeKey& o) const {
      if (c0 != o.c0) return c0 < o.c0;
      if (c1 != o.c1) return c1 < o.c1;
      if (letter != o.letter) return letter < o.letter;
      return image < o.image;
    }
  };
  std::map<EdgeKey, int> eclass;
  std::vector<EdgeKey> eclass_key;
  std::vector<std::string> eclass_name;
  for (int i = 0; i < g.graph.edge_count(); ++i) {
    int e = g.graph.edge_cell(i);
    std::vector<int> img;
    for (int x = 0; x < g.group(e).order(); ++x)
      img.push_back(q.vertex_maps[g.graph.d0(e)](g.boundary(e, 0)(x)));
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    EdgeKey key{out.cell_class[g.graph.d0(e)], out.cell_class[g.graph.d1(e)], q.edge_images[i],
                std::move(img)};
    auto [it, fresh] = eclass.emplace(key, static_cast<int>(eclass.size()));
    out.cell_class[e] = nvc + it->second;
    if (fresh) {
      eclass_key.push_back(it->first);
      eclass_name.push_back(g.graph.name(e));
    } else {
      eclass_name[it->second] += "+" + g.graph.name(e);
    }
  }
  const int nec = static_cast<int>(eclass.size());

  out.stage.graph.vertex_count = nvc;
  out.stage.graph.names = vclass_name;
  for (int c = 0; c < nec; ++c) {
    out.stage.graph.edges.push_back({eclass_key[c].c0, eclass_key[c].c1});
    out.stage.graph.names.push_back(eclass_name[c]);
  }
  for (int c = 0; c < nvc; ++c)
    out.stage.groups.push_back(group_on_subset(q.target, vclass_image[c]));
  for (int c = 0; c < nec; ++c)
    out.stage.groups.push_back(group_on_subset(q.target, eclass_key[c].image));

  auto index_in = [](const std::vector<int>& sorted, int value) {
    return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), value) -
                            sorted.begin());
  };
  for (int c = 0; c < nec; ++c) {
    const EdgeKey& key = eclass_key[c];
    ElementHom f0, f1;
    for (int x : key.image) {
      f0.image.push_back(index_in(vclass_image[key.c0], x));
      f1.image.push_back(index_in(vclass_image[key.c1],
                                  q.target.conjugate(q.target.inverse(key.letter), x)));
    }
    out.stage.into_source.push_back(std::move(f0));
    out.stage.into_target.push_back(std::move(f1));
  }
  out.stage.base_vertex = out.cell_class[g.base_vertex];
  out.stage.tree_edges = bfs_spanning_tree(out.stage.graph, out.stage.base_vertex);

  out.projection.cell_map = out.cell_class;
  out.projection.group_maps.resize(g.graph.cell_count());
  for (int v = 0; v < g.graph.vertex_count; ++v) {
    ElementHom f;
    for (int x = 0; x < g.group(v).order(); ++x)
      f.image.push_back(index_in(vclass_image[out.cell_class[v]], q.vertex_maps[v](x)));
    out.projection.group_maps[v] = std::move(f);
  }
  for (int i = 0; i < g.graph.edge_count(); ++i) {
    int e = g.graph.edge_cell(i);
    const EdgeKey& key = eclass_key[out.cell_class[e] - nvc];
    ElementHom f;
    for (int x = 0; x < g.group(e).order(); ++x)
      f.image.push_back(index_in(key.image, q.vertex_maps[g.graph.d0(e)](g.boundary(e, 0)(x))));
    out.projection.group_maps[e] = std::move(f);
  }
  return out;
}

inline bool stage_reduced(const QuotientStage& qs) { return is_reduced(qs.stage); }

}  // namespace gog
