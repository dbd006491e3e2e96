#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "gog/errors.hpp"
#include "gog/finite_group.hpp"

namespace gog {

/*
 * Built-in groups of order up to 24, as permutation groups. Curated rather
 * than exhaustive: cyclics, abelian products, dihedrals (named by order),
 * quaternion and dicyclic, symmetric and alternating, and one Frobenius
 * group. Enough to separate everything in the corpus.
 */
struct CatalogEntry {
  std::string name;
  FiniteGroup group;
};

namespace detail {

inline Permutation cycle_on(int degree, int offset, int length) {
  Permutation p(degree);
  for (int i = 0; i < degree; ++i) p[i] = i;
  for (int i = 0; i < length; ++i) p[offset + i] = offset + (i + 1) % length;
  return p;
}

inline Permutation reflection_on(int degree, int offset, int length) {
  Permutation p(degree);
  for (int i = 0; i < degree; ++i) p[i] = i;
  for (int i = 0; i < length; ++i) p[offset + i] = offset + (length - i) % length;
  return p;
}

inline Permutation transposition(int degree, int a, int b) {
  Permutation p(degree);
  for (int i = 0; i < degree; ++i) p[i] = i;
  std::swap(p[a], p[b]);
  return p;
}

inline FiniteGroup cyclic(int n) {
  if (n == 1) return FiniteGroup::from_table({{0}}, {"()"});
  return FiniteGroup::from_permutations(n, {cycle_on(n, 0, n)});
}

inline FiniteGroup product_of_cycles(const std::vector<int>& lengths) {
  int degree = 0;
  for (int n : lengths) degree += n;
  std::vector<Permutation> gens;
  int offset = 0;
  for (int n : lengths) {
    gens.push_back(cycle_on(degree, offset, n));
    offset += n;
  }
  return FiniteGroup::from_permutations(degree, gens);
}

inline FiniteGroup dihedral_of_order(int order) {
  int n = order / 2;
  return FiniteGroup::from_permutations(n, {cycle_on(n, 0, n), reflection_on(n, 0, n)});
}

inline FiniteGroup quaternion8() {
  return FiniteGroup::from_permutations(
      8, {{1, 2, 3, 0, 5, 6, 7, 4}, {4, 7, 6, 5, 2, 1, 0, 3}});
}

inline FiniteGroup dicyclic12() {
  Permutation x = cycle_on(7, 0, 3);
  Permutation y{0, 2, 1, 4, 5, 6, 3};
  return FiniteGroup::from_permutations(7, {x, y});
}

inline FiniteGroup frobenius21() {
  Permutation a = cycle_on(7, 0, 7);
  Permutation b(7);
  for (int i = 0; i < 7; ++i) b[i] = (2 * i) % 7;
  return FiniteGroup::from_permutations(7, {a, b});
}

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    using namespace detail;
    std::vector<CatalogEntry> out;
    out.push_back({"C1", cyclic(1)});
    for (int n = 2; n <= 24; ++n) out.push_back({"C" + std::to_string(n), cyclic(n)});
    out.push_back({"C2xC2", product_of_cycles({2, 2})});
    out.push_back({"C2xC4", product_of_cycles({2, 4})});
    out.push_back({"C2xC6", product_of_cycles({2, 6})});
    out.push_back({"C2xC8", product_of_cycles({2, 8})});
    out.push_back({"C2xC10", product_of_cycles({2, 10})});
    out.push_back({"C2xC12", product_of_cycles({2, 12})});
    out.push_back({"C3xC3", product_of_cycles({3, 3})});
    out.push_back({"C3xC6", product_of_cycles({3, 6})});
    out.push_back({"C4xC4", product_of_cycles({4, 4})});
    out.push_back({"C2xC2xC2", product_of_cycles({2, 2, 2})});
    out.push_back({"C2xC2xC4", product_of_cycles({2, 2, 4})});
    out.push_back({"C2xC2xC6", product_of_cycles({2, 2, 6})});
    for (int order = 8; order <= 24; order += 2)
      out.push_back({"D" + std::to_string(order), dihedral_of_order(order)});
    out.push_back({"Q8", quaternion8()});
    out.push_back({"Dic3", dicyclic12()});
    out.push_back({"S3", FiniteGroup::from_permutations(
                             3, {detail::cycle_on(3, 0, 3), detail::transposition(3, 0, 1)})});
    out.push_back({"A4", FiniteGroup::from_permutations(
                             4, {{1, 2, 0, 3}, {0, 2, 3, 1}})});
    out.push_back({"S4", FiniteGroup::from_permutations(
                             4, {detail::cycle_on(4, 0, 4), detail::transposition(4, 0, 1)})});
    out.push_back({"F21", frobenius21()});
    std::sort(out.begin(), out.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
      if (a.group.order() != b.group.order()) return a.group.order() < b.group.order();
      return a.name < b.name;
    });
    return out;
  }();
  return entries;
}

/* Class filters: "all", "solvable", or "p:N" for p-groups at the prime N. */
inline bool class_contains(const FiniteGroup& g, const std::string& cls) {
  if (cls == "all") return true;
  if (cls == "solvable") return is_solvable(g);
  if (cls.rfind("p:", 0) == 0) {
    int p = std::stoi(cls.substr(2));
    if (p < 2) throw InvalidInput("p-group class needs a prime, got " + cls);
    return is_p_group(g, p);
  }
  throw InvalidInput("unknown group class '" + cls + "' (use all, solvable, or p:N)");
}

inline std::vector<const CatalogEntry*> catalog_up_to(int max_order,
                                                      const std::string& cls = "all") {
  std::vector<const CatalogEntry*> out;
  for (const CatalogEntry& e : catalog())
    if (e.group.order() <= max_order && class_contains(e.group, cls)) out.push_back(&e);
  return out;
}

inline const CatalogEntry* catalog_by_name(const std::string& name) {
  for (const CatalogEntry& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

/* All automorphisms, by backtracking over images of a small generating set. */
inline std::vector<ElementHom> automorphisms(const FiniteGroup& g) {
  std::vector<int> gens = small_generating_set(g);
  if (gens.empty()) return {identity_hom(g)};

  /* Express every element as a fixed word in the generators. */
  std::vector<std::vector<int>> expr(g.order());
  std::vector<char> have(g.order(), 0);
  std::vector<int> queue{g.identity()};
  have[g.identity()] = 1;
  for (std::size_t at = 0; at < queue.size(); ++at) {
    int x = queue[at];
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      int next = g.mul(x, gens[gi]);
      if (!have[next]) {
        have[next] = 1;
        expr[next] = expr[x];
        expr[next].push_back(static_cast<int>(gi));
        queue.push_back(next);
      }
    }
  }

  std::vector<ElementHom> out;
  std::vector<int> images(gens.size(), 0);
  auto build = [&]() -> bool {
    ElementHom f;
    f.image.resize(g.order());
    for (int x = 0; x < g.order(); ++x) {
      int acc = g.identity();
      for (int gi : expr[x]) acc = g.mul(acc, images[gi]);
      f.image[x] = acc;
    }
    if (!is_injective(f)) return false;
    if (!is_homomorphism(f, g, g)) return false;
    out.push_back(std::move(f));
    return true;
  };
  std::vector<int> stack{0};
  while (!stack.empty()) {
    if (static_cast<int>(stack.size()) == static_cast<int>(gens.size()) + 1) {
      build();
      stack.pop_back();
      if (!stack.empty()) ++stack.back();
      continue;
    }
    if (stack.back() >= g.order()) {
      stack.pop_back();
      if (!stack.empty()) ++stack.back();
      continue;
    }
    int level = static_cast<int>(stack.size()) - 1;
    int cand = stack.back();
    if (g.element_order(cand) != g.element_order(gens[level])) {
      ++stack.back();
      continue;
    }
    images[level] = cand;
    stack.push_back(0);
  }
  return out;
}

}  // namespace gog
