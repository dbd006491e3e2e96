#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gog/errors.hpp"

namespace gog {

/* A permutation of {0,...,degree-1}, stored as its image vector. */
using Permutation = std::vector<int>;

inline bool is_permutation(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

/* Products compose left to right: (p*q) moves i to q[p[i]]. */
inline Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
  return r;
}

inline std::string cycle_notation(const Permutation& p) {
  std::string out;
  std::vector<char> done(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (done[i] || p[i] == static_cast<int>(i)) continue;
    out += '(';
    int j = static_cast<int>(i);
    bool first = true;
    while (!done[j]) {
      done[j] = 1;
      if (!first) out += ' ';
      out += std::to_string(j);
      first = false;
      j = p[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

/*
 * Finite group on elements 0..order-1 with a dense multiplication table.
 * Construction validates the table: closure, identity, inverses, and
 * associativity (all triples up to order 64, ten thousand seeded random
 * triples above that).
 */
class FiniteGroup {
 public:
  FiniteGroup() = default;

  static FiniteGroup from_table(const std::vector<std::vector<int>>& table,
                                std::vector<std::string> labels = {});
  static FiniteGroup from_permutations(int degree, const std::vector<Permutation>& gens,
                                       int bound = 10000);

  int order() const { return order_; }
  int mul(int a, int b) const { return table_[a * order_ + b]; }
  int inverse(int a) const { return inverse_[a]; }
  int identity() const { return identity_; }
  const std::string& label(int a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /* Element index for a label, if any. */
  std::optional<int> element_by_label(const std::string& name) const {
    for (int i = 0; i < order_; ++i)
      if (labels_[i] == name) return i;
    return std::nullopt;
  }

  int element_order(int a) const {
    int x = a, n = 1;
    while (x != identity_) {
      x = mul(x, a);
      ++n;
    }
    return n;
  }

  int conjugate(int g, int a) const {  // g a g^-1
    return mul(mul(g, a), inverse_[g]);
  }

  int power(int a, long long n) const {
    int inv = inverse_[a];
    int base = n >= 0 ? a : inv;
    long long k = n >= 0 ? n : -n;
    int acc = identity_;
    for (long long i = 0; i < k; ++i) acc = mul(acc, base);
    return acc;
  }

  bool is_abelian() const {
    for (int a = 0; a < order_; ++a)
      for (int b = a + 1; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  bool operator==(const FiniteGroup& other) const {
    return order_ == other.order_ && table_ == other.table_;
  }

 private:
  int order_ = 0;
  int identity_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<std::string> labels_;

  void validate() const;
};

inline void FiniteGroup::validate() const {
  const int n = order_;
  if (n <= 0) throw NotAGroup("empty element set");
  for (int v : table_)
    if (v < 0 || v >= n) throw NotAGroup("table entry " + std::to_string(v) + " out of range");
  std::vector<char> seen(n);
  for (int a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < n; ++b) seen[mul(a, b)] = 1;
    if (std::count(seen.begin(), seen.end(), 1) != n)
      throw NotAGroup("row " + std::to_string(a) + " is not a permutation");
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < n; ++b) seen[mul(b, a)] = 1;
    if (std::count(seen.begin(), seen.end(), 1) != n)
      throw NotAGroup("column " + std::to_string(a) + " is not a permutation");
  }
  int id = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) {
      id = e;
      break;
    }
  }
  if (id != identity_) throw NotAGroup("no two-sided identity");
  for (int a = 0; a < n; ++a) {
    int b = inverse_[a];
    if (mul(a, b) != id || mul(b, a) != id)
      throw NotAGroup("element " + std::to_string(a) + " has no two-sided inverse");
  }
  auto check = [&](int a, int b, int c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
      throw NotAGroup("associativity fails on (" + std::to_string(a) + "," + std::to_string(b) +
                      "," + std::to_string(c) + ")");
  };
  if (n <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) check(a, b, c);
  } else {
    std::mt19937 rng(0x5eedu);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int i = 0; i < 10000; ++i) check(pick(rng), pick(rng), pick(rng));
  }
}

inline FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& table,
                                           std::vector<std::string> labels) {
  FiniteGroup g;
  g.order_ = static_cast<int>(table.size());
  if (g.order_ == 0) throw NotAGroup("empty table");
  g.table_.reserve(g.order_ * g.order_);
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != g.order_) throw NotAGroup("table is not square");
    g.table_.insert(g.table_.end(), row.begin(), row.end());
  }
  for (int v : g.table_)
    if (v < 0 || v >= g.order_) throw NotAGroup("table entry out of range");
  g.identity_ = -1;
  for (int e = 0; e < g.order_; ++e) {
    bool ok = true;
    for (int a = 0; a < g.order_ && ok; ++a) ok = g.mul(e, a) == a && g.mul(a, e) == a;
    if (ok) {
      g.identity_ = e;
      break;
    }
  }
  if (g.identity_ < 0) throw NotAGroup("no two-sided identity");
  g.inverse_.assign(g.order_, -1);
  for (int a = 0; a < g.order_; ++a) {
    for (int b = 0; b < g.order_; ++b)
      if (g.mul(a, b) == g.identity_ && g.mul(b, a) == g.identity_) {
        g.inverse_[a] = b;
        break;
      }
    if (g.inverse_[a] < 0) throw NotAGroup("element " + std::to_string(a) + " has no inverse");
  }
  if (labels.empty()) {
    labels.resize(g.order_);
    for (int i = 0; i < g.order_; ++i) labels[i] = "g" + std::to_string(i);
  }
  if (static_cast<int>(labels.size()) != g.order_)
    throw NotAGroup("label count does not match order");
  g.labels_ = std::move(labels);
  g.validate();
  return g;
}

inline FiniteGroup FiniteGroup::from_permutations(int degree, const std::vector<Permutation>& gens,
                                                  int bound) {
  for (const auto& p : gens) {
    if (static_cast<int>(p.size()) != degree)
      throw InvalidInput("permutation degree mismatch");
    if (!is_permutation(p)) throw InvalidInput("not a permutation: " + cycle_notation(p));
  }
  Permutation id(degree);
  for (int i = 0; i < degree; ++i) id[i] = i;
  std::vector<Permutation> elems{id};
  std::map<Permutation, int> index{{id, 0}};
  for (std::size_t at = 0; at < elems.size(); ++at) {
    for (const auto& gen : gens) {
      Permutation next = compose(elems[at], gen);
      if (index.emplace(next, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(next));
        if (static_cast<int>(elems.size()) > bound)
          throw BoundExceeded("permutation closure passed " + std::to_string(bound) + " elements",
                              bound);
      }
    }
  }
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto it = index.find(compose(elems[a], elems[b]));
      if (it == index.end()) throw NotAGroup("closure is not closed");  // unreachable
      table[a][b] = it->second;
    }
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = cycle_notation(elems[i]);
  return from_table(table, std::move(labels));
}

/* Subgroup given by its sorted element list; parent identity is pointer identity. */
struct Subgroup {
  const FiniteGroup* parent = nullptr;
  std::vector<int> elements;

  bool contains(int a) const {
    return std::binary_search(elements.begin(), elements.end(), a);
  }
  int order() const { return static_cast<int>(elements.size()); }
  bool operator==(const Subgroup& other) const {
    return parent == other.parent && elements == other.elements;
  }
};

inline Subgroup subgroup_closure(const FiniteGroup& g, const std::vector<int>& gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<int> work{g.identity()};
  in[g.identity()] = 1;
  for (int x : gens)
    if (!in[x]) {
      in[x] = 1;
      work.push_back(x);
    }
  for (std::size_t at = 0; at < work.size(); ++at) {
    for (int x : gens) {
      int next = g.mul(work[at], x);
      if (!in[next]) {
        in[next] = 1;
        work.push_back(next);
      }
    }
  }
  std::sort(work.begin(), work.end());
  return Subgroup{&g, std::move(work)};
}

inline Subgroup trivial_subgroup(const FiniteGroup& g) {
  return Subgroup{&g, {g.identity()}};
}

inline Subgroup full_subgroup(const FiniteGroup& g) {
  std::vector<int> all(g.order());
  for (int i = 0; i < g.order(); ++i) all[i] = i;
  return Subgroup{&g, std::move(all)};
}

inline bool is_subgroup(const FiniteGroup& g, const std::vector<int>& elements) {
  if (elements.empty()) return false;
  std::vector<char> in(g.order(), 0);
  for (int a : elements) in[a] = 1;
  if (!in[g.identity()]) return false;
  for (int a : elements)
    for (int b : elements)
      if (!in[g.mul(a, b)]) return false;
  return true;
}

inline Subgroup conjugate_subgroup(const FiniteGroup& g, const Subgroup& h, int c) {
  std::vector<int> conj;
  conj.reserve(h.elements.size());
  for (int a : h.elements) conj.push_back(g.conjugate(c, a));
  std::sort(conj.begin(), conj.end());
  return Subgroup{&g, std::move(conj)};
}

/*
 * Exhaustive conjugacy check; the witness, when present, is the lowest
 * element index c with c H1 c^-1 = H2.
 */
inline std::optional<int> are_conjugate_subgroups(const FiniteGroup& g, const Subgroup& h1,
                                                  const Subgroup& h2) {
  if (h1.parent != h2.parent || h1.parent != &g)
    throw ParentMismatch("subgroups live in different groups");
  if (h1.elements.size() != h2.elements.size()) return std::nullopt;
  for (int c = 0; c < g.order(); ++c)
    if (conjugate_subgroup(g, h1, c).elements == h2.elements) return c;
  return std::nullopt;
}

inline Subgroup normalizer(const FiniteGroup& g, const Subgroup& h) {
  if (h.parent != &g) throw ParentMismatch("subgroup of a different group");
  std::vector<int> result;
  for (int c = 0; c < g.order(); ++c)
    if (conjugate_subgroup(g, h, c).elements == h.elements) result.push_back(c);
  return Subgroup{&g, std::move(result)};
}

inline Subgroup centralizer_of_element(const FiniteGroup& g, int a) {
  std::vector<int> result;
  for (int c = 0; c < g.order(); ++c)
    if (g.mul(c, a) == g.mul(a, c)) result.push_back(c);
  return Subgroup{&g, std::move(result)};
}

inline Subgroup centralizer_of_subgroup(const FiniteGroup& g, const Subgroup& h) {
  if (h.parent != &g) throw ParentMismatch("subgroup of a different group");
  std::vector<int> result;
  for (int c = 0; c < g.order(); ++c) {
    bool all = true;
    for (int a : h.elements)
      if (g.mul(c, a) != g.mul(a, c)) {
        all = false;
        break;
      }
    if (all) result.push_back(c);
  }
  return Subgroup{&g, std::move(result)};
}

/*
 * Left cosets of H in G, each sorted; the coset list is ordered by least
 * member, so the transversal (least member of each coset) is canonical and
 * the coset of the identity need not come first.
 */
inline std::vector<std::vector<int>> left_cosets(const FiniteGroup& g,
                                                 const std::vector<int>& subgroup_elements) {
  std::vector<char> seen(g.order(), 0);
  std::vector<std::vector<int>> cosets;
  for (int a = 0; a < g.order(); ++a) {
    if (seen[a]) continue;
    std::vector<int> coset;
    coset.reserve(subgroup_elements.size());
    for (int h : subgroup_elements) {
      int x = g.mul(a, h);
      seen[x] = 1;
      coset.push_back(x);
    }
    std::sort(coset.begin(), coset.end());
    cosets.push_back(std::move(coset));
  }
  return cosets;
}

inline std::vector<int> left_transversal(const FiniteGroup& g,
                                         const std::vector<int>& subgroup_elements) {
  std::vector<int> reps;
  for (const auto& coset : left_cosets(g, subgroup_elements)) reps.push_back(coset.front());
  return reps;
}

/* Commutator subgroup, then derived series down to the point of stabilizing. */
inline Subgroup derived_subgroup(const FiniteGroup& g, const Subgroup& h) {
  std::vector<int> comms;
  for (int a : h.elements)
    for (int b : h.elements)
      comms.push_back(g.mul(g.mul(a, b), g.mul(g.inverse(a), g.inverse(b))));
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  return subgroup_closure(g, comms);
}

inline bool is_solvable(const FiniteGroup& g) {
  Subgroup h = full_subgroup(g);
  while (h.order() > 1) {
    Subgroup d = derived_subgroup(g, h);
    if (d.order() == h.order()) return false;
    h = d;
  }
  return true;
}

inline bool is_p_group(const FiniteGroup& g, int p) {
  int n = g.order();
  while (n % p == 0) n /= p;
  return n == 1;
}

/*
 * Map between finite groups given element by element; the source and target
 * are supplied by context wherever the map is checked or applied.
 */
struct ElementHom {
  std::vector<int> image;

  int operator()(int a) const { return image[a]; }
  int size() const { return static_cast<int>(image.size()); }

  bool operator==(const ElementHom& other) const { return image == other.image; }
};

inline bool is_homomorphism(const ElementHom& f, const FiniteGroup& src, const FiniteGroup& dst) {
  if (f.size() != src.order()) return false;
  for (int v : f.image)
    if (v < 0 || v >= dst.order()) return false;
  for (int a = 0; a < src.order(); ++a)
    for (int b = 0; b < src.order(); ++b)
      if (f.image[src.mul(a, b)] != dst.mul(f.image[a], f.image[b])) return false;
  return true;
}

inline bool is_injective(const ElementHom& f) {
  std::vector<int> im = f.image;
  std::sort(im.begin(), im.end());
  return std::adjacent_find(im.begin(), im.end()) == im.end();
}

inline ElementHom identity_hom(const FiniteGroup& g) {
  ElementHom f;
  f.image.resize(g.order());
  for (int i = 0; i < g.order(); ++i) f.image[i] = i;
  return f;
}

/* g after f. */
inline ElementHom compose(const ElementHom& f, const ElementHom& g) {
  ElementHom h;
  h.image.reserve(f.image.size());
  for (int v : f.image) h.image.push_back(g.image[v]);
  return h;
}

inline ElementHom inverse_of_injective(const ElementHom& f, const FiniteGroup& src,
                                       const FiniteGroup& dst) {
  ElementHom inv;
  inv.image.assign(dst.order(), -1);
  for (int a = 0; a < src.order(); ++a) inv.image[f.image[a]] = a;
  return inv;  // -1 outside the image; callers restrict to it
}

inline std::vector<int> image_elements(const ElementHom& f) {
  std::vector<int> im = f.image;
  std::sort(im.begin(), im.end());
  im.erase(std::unique(im.begin(), im.end()), im.end());
  return im;
}

/*
 * A small generating set found greedily; used to cut search spaces when
 * enumerating homomorphisms out of this group.
 */
inline std::vector<int> small_generating_set(const FiniteGroup& g) {
  std::vector<int> gens;
  Subgroup have = trivial_subgroup(g);
  while (have.order() < g.order()) {
    int best = -1;
    int best_size = have.order();
    for (int a = 0; a < g.order(); ++a) {
      if (have.contains(a)) continue;
      std::vector<int> trial = gens;
      trial.push_back(a);
      int size = subgroup_closure(g, trial).order();
      if (size > best_size) {
        best_size = size;
        best = a;
        if (size == g.order()) break;
      }
    }
    gens.push_back(best);
    have = subgroup_closure(g, gens);
  }
  return gens;
}

/*
 * The subgroup on `elements` as a group in its own right, with element i of
 * the result corresponding to elements[i] of the parent.
 */
inline FiniteGroup group_on_subset(const FiniteGroup& g, const std::vector<int>& elements) {
  const int n = static_cast<int>(elements.size());
  std::vector<int> pos(g.order(), -1);
  for (int i = 0; i < n; ++i) pos[elements[i]] = i;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int prod = g.mul(elements[a], elements[b]);
      if (pos[prod] < 0) throw NotAGroup("subset is not closed under multiplication");
      table[a][b] = pos[prod];
    }
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = g.label(elements[i]);
  return FiniteGroup::from_table(table, std::move(labels));
}

}  // namespace gog
