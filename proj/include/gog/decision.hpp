#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gog/errors.hpp"
#include "gog/tower.hpp"
#include "gog/words.hpp"

namespace gog {

/*
 * A finitely generated subgroup given by closed generator words, with the
 * outcome of a bounded finiteness probe attached.
 */
struct SubgroupSpec {
  enum class Finiteness { Finite, Infinite, Unknown };

  std::vector<PathWord> generators;  // reduced, closed at base
  Finiteness finiteness = Finiteness::Unknown;
  std::vector<PathWord> elements;    // full closure when Finite
  std::optional<PathWord> witness;   // an infinite-order member when Infinite
};

namespace detail {

inline std::vector<PathWord> with_inverses(const GraphOfGroups& g,
                                           const std::vector<PathWord>& gens) {
  std::vector<PathWord> out;
  for (const PathWord& h : gens) {
    PathWord r = britton_reduce_word(g, h);
    PathWord ri = britton_reduce_word(g, invert(g, h));
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
    if (std::find(out.begin(), out.end(), ri) == out.end()) out.push_back(ri);
  }
  return out;
}

/*
 * Products of up to `radius` factors from the alphabet, deduplicated by
 * canonical form, sorted in the (length, lex) word order. Truncated quietly
 * at max_size; callers treat the ball as a best-effort search space.
 */
inline std::vector<PathWord> word_ball(const GraphOfGroups& g,
                                       const std::vector<PathWord>& alphabet, int radius,
                                       std::size_t max_size, bool* truncated = nullptr) {
  std::set<PathWord> seen{identity_word(g, g.base_vertex)};
  std::vector<PathWord> layer(seen.begin(), seen.end());
  if (truncated) *truncated = false;
  for (int r = 0; r < radius && !layer.empty(); ++r) {
    std::vector<PathWord> next;
    for (const PathWord& w : layer)
      for (const PathWord& a : alphabet) {
        PathWord p = multiply(g, w, a);
        if (seen.size() >= max_size) {
          if (truncated) *truncated = true;
          return {seen.begin(), seen.end()};
        }
        if (seen.insert(p).second) next.push_back(p);
      }
    layer = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

inline bool ball_contains(const std::vector<PathWord>& sorted_ball, const PathWord& w) {
  return std::binary_search(sorted_ball.begin(), sorted_ball.end(), w);
}

}  // namespace detail

inline SubgroupSpec classify_subgroup(const GraphOfGroups& g, const std::vector<PathWord>& gens,
                                      int closure_bound = 2000) {
  SubgroupSpec spec;
  for (const PathWord& h : gens) {
    if (!is_closed(g, h) || h.start != g.base_vertex)
      throw TypeError("subgroup generators must be closed at the base", 0);
    spec.generators.push_back(britton_reduce_word(g, h));
  }

  std::vector<PathWord> alphabet = detail::with_inverses(g, spec.generators);
  for (const PathWord& a : alphabet)
    if (!order_of(g, a)) {
      spec.finiteness = SubgroupSpec::Finiteness::Infinite;
      spec.witness = a;
      return spec;
    }

  std::set<PathWord> seen{identity_word(g, g.base_vertex)};
  std::vector<PathWord> layer(seen.begin(), seen.end());
  while (!layer.empty()) {
    std::vector<PathWord> next;
    for (const PathWord& w : layer)
      for (const PathWord& a : alphabet) {
        PathWord p = multiply(g, w, a);
        if (seen.insert(p).second) {
          if (!order_of(g, p)) {
            spec.finiteness = SubgroupSpec::Finiteness::Infinite;
            spec.witness = p;
            return spec;
          }
          if (static_cast<int>(seen.size()) > closure_bound) {
            spec.finiteness = SubgroupSpec::Finiteness::Unknown;
            return spec;
          }
          next.push_back(p);
        }
      }
    layer = std::move(next);
  }
  spec.finiteness = SubgroupSpec::Finiteness::Finite;
  spec.elements.assign(seen.begin(), seen.end());
  return spec;
}

enum class Membership { Yes, No, Unknown };

/* Yes is always sound; No only arises for Finite specs, where it is exact. */
inline Membership membership_semitest(const GraphOfGroups& g, const PathWord& w,
                                      const SubgroupSpec& h, int budget,
                                      std::size_t max_ball = 100000) {
  PathWord r = britton_reduce_word(g, w);
  if (h.finiteness == SubgroupSpec::Finiteness::Finite) {
    bool in = std::find(h.elements.begin(), h.elements.end(), r) != h.elements.end();
    return in ? Membership::Yes : Membership::No;
  }
  std::vector<PathWord> alphabet = detail::with_inverses(g, h.generators);
  std::vector<PathWord> ball = detail::word_ball(g, alphabet, budget, max_ball);
  return detail::ball_contains(ball, r) ? Membership::Yes : Membership::Unknown;
}

struct ConjugacySchedule {
  int rounds = 5;
  int initial_radius = 1;         // lane A: conjugator ball radius, doubling
  int initial_verify_budget = 2;  // lane A: membership ball length, doubling
  int initial_max_order = 6;      // lane B: catalog bound, doubling, capped at catalog_cap
  int catalog_cap = 24;
  std::string group_class = "all";
  std::size_t max_ball = 200000;
  int jobs = 1;
};

struct ConjugacyVerdict {
  enum class Kind { Conjugate, NotConjugate, Undecided };

  Kind kind = Kind::Undecided;
  std::optional<PathWord> witness;            // Conjugate: r with r H1 r^-1 = H2
  std::optional<FiniteQuotient> certificate;  // NotConjugate: separating quotient
  std::string detail;
  int rounds_used = 0;
  int last_radius = 0;
  int last_verify_budget = 0;
  int last_max_order = 0;
};

namespace detail {

/* Two-sided generator pushing: r H1 r^-1 <= H2 and r^-1 H2 r <= H1. */
inline bool verifies_conjugation(const GraphOfGroups& g, const PathWord& r,
                                 const SubgroupSpec& h1, const SubgroupSpec& h2,
                                 const std::vector<PathWord>& ball1,
                                 const std::vector<PathWord>& ball2) {
  PathWord rinv = britton_reduce_word(g, invert(g, r));
  for (const PathWord& h : h1.generators) {
    PathWord moved = conjugate(g, r, h);
    if (h2.finiteness == SubgroupSpec::Finiteness::Finite) {
      if (std::find(h2.elements.begin(), h2.elements.end(), moved) == h2.elements.end())
        return false;
    } else if (!ball_contains(ball2, moved)) {
      return false;
    }
  }
  for (const PathWord& h : h2.generators) {
    PathWord moved = conjugate(g, rinv, h);
    if (h1.finiteness == SubgroupSpec::Finiteness::Finite) {
      if (std::find(h1.elements.begin(), h1.elements.end(), moved) == h1.elements.end())
        return false;
    } else if (!ball_contains(ball1, moved)) {
      return false;
    }
  }
  return true;
}

inline Subgroup image_subgroup(const GraphOfGroups& g, const FiniteQuotient& q,
                               const std::vector<PathWord>& gens) {
  std::vector<int> images;
  for (const PathWord& h : gens) images.push_back(eval(g, q, h));
  return subgroup_closure(q.target, images);
}

}  // namespace detail

/*
 * Dovetailed decision: lane A searches conjugators by canonical-form length
 * with two-sided membership verification; lane B walks vertex-faithful
 * surjective quotients testing image-subgroup conjugacy. Either lane's
 * certificate settles the question; budgets double between rounds and an
 * exhausted schedule returns Undecided with its resumable state.
 */
inline ConjugacyVerdict decide_conjugacy(const GraphOfGroups& g, const SubgroupSpec& h1,
                                         const SubgroupSpec& h2,
                                         const ConjugacySchedule& sched = {}) {
  ConjugacyVerdict verdict;
  std::vector<PathWord> alphabet;
  for (const Pi1Generator& gen : pi1_generators(g)) alphabet.push_back(gen.word);
  alphabet = detail::with_inverses(g, alphabet);

  int radius = sched.initial_radius;
  int verify_budget = sched.initial_verify_budget;
  int max_order = sched.initial_max_order;

  for (int round = 0; round < sched.rounds; ++round) {
    verdict.rounds_used = round + 1;
    verdict.last_radius = radius;
    verdict.last_verify_budget = verify_budget;
    verdict.last_max_order = max_order;

    /* Lane A. */
    std::vector<PathWord> ball1, ball2;
    if (h1.finiteness != SubgroupSpec::Finiteness::Finite)
      ball1 = detail::word_ball(g, detail::with_inverses(g, h1.generators), verify_budget,
                                sched.max_ball);
    if (h2.finiteness != SubgroupSpec::Finiteness::Finite)
      ball2 = detail::word_ball(g, detail::with_inverses(g, h2.generators), verify_budget,
                                sched.max_ball);
    for (const PathWord& r : detail::word_ball(g, alphabet, radius, sched.max_ball)) {
      if (detail::verifies_conjugation(g, r, h1, h2, ball1, ball2)) {
        verdict.kind = ConjugacyVerdict::Kind::Conjugate;
        verdict.witness = r;
        return verdict;
      }
    }

    /* Lane B. */
    EnumerateOptions eopts;
    eopts.require_vertex_faithful = true;
    eopts.require_surjective = true;
    eopts.jobs = sched.jobs;
    for (const FiniteQuotient& q :
         enumerate_quotients(g, catalog_up_to(max_order, sched.group_class), eopts)) {
      Subgroup im1 = detail::image_subgroup(g, q, h1.generators);
      Subgroup im2 = detail::image_subgroup(g, q, h2.generators);
      if (!are_conjugate_subgroups(q.target, im1, im2)) {
        verdict.kind = ConjugacyVerdict::Kind::NotConjugate;
        verdict.certificate = q;
        std::ostringstream why;
        why << "images in " << q.target_name << " of orders " << im1.order() << " and "
            << im2.order() << " are not conjugate";
        verdict.detail = why.str();
        return verdict;
      }
    }

    radius *= 2;
    verify_budget *= 2;
    max_order = std::min(max_order * 2, sched.catalog_cap);
  }
  verdict.detail = "budgets exhausted; resume with larger schedule";
  return verdict;
}

/*
 * Chain of projected stage subgroups over every stage linked into the
 * reference, intersected as it descends. The subgroup at each stage comes
 * from a caller-supplied rule (normalizer or centralizer of the image).
 */
struct ChainEntry {
  int stage = -1;
  std::vector<int> projected;  // subgroup elements of the reference target
};

struct StageChain {
  int reference = -1;
  std::vector<ChainEntry> entries;
  std::optional<int> stabilized_at;  // stage of the first repeated entry
  std::vector<int> skipped;          // stages with no connecting morphism
};

template <typename SubgroupRule>
inline StageChain chain_over_tower(const GraphOfGroups& g, const Tower& t, int reference,
                                   SubgroupRule&& rule) {
  if (reference < 0 || reference >= t.size())
    throw InvalidInput("reference stage out of range");
  StageChain chain;
  chain.reference = reference;

  const FiniteGroup& qref = t.stages[reference].quot.target;
  Subgroup current = rule(reference);
  chain.entries.push_back({reference, current.elements});

  for (int i = 0; i < t.size(); ++i) {
    if (i == reference) continue;
    const auto& link = t.link(i, reference);
    if (!link) {
      chain.skipped.push_back(i);
      continue;
    }
    Subgroup stage_sub = rule(i);
    std::vector<int> projected;
    for (int x : stage_sub.elements) projected.push_back(link->delta(x));
    std::sort(projected.begin(), projected.end());
    projected.erase(std::unique(projected.begin(), projected.end()), projected.end());
    std::vector<int> meet;
    std::set_intersection(current.elements.begin(), current.elements.end(), projected.begin(),
                          projected.end(), std::back_inserter(meet));
    Subgroup next{&qref, std::move(meet)};
    chain.entries.push_back({i, next.elements});
    current = std::move(next);
  }

  /* Stable from the first entry after which nothing changes; a single
     agreeing entry is not evidence, so ask for at least two. */
  const std::vector<int>& final_set = chain.entries.back().projected;
  std::optional<int> stable;
  int holding = 0;
  for (const ChainEntry& e : chain.entries) {
    if (e.projected == final_set) {
      if (!stable) stable = e.stage;
      ++holding;
    } else {
      stable.reset();
      holding = 0;
    }
  }
  if (holding >= 2) chain.stabilized_at = stable;
  return chain;
}

struct NormalizerReport {
  StageChain chain;
  std::vector<PathWord> discovered;  // words verified to normalize the subgroup
};

inline NormalizerReport normalizer_chain(const GraphOfGroups& g, const Tower& t,
                                         const SubgroupSpec& h, int reference,
                                         int word_budget = 4,
                                         std::size_t max_ball = 100000) {
  NormalizerReport report;
  report.chain = chain_over_tower(g, t, reference, [&](int i) {
    Subgroup im = detail::image_subgroup(g, t.stages[i].quot, h.generators);
    return normalizer(t.stages[i].quot.target, im);
  });

  std::vector<PathWord> alphabet;
  for (const Pi1Generator& gen : pi1_generators(g)) alphabet.push_back(gen.word);
  alphabet = detail::with_inverses(g, alphabet);
  std::vector<PathWord> hball;
  if (h.finiteness != SubgroupSpec::Finiteness::Finite)
    hball = detail::word_ball(g, detail::with_inverses(g, h.generators), 2 * word_budget,
                              max_ball);
  for (const PathWord& r : detail::word_ball(g, alphabet, word_budget, max_ball))
    if (detail::verifies_conjugation(g, r, h, h, hball, hball)) report.discovered.push_back(r);
  return report;
}

struct CentralizerReport {
  PathWord x;
  long long n = 1;
  int kernel_stage = -1;             // first stage whose kernel contains x
  std::vector<PathWord> commuting;   // ball words commuting with x^n
  std::vector<PathWord> violations;  // commuting with x^n but not with x
  StageChain chain;
};

inline CentralizerReport centralizer_root_check(const GraphOfGroups& g, const Tower& t,
                                                const PathWord& x, long long n,
                                                int word_budget = 6,
                                                std::size_t max_ball = 100000) {
  if (n < 1) throw InvalidInput("root exponent must be positive");
  if (order_of(g, x))
    throw PreconditionFailed("centralizer root check wants an infinite-order element");

  CentralizerReport report;
  report.x = britton_reduce_word(g, x);
  report.n = n;
  for (int i = 0; i < t.size(); ++i)
    if (eval(g, t.stages[i].quot, report.x) == t.stages[i].quot.target.identity()) {
      report.kernel_stage = i;
      break;
    }
  if (report.kernel_stage < 0)
    throw PreconditionFailed("element lies in no stage kernel within the tower");

  PathWord xn = identity_word(g, g.base_vertex);
  for (long long k = 0; k < n; ++k) xn = multiply(g, xn, report.x);

  std::vector<PathWord> alphabet;
  for (const Pi1Generator& gen : pi1_generators(g)) alphabet.push_back(gen.word);
  alphabet = detail::with_inverses(g, alphabet);
  for (const PathWord& w : detail::word_ball(g, alphabet, word_budget, max_ball)) {
    if (!equal(g, multiply(g, w, xn), multiply(g, xn, w))) continue;
    report.commuting.push_back(w);
    if (!equal(g, multiply(g, w, report.x), multiply(g, report.x, w)))
      report.violations.push_back(w);
  }

  report.chain = chain_over_tower(g, t, report.kernel_stage, [&](int i) {
    std::vector<int> img{eval(g, t.stages[i].quot, report.x)};
    Subgroup im = subgroup_closure(t.stages[i].quot.target, img);
    return centralizer_of_subgroup(t.stages[i].quot.target, im);
  });
  return report;
}

}  // namespace gog
