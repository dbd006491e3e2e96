#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gog/catalog.hpp"
#include "gog/decision.hpp"
#include "gog/errors.hpp"
#include "gog/fixtures.hpp"
#include "gog/format.hpp"
#include "gog/graph_of_groups.hpp"
#include "gog/presentation.hpp"
#include "gog/quotient.hpp"
#include "gog/report.hpp"
#include "gog/sampling.hpp"
#include "gog/tower.hpp"
#include "gog/tree.hpp"
#include "gog/words.hpp"

namespace gog {
namespace cli {

/* `--input` takes a file path or `fixture:NAME` for a built-in example. */
inline std::string load_document(const std::string& input) {
  const std::string prefix = "fixture:";
  if (input.rfind(prefix, 0) == 0) {
    const Fixture* f = fixture_by_name(input.substr(prefix.size()));
    if (!f) throw InvalidInput("no built-in fixture named '" + input.substr(prefix.size()) + "'");
    return f->document;
  }
  std::ifstream in(input, std::ios::binary);
  if (!in) throw InvalidInput("cannot read input file '" + input + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Loaded {
  std::string document;
  GraphOfGroups gog;
};

inline Loaded load_input(const std::string& input) {
  Loaded l;
  l.document = load_document(input);
  l.gog = parse(l.document);
  return l;
}

inline std::string command_digest(const std::vector<std::string>& args,
                                  const std::string& document) {
  std::uint64_t h = fnv1a("gogtool");
  for (const std::string& a : args) h = fnv1a(a, fnv1a("\x1f", h));
  h = fnv1a(document, fnv1a("\x1e", h));
  return digest_hex(h);
}

inline std::string quoted(const std::string& s) { return "\"" + s + "\""; }

inline std::string labels_of(const FiniteGroup& group, const std::vector<int>& elements) {
  std::string out = "{";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) out += " ";
    out += group.label(elements[i]);
  }
  return out + "}";
}

inline std::string finiteness_line(const GraphOfGroups& g, const SubgroupSpec& spec) {
  switch (spec.finiteness) {
    case SubgroupSpec::Finiteness::Finite:
      return "finite order " + std::to_string(spec.elements.size());
    case SubgroupSpec::Finiteness::Infinite:
      return "infinite witness " + quoted(word_to_string(g, *spec.witness));
    default:
      return "unknown";
  }
}

/* Words given on the command line may close up anywhere; rebase them. */
inline std::vector<PathWord> parse_based_words(const GraphOfGroups& g, const std::string& text) {
  std::vector<PathWord> out;
  for (const PathWord& w : parse_word_list(g, text)) out.push_back(based_word(g, w));
  return out;
}

inline SubgroupSpec load_subgroup(const GraphOfGroups& g, const std::string& text,
                                  int closure_bound) {
  return classify_subgroup(g, parse_based_words(g, text), closure_bound);
}

/* ---------- subcommand bodies ---------- */

inline Report do_validate(const Loaded& in) {
  Report r;
  ValidationReport v = validate(in.gog);
  std::ostringstream body;
  body << (v.ok() ? "ok" : "invalid") << "\n";
  body << "vertices " << in.gog.graph.vertex_count << " edges " << in.gog.graph.edge_count()
       << "\n";
  if (v.ok()) {
    body << "euler " << rational_string(euler_characteristic(in.gog)) << "\n";
    body << "reduced " << (is_reduced(in.gog) ? "true" : "false") << "\n";
  }
  for (const ValidationIssue& issue : v.issues)
    body << "issue " << issue.code << ": " << issue.message << "\n";
  r.body = body.str();
  r.exit_code = v.ok() ? 0 : 2;
  return r;
}

inline Report do_reduce(const Loaded& in) {
  Report r;
  GraphOfGroups small = reduce(in.gog);
  std::ostringstream body;
  body << "vertices " << in.gog.graph.vertex_count << " -> " << small.graph.vertex_count
       << " edges " << in.gog.graph.edge_count() << " -> " << small.graph.edge_count() << "\n";
  body << serialize(small);
  r.body = body.str();
  return r;
}

inline Report do_nf(const Loaded& in, const std::string& word_text) {
  Report r;
  const GraphOfGroups& g = in.gog;
  PathWord w = parse_word(g, word_text);
  PathWord nf = britton_reduce_word(g, w);
  std::ostringstream body;
  body << "word " << quoted(word_text) << "\n";
  body << "nf " << quoted(word_to_string(g, nf)) << "\n";
  body << "length " << nf.length() << "\n";
  bool closed = is_closed(g, nf);
  body << "closed " << (closed ? "true" : "false") << "\n";
  if (closed) {
    auto k = order_of(g, nf);
    body << "order " << (k ? std::to_string(*k) : std::string("infinite")) << "\n";
  }
  body << "projection " << quoted(free_word_to_string(g, graph_projection(g, nf))) << "\n";
  r.body = body.str();
  return r;
}

inline Report do_tree(const Loaded& in, const std::string& vertex_name, int depth,
                      int max_cells) {
  Report r;
  const GraphOfGroups& g = in.gog;
  TreeVertex center = base_tree_vertex(g);
  if (!vertex_name.empty()) {
    auto cell = g.graph.cell_by_name(vertex_name);
    if (!cell || !g.graph.is_vertex(*cell))
      throw InvalidInput("no vertex named '" + vertex_name + "'");
    center = tree_vertex(g, identity_word(g, g.base_vertex), *cell);
  }
  TreePatch patch = ball(g, center, depth, max_cells);
  std::ostringstream body;
  body << "center cell " << g.graph.name(center.cell) << " rep "
       << quoted(word_to_string(g, center.rep)) << "\n";
  for (std::size_t i = 0; i < patch.vertices.size(); ++i) {
    const TreeVertex& x = patch.vertices[i];
    body << "vertex " << i << " cell " << g.graph.name(x.cell) << " dist " << patch.dist[i]
         << " degree " << branching_degree(g, x.cell) << " rep "
         << quoted(word_to_string(g, x.rep)) << "\n";
  }
  for (std::size_t i = 0; i < patch.edges.size(); ++i) {
    const TreeEdge& x = patch.edges[i];
    body << "edge " << i << " cell " << g.graph.name(x.cell) << " ends "
         << patch.incidence[i].first << " " << patch.incidence[i].second << " rep "
         << quoted(word_to_string(g, x.rep)) << "\n";
  }
  int frontier = 0;
  for (char f : patch.frontier) frontier += f;
  body << "summary vertices " << patch.vertices.size() << " edges " << patch.edges.size()
       << " frontier " << frontier << "\n";
  r.body = body.str();
  return r;
}

inline Report do_quotients(const Loaded& in, int max_order, const std::string& group_class,
                           bool vertex_faithful, bool surjective, bool no_dedup, int jobs) {
  Report r;
  const GraphOfGroups& g = in.gog;
  Presentation pres = to_presentation(g);
  EnumerateOptions opts;
  opts.require_vertex_faithful = vertex_faithful;
  opts.require_surjective = surjective;
  opts.dedup_by_automorphism = !no_dedup;
  opts.jobs = jobs;
  std::vector<FiniteQuotient> found =
      enumerate_quotients(g, catalog_up_to(max_order, group_class), opts);
  std::ostringstream body;
  for (std::size_t i = 0; i < found.size(); ++i) {
    const FiniteQuotient& q = found[i];
    body << "quotient " << i << " target " << q.target_name << " order " << q.target.order()
         << " vertex-faithful " << (q.vertex_faithful ? "yes" : "no") << " onto "
         << (q.surjective ? "yes" : "no");
    if (q.vertex_faithful && q.surjective) body << " kernel-rank " << kernel_rank(g, q);
    body << " images ";
    std::vector<int> images = presentation_images(g, pres, q);
    for (std::size_t k = 0; k < images.size(); ++k) {
      if (k) body << ", ";
      body << pres.generators[k].name << "=" << q.target.label(images[k]);
    }
    body << "\n";
  }
  body << "total " << found.size() << "\n";
  r.body = body.str();
  return r;
}

inline Report do_tower(const Loaded& in, const std::string& action, int max_order,
                       const std::string& group_class, int jobs) {
  Report r;
  const GraphOfGroups& g = in.gog;
  TowerOptions topts;
  topts.max_order = max_order;
  topts.group_class = group_class;
  topts.jobs = jobs;
  Tower t = build_tower(g, topts);
  std::ostringstream body;
  if (action == "build") {
    body << serialize_tower(g, t);
  } else if (action == "check") {
    int checked = 0, failures = 0;
    for (int y = 0; y < t.size(); ++y)
      for (int u = 0; u < t.size(); ++u)
        for (int z = u + 1; z < t.size(); ++z)
          for (int w = 0; w < t.size(); ++w) {
            if (!t.link(y, u) || !t.link(y, z) || !t.link(u, w) || !t.link(z, w)) continue;
            ++checked;
            if (!check_square(g, t, y, z, u, w)) {
              ++failures;
              body << "square " << y << " " << z << " " << u << " " << w << " FAIL\n";
            }
          }
    body << "stages " << t.size() << " squares " << checked << " failures " << failures << "\n";
    if (failures) r.exit_code = 1;
  } else {
    throw InvalidInput("tower action must be build or check");
  }
  r.body = body.str();
  return r;
}

inline Report do_conjsep(const Loaded& in, const std::string& h1_text,
                         const std::string& h2_text, int rounds, int budget, int max_order,
                         const std::string& group_class, bool assume_closed, int jobs) {
  Report r;
  const GraphOfGroups& g = in.gog;
  if (group_class != "all" && !assume_closed)
    throw InvalidInput(
        "separation within a restricted group class is certified only for subgroups known to "
        "be closed in that completion; pass --assume-closed to proceed");
  SubgroupSpec h1 = load_subgroup(g, h1_text, 2000);
  SubgroupSpec h2 = load_subgroup(g, h2_text, 2000);

  ConjugacySchedule sched;
  sched.rounds = rounds;
  sched.initial_radius = budget;
  sched.initial_verify_budget = 2 * budget;
  sched.initial_max_order = std::min(6, max_order);
  sched.catalog_cap = max_order;
  sched.group_class = group_class;
  sched.jobs = jobs;
  ConjugacyVerdict v = decide_conjugacy(g, h1, h2, sched);

  std::ostringstream body;
  body << "h1 generators " << h1.generators.size() << " " << finiteness_line(g, h1) << "\n";
  body << "h2 generators " << h2.generators.size() << " " << finiteness_line(g, h2) << "\n";
  switch (v.kind) {
    case ConjugacyVerdict::Kind::Conjugate:
      body << "verdict conjugate\n";
      body << "witness " << quoted(word_to_string(g, *v.witness)) << "\n";
      break;
    case ConjugacyVerdict::Kind::NotConjugate: {
      body << "verdict not-conjugate\n";
      const FiniteQuotient& q = *v.certificate;
      body << "stage " << q.target_name << "\n";
      Subgroup im1 = detail::image_subgroup(g, q, h1.generators);
      Subgroup im2 = detail::image_subgroup(g, q, h2.generators);
      body << "images h1 " << labels_of(q.target, im1.elements) << " h2 "
           << labels_of(q.target, im2.elements) << "\n";
      body << "detail " << v.detail << "\n";
      break;
    }
    default:
      body << "verdict undecided\n";
      body << "detail " << v.detail << "\n";
      r.exit_code = 3;
      break;
  }
  body << "state rounds " << v.rounds_used << " radius " << v.last_radius << " verify "
       << v.last_verify_budget << " max-order " << v.last_max_order << "\n";
  r.body = body.str();
  return r;
}

inline int resolve_stage(const Tower& t, const std::string& ref) {
  try {
    std::size_t pos = 0;
    int idx = std::stoi(ref, &pos);
    if (pos == ref.size()) {
      if (idx < 0 || idx >= t.size()) throw InvalidInput("reference stage index out of range");
      return idx;
    }
  } catch (const std::invalid_argument&) {
  } catch (const std::out_of_range&) {
    throw InvalidInput("reference stage index out of range");
  }
  for (int i = 0; i < t.size(); ++i)
    if (t.stages[i].quot.target_name == ref) return i;
  throw InvalidInput("no tower stage with target '" + ref + "'");
}

inline void print_chain(std::ostringstream& body, const Tower& t, const StageChain& chain) {
  const FiniteGroup& qref = t.stages[chain.reference].quot.target;
  body << "reference " << chain.reference << " target "
       << t.stages[chain.reference].quot.target_name << "\n";
  for (const ChainEntry& e : chain.entries)
    body << "chain stage " << e.stage << " target " << t.stages[e.stage].quot.target_name
         << " subgroup " << labels_of(qref, e.projected) << "\n";
  if (chain.stabilized_at)
    body << "stabilized at stage " << *chain.stabilized_at << "\n";
  else
    body << "stabilized never\n";
  if (!chain.skipped.empty()) {
    body << "skipped";
    for (int s : chain.skipped) body << " " << s;
    body << " (no connecting morphism)\n";
  }
}

inline Report do_normalizer(const Loaded& in, const std::string& h_text,
                            const std::string& ref_stage, int max_order,
                            const std::string& group_class, int budget, int jobs) {
  Report r;
  const GraphOfGroups& g = in.gog;
  TowerOptions topts;
  topts.max_order = max_order;
  topts.group_class = group_class;
  topts.jobs = jobs;
  Tower t = build_tower(g, topts);
  if (t.size() == 0) throw PreconditionFailed("tower has no stages at this order bound");
  SubgroupSpec h = load_subgroup(g, h_text, 2000);
  int ref = resolve_stage(t, ref_stage);
  NormalizerReport report = normalizer_chain(g, t, h, ref, budget);
  std::ostringstream body;
  body << "h generators " << h.generators.size() << " " << finiteness_line(g, h) << "\n";
  print_chain(body, t, report.chain);
  for (const PathWord& w : report.discovered)
    body << "normalizing-word " << quoted(word_to_string(g, w)) << "\n";
  r.body = body.str();
  return r;
}

inline Report do_centralizer(const Loaded& in, const std::string& x_text, long long n,
                             int max_order, const std::string& group_class, int budget,
                             int jobs) {
  Report r;
  const GraphOfGroups& g = in.gog;
  TowerOptions topts;
  topts.max_order = max_order;
  topts.group_class = group_class;
  topts.jobs = jobs;
  Tower t = build_tower(g, topts);
  std::vector<PathWord> xs = parse_based_words(g, x_text);
  if (xs.size() != 1) throw InvalidInput("--x wants a single word");
  CentralizerReport report = centralizer_root_check(g, t, xs[0], n, budget);
  std::ostringstream body;
  body << "x " << quoted(word_to_string(g, report.x)) << "\n";
  body << "n " << report.n << "\n";
  body << "kernel-stage " << report.kernel_stage << " target "
       << t.stages[report.kernel_stage].quot.target_name << "\n";
  body << "commuting-with-power " << report.commuting.size() << " violations "
       << report.violations.size() << "\n";
  for (const PathWord& w : report.violations)
    body << "violation " << quoted(word_to_string(g, w)) << "\n";
  print_chain(body, t, report.chain);
  r.body = body.str();
  return r;
}

/* ---------- corpus ---------- */

inline std::string run_annotation(const GraphOfGroups& g, const Annotation& a) {
  if (a.kind == "nf") return word_to_string(g, britton_reduce_word(g, parse_word(g, a.input)));
  if (a.kind == "order") {
    auto k = order_of(g, britton_reduce_word(g, parse_word(g, a.input)));
    return k ? std::to_string(*k) : std::string("infinite");
  }
  if (a.kind == "euler") return rational_string(euler_characteristic(g));
  if (a.kind == "reduced") return is_reduced(g) ? "true" : "false";
  if (a.kind == "degree") {
    auto cell = g.graph.cell_by_name(a.input);
    if (!cell || !g.graph.is_vertex(*cell))
      throw InvalidInput("degree annotation names no vertex: " + a.input);
    return std::to_string(branching_degree(g, *cell));
  }
  if (a.kind == "projection")
    return free_word_to_string(g, graph_projection(g, parse_word(g, a.input)));
  throw InvalidInput("unknown annotation kind '" + a.kind + "'");
}

inline bool sample_self_checks(const GraphOfGroups& g, std::mt19937_64& rng,
                               std::ostringstream& body, const std::string& name) {
  PathWord w = random_based_word(g, rng, 4);
  PathWord r1 = britton_reduce_word(g, w);
  if (britton_reduce_word(g, r1) != r1) {
    body << "sample " << name << " FAIL reduce not idempotent on "
         << quoted(word_to_string(g, w)) << "\n";
    return false;
  }
  if (!is_britton_reduced(g, r1)) {
    body << "sample " << name << " FAIL reduced form rejected for "
         << quoted(word_to_string(g, w)) << "\n";
    return false;
  }
  if (!is_identity(g, multiply(g, w, invert(g, w)))) {
    body << "sample " << name << " FAIL w * w^-1 != 1 for " << quoted(word_to_string(g, w))
         << "\n";
    return false;
  }
  PathWord d = random_disguise(g, w, rng, 2, 2);
  if (!equal(g, w, d)) {
    body << "sample " << name << " FAIL disguised word differs for "
         << quoted(word_to_string(g, w)) << "\n";
    return false;
  }
  auto k = order_of(g, r1);
  if (k && *k <= 24) {
    PathWord p = identity_word(g, g.base_vertex);
    for (long long i = 0; i < *k; ++i) p = multiply(g, p, r1);
    if (!is_identity(g, p)) {
      body << "sample " << name << " FAIL order power not identity for "
           << quoted(word_to_string(g, w)) << "\n";
      return false;
    }
  }
  return true;
}

inline Report do_corpus(const std::string& action, const std::string& dir, int samples,
                        std::uint64_t seed) {
  Report r;
  std::ostringstream body;
  if (action == "list") {
    for (const Fixture& f : fixtures()) body << "fixture " << f.name << ": " << f.summary << "\n";
  } else if (action == "write") {
    std::filesystem::create_directories(dir);
    for (const Fixture& f : fixtures()) {
      std::filesystem::path path = std::filesystem::path(dir) / (f.name + ".gog");
      std::ofstream out(path, std::ios::binary);
      if (!out) throw InvalidInput("cannot write " + path.string());
      out << f.document;
      body << "wrote " << path.string() << "\n";
    }
  } else if (action == "verify") {
    int checks = 0, failures = 0;
    for (const Fixture& f : fixtures()) {
      GraphOfGroups g = parse(f.document);
      ValidationReport v = validate(g);
      ++checks;
      if (!v.ok()) {
        ++failures;
        body << "check " << f.name << " validate FAIL\n";
        continue;
      }
      for (const Annotation& a : f.annotations) {
        ++checks;
        std::string got = run_annotation(g, a);
        bool ok = got == a.expected;
        failures += !ok;
        body << "check " << f.name << " " << a.kind;
        if (!a.input.empty()) body << " " << quoted(a.input);
        body << " got " << quoted(got);
        if (!ok) body << " want " << quoted(a.expected);
        body << (ok ? " ok" : " FAIL") << "\n";
      }
      if (samples > 0) {
        std::mt19937_64 rng(seed ^ fnv1a(f.name));
        int good = 0;
        for (int i = 0; i < samples; ++i) {
          ++checks;
          if (sample_self_checks(g, rng, body, f.name))
            ++good;
          else
            ++failures;
        }
        body << "samples " << f.name << " " << good << "/" << samples << " ok\n";
      }
    }
    body << "checks " << checks << " failures " << failures << "\n";
    if (failures) r.exit_code = 1;
  } else {
    throw InvalidInput("corpus action must be verify, write, or list");
  }
  r.body = body.str();
  return r;
}

}  // namespace cli

/*
 * Entry point shared by the binary and the tests. Reports go to `out` with a
 * digest header; timings and errors go to `err`. Exit codes: 0 settled, 1
 * self-check failure, 2 bad input, 3 budget exhausted or undecided.
 */
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact computation in fundamental groups of graphs of finite groups"};
  app.require_subcommand(1);

  std::string input, word_text, vertex_name, h1_text, h2_text, h_text, x_text;
  std::string group_class = "all", ref_stage = "0", tower_action = "build";
  std::string corpus_action = "verify", corpus_dir = "fixtures";
  int depth = 2, max_cells = 100000, jobs = 1, rounds = 5, samples = 0;
  int quot_order = 12, tower_order = 12, conj_order = 24, norm_order = 16, cent_order = 16;
  int conj_budget = 1, norm_budget = 3, cent_budget = 4;
  long long root_n = 2;
  std::uint64_t seed = 12345;
  bool vertex_faithful = false, surjective = false, no_dedup = false, assume_closed = false;

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--input", input, "graph-of-groups file, or fixture:NAME")->required();
  };
  auto add_jobs = [&](CLI::App* cmd) {
    cmd->add_option("--jobs", jobs, "worker threads for enumeration");
  };

  CLI::App* c_validate = app.add_subcommand("validate", "check a graph-of-groups document");
  add_input(c_validate);

  CLI::App* c_reduce = app.add_subcommand("reduce", "collapse fictitious edges");
  add_input(c_reduce);

  CLI::App* c_nf = app.add_subcommand("nf", "normal form, order, and projection of a word");
  add_input(c_nf);
  c_nf->add_option("--word", word_text, "path word")->required();

  CLI::App* c_tree = app.add_subcommand("tree", "print a ball in the standard tree");
  add_input(c_tree);
  c_tree->add_option("--depth", depth, "ball radius");
  c_tree->add_option("--vertex", vertex_name, "center vertex name (default: base)");
  c_tree->add_option("--max-cells", max_cells, "cell budget");

  CLI::App* c_quot = app.add_subcommand("quotients", "enumerate finite quotients");
  add_input(c_quot);
  c_quot->add_option("--max-order", quot_order, "largest target order");
  c_quot->add_option("--class", group_class, "target class: all, solvable, or p:PRIME");
  c_quot->add_flag("--vertex-faithful", vertex_faithful, "keep only vertex-faithful quotients");
  c_quot->add_flag("--surjective", surjective, "keep only surjective quotients");
  c_quot->add_flag("--no-dedup", no_dedup, "keep automorphic duplicates");
  add_jobs(c_quot);

  CLI::App* c_tower = app.add_subcommand("tower", "build or check the quotient tower");
  add_input(c_tower);
  c_tower->add_option("action", tower_action, "build | check");
  c_tower->add_option("--max-order", tower_order, "largest target order");
  c_tower->add_option("--class", group_class, "target class");
  add_jobs(c_tower);

  CLI::App* c_conj = app.add_subcommand("conjsep", "decide conjugacy of two subgroups");
  add_input(c_conj);
  c_conj->add_option("--h1", h1_text, "generators of the first subgroup")->required();
  c_conj->add_option("--h2", h2_text, "generators of the second subgroup")->required();
  c_conj->add_option("--rounds", rounds, "dovetailing rounds");
  c_conj->add_option("--budget", conj_budget, "initial search radius");
  c_conj->add_option("--max-order", conj_order, "quotient order cap");
  c_conj->add_option("--class", group_class, "quotient class");
  c_conj->add_flag("--assume-closed", assume_closed,
                   "assert the subgroups are closed in the restricted completion");
  add_jobs(c_conj);

  CLI::App* c_norm = app.add_subcommand("normalizer", "normalizer chain over the tower");
  c_norm->set_help_flag("--help", "print help");  // frees --h below
  add_input(c_norm);
  c_norm->add_option("--h", h_text, "subgroup generators")->required();
  c_norm->add_option("--ref-stage", ref_stage, "reference stage index or target name");
  c_norm->add_option("--max-order", norm_order, "tower order bound");
  c_norm->add_option("--class", group_class, "tower class");
  c_norm->add_option("--budget", norm_budget, "word search radius");
  add_jobs(c_norm);

  CLI::App* c_cent = app.add_subcommand("centralizer", "centralizer chain and root check");
  add_input(c_cent);
  c_cent->add_option("--x", x_text, "infinite-order element")->required();
  c_cent->add_option("--n", root_n, "root exponent");
  c_cent->add_option("--max-order", cent_order, "tower order bound");
  c_cent->add_option("--class", group_class, "tower class");
  c_cent->add_option("--budget", cent_budget, "word search radius");
  add_jobs(c_cent);

  CLI::App* c_corpus = app.add_subcommand("corpus", "built-in examples: verify, write, list");
  c_corpus->add_option("action", corpus_action, "verify | write | list");
  c_corpus->add_option("--dir", corpus_dir, "output directory for write");
  c_corpus->add_option("--samples", samples, "random self-checks per fixture");
  c_corpus->add_option("--seed", seed, "random seed for self-checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out, help_err;
    int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code;
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  auto started = std::chrono::steady_clock::now();
  Report report;
  try {
    if (app.got_subcommand(c_corpus)) {
      report = cli::do_corpus(corpus_action, corpus_dir, samples, seed);
      report.command = "corpus";
      report.digest = cli::command_digest(args, "");
    } else {
      cli::Loaded in = cli::load_input(input);
      if (app.got_subcommand(c_validate)) {
        report = cli::do_validate(in);
        report.command = "validate";
      } else if (app.got_subcommand(c_reduce)) {
        report = cli::do_reduce(in);
        report.command = "reduce";
      } else if (app.got_subcommand(c_nf)) {
        report = cli::do_nf(in, word_text);
        report.command = "nf";
      } else if (app.got_subcommand(c_tree)) {
        report = cli::do_tree(in, vertex_name, depth, max_cells);
        report.command = "tree";
      } else if (app.got_subcommand(c_quot)) {
        report = cli::do_quotients(in, quot_order, group_class, vertex_faithful, surjective,
                                   no_dedup, jobs);
        report.command = "quotients";
      } else if (app.got_subcommand(c_tower)) {
        report = cli::do_tower(in, tower_action, tower_order, group_class, jobs);
        report.command = "tower";
      } else if (app.got_subcommand(c_conj)) {
        report = cli::do_conjsep(in, h1_text, h2_text, rounds, conj_budget, conj_order,
                                 group_class, assume_closed, jobs);
        report.command = "conjsep";
      } else if (app.got_subcommand(c_norm)) {
        report = cli::do_normalizer(in, h_text, ref_stage, norm_order, group_class, norm_budget,
                                    jobs);
        report.command = "normalizer";
      } else if (app.got_subcommand(c_cent)) {
        report = cli::do_centralizer(in, x_text, root_n, cent_order, group_class, cent_budget,
                                     jobs);
        report.command = "centralizer";
      }
      report.digest = cli::command_digest(args, in.document);
    }
  } catch (const BudgetExceeded& e) {
    err << "budget: " << e.what() << "\n";
    return 3;
  } catch (const BoundExceeded& e) {
    err << "budget: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  out << report.header() << report.body;
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  err << "elapsed_ms " << elapsed.count() << "\n";
  return report.exit_code;
}

}  // namespace gog
