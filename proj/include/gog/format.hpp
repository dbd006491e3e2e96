#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gog/errors.hpp"
#include "gog/graph_of_groups.hpp"
#include "gog/words.hpp"

namespace gog {

/*
 * Line-oriented description of a graph of groups.
 *
 *   # comment
 *   [graph]
 *   vertices = v1 v2
 *   edge = e v1 v2
 *   [group.v1]
 *   table = [[0,1],[1,0]]
 *   labels = ["1","a"]
 *   [group.v2]
 *   perm_gens = (0 1)
 *   degree = 2
 *   [boundary.e]
 *   into_source = [0]
 *   into_target = [0]
 *   [basepoint]
 *   vertex = v1
 *   [tree]
 *   edges = e
 *
 * Groups come either as a full multiplication table (optional labels) or as
 * permutation generators with a degree. Boundary lists give the image of
 * every edge-group element by index. The tree section may be omitted; a
 * breadth-first tree from the basepoint is then used.
 */

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline std::vector<Permutation> parse_cycles(const std::string& text, int degree, int line) {
  std::vector<Permutation> gens;
  Permutation current(degree);
  for (int i = 0; i < degree; ++i) current[i] = i;
  bool have = false;
  std::size_t at = 0;
  auto flush = [&]() {
    if (have) {
      gens.push_back(current);
      for (int i = 0; i < degree; ++i) current[i] = i;
      have = false;
    }
  };
  while (at < text.size()) {
    char c = text[at];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++at;
    } else if (c == ',') {
      flush();
      ++at;
    } else if (c == '(') {
      std::size_t close = text.find(')', at);
      if (close == std::string::npos) throw ParseError("unbalanced cycle", line);
      std::vector<int> cycle;
      for (const std::string& tok : split_ws(text.substr(at + 1, close - at - 1))) {
        int v;
        try {
          v = std::stoi(tok);
        } catch (...) {
          throw ParseError("bad cycle entry '" + tok + "'", line);
        }
        if (v < 0 || v >= degree) throw ParseError("cycle entry out of degree range", line);
        cycle.push_back(v);
      }
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        int from = cycle[i], to = cycle[(i + 1) % cycle.size()];
        if (current[from] != from) throw ParseError("point repeated in permutation", line);
        if (!cycle.empty() && to != from) current[from] = to;
      }
      have = true;
      at = close + 1;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "' in permutation list", line);
    }
  }
  flush();
  return gens;
}

struct GroupSpec {
  std::optional<nlohmann::json> table;
  std::optional<nlohmann::json> labels;
  std::string perm_gens;
  std::optional<int> degree;
  int line = 0;

  FiniteGroup build(const std::string& owner) const {
    if (table) {
      if (!table->is_array()) throw SchemaError("table of " + owner + " must be an array");
      std::vector<std::vector<int>> rows;
      for (const auto& row : *table) {
        if (!row.is_array()) throw SchemaError("table row of " + owner + " must be an array");
        rows.emplace_back();
        for (const auto& v : row) {
          if (!v.is_number_integer()) throw SchemaError("table entry of " + owner + " not an int");
          rows.back().push_back(v.get<int>());
        }
      }
      std::vector<std::string> names;
      if (labels) {
        for (const auto& v : *labels) {
          if (!v.is_string()) throw SchemaError("label of " + owner + " not a string");
          names.push_back(v.get<std::string>());
        }
      }
      try {
        return FiniteGroup::from_table(rows, std::move(names));
      } catch (const NotAGroup& err) {
        throw SchemaError("group at " + owner + ": " + err.what());
      }
    }
    if (!perm_gens.empty() || degree) {
      if (!degree) throw SchemaError("group at " + owner + " has perm_gens but no degree");
      FiniteGroup g = FiniteGroup::from_permutations(*degree, parse_cycles(perm_gens, *degree, line));
      return g;
    }
    throw SchemaError("group at " + owner + " needs table or perm_gens");
  }
};

inline ElementHom parse_image_list(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) throw SchemaError(what + " must be an array");
  ElementHom f;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw SchemaError(what + " entry not an int");
    f.image.push_back(v.get<int>());
  }
  return f;
}

}  // namespace detail

inline GraphOfGroups parse(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::string section;

  std::vector<std::string> vertex_names;
  std::vector<std::tuple<std::string, std::string, std::string>> edge_decls;
  std::map<std::string, detail::GroupSpec> group_specs;
  std::map<std::string, std::pair<std::optional<nlohmann::json>, std::optional<nlohmann::json>>>
      boundary_specs;
  std::optional<std::string> base_name;
  std::optional<std::vector<std::string>> tree_names;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = detail::trim(raw);
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = detail::trim(line.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", line_no);
      section = line.substr(1, line.size() - 2);
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line_no);
    std::string key = detail::trim(line.substr(0, eq));
    std::string value = detail::trim(line.substr(eq + 1));
    if (section == "graph") {
      if (key == "vertices") {
        for (const auto& name : detail::split_ws(value)) vertex_names.push_back(name);
      } else if (key == "edge") {
        auto parts = detail::split_ws(value);
        if (parts.size() != 3) throw ParseError("edge wants: name source target", line_no);
        edge_decls.emplace_back(parts[0], parts[1], parts[2]);
      } else {
        throw ParseError("unknown key '" + key + "' in [graph]", line_no);
      }
    } else if (section.rfind("group.", 0) == 0) {
      auto& spec = group_specs[section.substr(6)];
      spec.line = line_no;
      if (key == "table")
        spec.table = nlohmann::json::parse(value, nullptr, false);
      else if (key == "labels")
        spec.labels = nlohmann::json::parse(value, nullptr, false);
      else if (key == "perm_gens")
        spec.perm_gens = value;
      else if (key == "degree")
        spec.degree = std::stoi(value);
      else
        throw ParseError("unknown key '" + key + "' in [" + section + "]", line_no);
      if ((key == "table" || key == "labels") &&
          nlohmann::json::parse(value, nullptr, false).is_discarded())
        throw ParseError("malformed list", line_no);
    } else if (section.rfind("boundary.", 0) == 0) {
      auto& spec = boundary_specs[section.substr(9)];
      nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
      if (parsed.is_discarded()) throw ParseError("malformed list", line_no);
      if (key == "into_source")
        spec.first = parsed;
      else if (key == "into_target")
        spec.second = parsed;
      else
        throw ParseError("unknown key '" + key + "' in [" + section + "]", line_no);
    } else if (section == "basepoint") {
      if (key != "vertex") throw ParseError("unknown key '" + key + "' in [basepoint]", line_no);
      base_name = value;
    } else if (section == "tree") {
      if (key != "edges") throw ParseError("unknown key '" + key + "' in [tree]", line_no);
      tree_names = detail::split_ws(value);
    } else if (section.empty()) {
      throw ParseError("key before any section", line_no);
    } else {
      throw ParseError("unknown section [" + section + "]", line_no);
    }
  }

  if (vertex_names.empty()) throw SchemaError("no vertices declared");
  for (const auto& name : vertex_names)
    if (name.find('.') != std::string::npos)
      throw SchemaError("cell name '" + name + "' may not contain '.'");

  GraphOfGroups g;
  g.graph.vertex_count = static_cast<int>(vertex_names.size());
  g.graph.names = vertex_names;
  std::map<std::string, int> vertex_index;
  for (int i = 0; i < g.graph.vertex_count; ++i) {
    if (!vertex_index.emplace(vertex_names[i], i).second)
      throw SchemaError("duplicate vertex name '" + vertex_names[i] + "'");
  }
  for (const auto& [name, src, dst] : edge_decls) {
    if (name.find('.') != std::string::npos)
      throw SchemaError("cell name '" + name + "' may not contain '.'");
    auto si = vertex_index.find(src), di = vertex_index.find(dst);
    if (si == vertex_index.end()) throw SchemaError("edge " + name + ": unknown vertex " + src);
    if (di == vertex_index.end()) throw SchemaError("edge " + name + ": unknown vertex " + dst);
    g.graph.edges.push_back({si->second, di->second});
    g.graph.names.push_back(name);
  }

  for (int c = 0; c < g.graph.cell_count(); ++c) {
    auto it = group_specs.find(g.graph.name(c));
    if (it == group_specs.end())
      throw SchemaError("missing [group." + g.graph.name(c) + "] section");
    g.groups.push_back(it->second.build(g.graph.name(c)));
  }
  for (const auto& [name, spec] : group_specs)
    if (!g.graph.cell_by_name(name)) throw SchemaError("group for unknown cell '" + name + "'");

  for (int i = 0; i < g.graph.edge_count(); ++i) {
    const std::string& name = g.graph.name(g.graph.edge_cell(i));
    auto it = boundary_specs.find(name);
    if (it == boundary_specs.end()) throw SchemaError("missing [boundary." + name + "] section");
    if (!it->second.first) throw SchemaError("boundary." + name + " lacks into_source");
    if (!it->second.second) throw SchemaError("boundary." + name + " lacks into_target");
    g.into_source.push_back(detail::parse_image_list(*it->second.first, "into_source of " + name));
    g.into_target.push_back(detail::parse_image_list(*it->second.second, "into_target of " + name));
  }
  for (const auto& [name, spec] : boundary_specs) {
    auto cell = g.graph.cell_by_name(name);
    if (!cell || !g.graph.is_edge(*cell))
      throw SchemaError("boundary for unknown edge '" + name + "'");
  }

  if (!base_name) throw SchemaError("missing [basepoint] section");
  auto bi = vertex_index.find(*base_name);
  if (bi == vertex_index.end()) throw SchemaError("unknown basepoint '" + *base_name + "'");
  g.base_vertex = bi->second;

  if (tree_names) {
    for (const auto& name : *tree_names) {
      auto cell = g.graph.cell_by_name(name);
      if (!cell || !g.graph.is_edge(*cell)) throw SchemaError("tree lists unknown edge '" + name + "'");
      g.tree_edges.push_back(*cell);
    }
    std::sort(g.tree_edges.begin(), g.tree_edges.end());
  } else {
    g.tree_edges = bfs_spanning_tree(g.graph, g.base_vertex);
  }
  return g;
}

inline std::string serialize(const GraphOfGroups& g) {
  std::ostringstream out;
  out << "[graph]\n";
  out << "vertices =";
  for (int v = 0; v < g.graph.vertex_count; ++v) out << ' ' << g.graph.name(v);
  out << '\n';
  for (int i = 0; i < g.graph.edge_count(); ++i) {
    int e = g.graph.edge_cell(i);
    out << "edge = " << g.graph.name(e) << ' ' << g.graph.name(g.graph.d0(e)) << ' '
        << g.graph.name(g.graph.d1(e)) << '\n';
  }
  for (int c = 0; c < g.graph.cell_count(); ++c) {
    const FiniteGroup& gc = g.group(c);
    out << "\n[group." << g.graph.name(c) << "]\n";
    out << "table = [";
    for (int a = 0; a < gc.order(); ++a) {
      if (a) out << ',';
      out << '[';
      for (int b = 0; b < gc.order(); ++b) {
        if (b) out << ',';
        out << gc.mul(a, b);
      }
      out << ']';
    }
    out << "]\n";
    out << "labels = [";
    for (int a = 0; a < gc.order(); ++a) {
      if (a) out << ',';
      out << nlohmann::json(gc.label(a)).dump();
    }
    out << "]\n";
  }
  for (int i = 0; i < g.graph.edge_count(); ++i) {
    out << "\n[boundary." << g.graph.name(g.graph.edge_cell(i)) << "]\n";
    auto list = [&](const ElementHom& f) {
      std::string s = "[";
      for (int x = 0; x < f.size(); ++x) {
        if (x) s += ',';
        s += std::to_string(f(x));
      }
      return s + "]";
    };
    out << "into_source = " << list(g.into_source[i]) << '\n';
    out << "into_target = " << list(g.into_target[i]) << '\n';
  }
  out << "\n[basepoint]\nvertex = " << g.graph.name(g.base_vertex) << '\n';
  out << "\n[tree]\nedges =";
  for (int e : g.tree_edges) out << ' ' << g.graph.name(e);
  out << '\n';
  return out.str();
}

/*
 * Word syntax: whitespace-separated syllables. `v.a` is element a at vertex
 * v, `e` and `e^-1` traverse edge e, `1` is the identity (useful alone).
 * Consecutive group syllables at one vertex multiply out.
 */
inline PathWord parse_word(const GraphOfGroups& g, const std::string& text) {
  PathWord w;
  int current = -1;  // vertex so far, -1 until pinned
  int acc = 0;
  auto pin = [&](int vertex, int position) {
    if (current < 0) {
      current = vertex;
      w.start = vertex;
      acc = g.group(vertex).identity();
    } else if (current != vertex) {
      throw TypeError("syllable lives at " + g.graph.name(vertex) + " but the path is at " +
                          g.graph.name(current),
                      position);
    }
  };
  auto tokens = detail::split_ws(text);
  int position = 0;
  for (const std::string& tok : tokens) {
    if (tok == "1") {
      ++position;
      continue;
    }
    std::size_t dot = tok.find('.');
    if (dot != std::string::npos) {
      std::string cell_name = tok.substr(0, dot);
      std::string label = tok.substr(dot + 1);
      auto cell = g.graph.cell_by_name(cell_name);
      if (!cell || !g.graph.is_vertex(*cell))
        throw TypeError("unknown vertex '" + cell_name + "'", position);
      auto elem = g.group(*cell).element_by_label(label);
      if (!elem)
        throw TypeError("no element '" + label + "' at " + cell_name, position);
      pin(*cell, position);
      acc = g.group(*cell).mul(acc, *elem);
    } else {
      int sign = +1;
      std::string name = tok;
      if (name.size() > 3 && name.compare(name.size() - 3, 3, "^-1") == 0) {
        sign = -1;
        name = name.substr(0, name.size() - 3);
      }
      auto cell = g.graph.cell_by_name(name);
      if (!cell || !g.graph.is_edge(*cell))
        throw TypeError("unknown edge '" + name + "'", position);
      EdgeStep st{*cell, sign};
      pin(step_entry_vertex(g.graph, st), position);
      w.syllables.push_back(acc);
      w.steps.push_back(st);
      current = step_exit_vertex(g.graph, st);
      acc = g.group(current).identity();
    }
    ++position;
  }
  if (current < 0) {
    w.start = g.base_vertex;
    acc = g.group(w.start).identity();
  }
  w.syllables.push_back(acc);
  check_word(g, w);
  return w;
}

inline std::string word_to_string(const GraphOfGroups& g, const PathWord& w) {
  check_word(g, w);
  std::vector<std::string> tokens;
  int v = w.start;
  for (int i = 0; i <= w.length(); ++i) {
    if (w.syllables[i] != g.group(v).identity())
      tokens.push_back(g.graph.name(v) + "." + g.group(v).label(w.syllables[i]));
    if (i == w.length()) break;
    const EdgeStep& st = w.steps[i];
    tokens.push_back(g.graph.name(st.edge_cell) + (st.sign > 0 ? "" : "^-1"));
    v = step_exit_vertex(g.graph, st);
  }
  if (tokens.empty())
    tokens.push_back(g.graph.name(w.start) + "." + g.group(w.start).label(g.group(w.start).identity()));
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

inline std::string free_word_to_string(const GraphOfGroups& g, const std::vector<EdgeStep>& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += g.graph.name(w[i].edge_cell) + (w[i].sign > 0 ? "" : "^-1");
  }
  return out;
}

/* Semicolon-separated word lists, as used for subgroup generators. */
inline std::vector<PathWord> parse_word_list(const GraphOfGroups& g, const std::string& text) {
  std::vector<PathWord> words;
  std::size_t at = 0;
  while (at <= text.size()) {
    std::size_t semi = text.find(';', at);
    std::string part =
        semi == std::string::npos ? text.substr(at) : text.substr(at, semi - at);
    if (!detail::trim(part).empty()) words.push_back(parse_word(g, detail::trim(part)));
    if (semi == std::string::npos) break;
    at = semi + 1;
  }
  return words;
}

}  // namespace gog
