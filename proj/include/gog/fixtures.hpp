#pragma once

#include <string>
#include <vector>

namespace gog {

/*
 * Built-in worked examples. Each carries its document in the on-disk text
 * format plus annotations checked by the corpus runner: expected normal
 * forms, element orders, Euler characteristics, branching degrees and graph
 * projections.
 */
struct Annotation {
  std::string kind;      // nf | order | euler | reduced | degree | projection
  std::string input;
  std::string expected;
};

struct Fixture {
  std::string name;
  std::string summary;
  std::string document;
  std::vector<Annotation> annotations;
};

inline const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = {
      {"dinf",
       "segment of groups C2 * C2, the infinite dihedral group",
       R"([graph]
vertices = v1 v2
edge = e v1 v2

[group.v1]
table = [[0,1],[1,0]]
labels = ["1","a"]

[group.v2]
table = [[0,1],[1,0]]
labels = ["1","b"]

[group.e]
table = [[0]]
labels = ["1"]

[boundary.e]
into_source = [0]
into_target = [0]

[basepoint]
vertex = v1

[tree]
edges = e
)",
       {
           {"reduced", "", "true"},
           {"euler", "", "0"},
           {"nf", "v1.a e e^-1", "v1.a"},
           {"nf", "v1.a e v2.b e^-1", "v1.a e v2.b e^-1"},
           {"nf", "e v2.1 e^-1", "v1.1"},
           {"order", "v1.a", "2"},
           {"order", "v1.1", "1"},
           {"order", "v1.a e v2.b e^-1", "infinite"},
           {"degree", "v1", "2"},
           {"degree", "v2", "2"},
           {"projection", "v1.a e v2.b e^-1", "1"},
       }},
      {"modular",
       "segment of groups C2 * C3",
       R"([graph]
vertices = v1 v2
edge = e v1 v2

[group.v1]
table = [[0,1],[1,0]]
labels = ["1","s"]

[group.v2]
table = [[0,1,2],[1,2,0],[2,0,1]]
labels = ["1","r","r2"]

[group.e]
table = [[0]]
labels = ["1"]

[boundary.e]
into_source = [0]
into_target = [0]

[basepoint]
vertex = v1

[tree]
edges = e
)",
       {
           {"reduced", "", "true"},
           {"euler", "", "-1/6"},
           {"nf", "v1.s e v2.r e^-1 v1.s e v2.r e^-1",
            "v1.s e v2.r e^-1 v1.s e v2.r e^-1"},
           {"order", "v1.s", "2"},
           {"order", "e v2.r e^-1", "3"},
           {"order", "v1.s e v2.r e^-1", "infinite"},
           {"degree", "v1", "2"},
           {"degree", "v2", "3"},
           {"projection", "v1.s e v2.r e^-1", "1"},
       }},
      {"hnn_c2",
       "loop of groups over C2 with both boundaries the identity, C2 x Z",
       R"([graph]
vertices = v
edge = t v v

[group.v]
table = [[0,1],[1,0]]
labels = ["1","c"]

[group.t]
table = [[0,1],[1,0]]
labels = ["1","m"]

[boundary.t]
into_source = [0,1]
into_target = [0,1]

[basepoint]
vertex = v

[tree]
edges =
)",
       {
           {"reduced", "", "true"},
           {"euler", "", "0"},
           {"nf", "v.c t v.c t^-1", "v.1"},
           {"nf", "t v.c t^-1", "v.c"},
           {"order", "t", "infinite"},
           {"order", "v.c t", "infinite"},
           {"order", "v.c", "2"},
           {"degree", "v", "2"},
           {"projection", "v.c t v.c t^-1", "1"},
           {"projection", "v.c t", "t"},
       }},
      {"f2",
       "wedge of two loops with trivial groups, the free group of rank 2",
       R"([graph]
vertices = v
edge = x v v
edge = y v v

[group.v]
table = [[0]]
labels = ["1"]

[group.x]
table = [[0]]
labels = ["1"]

[group.y]
table = [[0]]
labels = ["1"]

[boundary.x]
into_source = [0]
into_target = [0]

[boundary.y]
into_source = [0]
into_target = [0]

[basepoint]
vertex = v

[tree]
edges =
)",
       {
           {"reduced", "", "true"},
           {"euler", "", "-1"},
           {"nf", "x y y^-1 x^-1", "v.1"},
           {"nf", "x y", "x y"},
           {"order", "x y", "infinite"},
           {"degree", "v", "4"},
           {"projection", "x y x^-1", "x y x^-1"},
       }},
      {"c4chain",
       "three-vertex chain C4 - V4 - C4 over C2 edge groups",
       R"([graph]
vertices = v1 v2 v3
edge = e1 v1 v2
edge = e2 v2 v3

[group.v1]
table = [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]
labels = ["1","x","x2","x3"]

[group.v2]
table = [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]
labels = ["1","p","q","pq"]

[group.v3]
table = [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]
labels = ["1","y","y2","y3"]

[group.e1]
table = [[0,1],[1,0]]
labels = ["1","m"]

[group.e2]
table = [[0,1],[1,0]]
labels = ["1","m"]

[boundary.e1]
into_source = [0,2]
into_target = [0,1]

[boundary.e2]
into_source = [0,2]
into_target = [0,2]

[basepoint]
vertex = v1

[tree]
edges = e1 e2
)",
       {
           {"reduced", "", "true"},
           {"euler", "", "-1/4"},
           {"nf", "v1.x2 e1 v2.p e1^-1", "v1.1"},
           {"nf", "v1.x e1 v2.q e1^-1", "v1.x e1 v2.q e1^-1"},
           {"order", "v1.x", "4"},
           {"order", "v1.x e1 v2.q e1^-1", "infinite"},
           {"degree", "v1", "2"},
           {"degree", "v2", "4"},
           {"degree", "v3", "2"},
           {"projection", "v1.x e1 v2.q e1^-1", "1"},
       }},
  };
  return all;
}

inline const Fixture* fixture_by_name(const std::string& name) {
  for (const Fixture& f : fixtures())
    if (f.name == name) return &f;
  return nullptr;
}

}  // namespace gog
