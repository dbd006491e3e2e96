#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "gog/catalog.hpp"
#include "gog/errors.hpp"

using namespace gog;

TEST_CASE("the catalog is complete for our purposes and well ordered") {
  const std::vector<CatalogEntry>& all = catalog();
  CHECK(all.size() == 51);

  CHECK(std::is_sorted(all.begin(), all.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
    if (a.group.order() != b.group.order()) return a.group.order() < b.group.order();
    return a.name < b.name;
  }));

  std::set<std::string> names;
  for (const CatalogEntry& e : all) CHECK(names.insert(e.name).second);

  struct Expect {
    const char* name;
    int order;
    bool abelian;
  };
  for (const Expect& e :
       {Expect{"C1", 1, true}, Expect{"C12", 12, true}, Expect{"C24", 24, true},
        Expect{"C2xC2", 4, true}, Expect{"C2xC2xC6", 24, true}, Expect{"C4xC4", 16, true},
        Expect{"S3", 6, false}, Expect{"D8", 8, false}, Expect{"D24", 24, false},
        Expect{"Q8", 8, false}, Expect{"Dic3", 12, false}, Expect{"A4", 12, false},
        Expect{"S4", 24, false}, Expect{"F21", 21, false}}) {
    INFO(e.name);
    const CatalogEntry* entry = catalog_by_name(e.name);
    REQUIRE(entry != nullptr);
    CHECK(entry->group.order() == e.order);
    CHECK(entry->group.is_abelian() == e.abelian);
  }
  CHECK(catalog_by_name("M11") == nullptr);
}

TEST_CASE("named groups have their textbook structure") {
  const FiniteGroup& d8 = catalog_by_name("D8")->group;
  CHECK(centralizer_of_subgroup(d8, full_subgroup(d8)).order() == 2);
  CHECK(derived_subgroup(d8, full_subgroup(d8)).order() == 2);

  const FiniteGroup& q8 = catalog_by_name("Q8")->group;
  CHECK(centralizer_of_subgroup(q8, full_subgroup(q8)).order() == 2);
  int involutions = 0;
  for (int x = 0; x < q8.order(); ++x)
    if (q8.element_order(x) == 2) ++involutions;
  CHECK(involutions == 1);

  const FiniteGroup& dic3 = catalog_by_name("Dic3")->group;
  involutions = 0;
  for (int x = 0; x < dic3.order(); ++x)
    if (dic3.element_order(x) == 2) ++involutions;
  CHECK(involutions == 1);

  const FiniteGroup& f21 = catalog_by_name("F21")->group;
  CHECK(derived_subgroup(f21, full_subgroup(f21)).order() == 7);
  CHECK(centralizer_of_subgroup(f21, full_subgroup(f21)).order() == 1);

  const FiniteGroup& a4 = catalog_by_name("A4")->group;
  CHECK(derived_subgroup(a4, full_subgroup(a4)).order() == 4);
}

TEST_CASE("class filters select by solvability and prime power order") {
  const FiniteGroup& s4 = catalog_by_name("S4")->group;
  const FiniteGroup& d8 = catalog_by_name("D8")->group;
  const FiniteGroup& c12 = catalog_by_name("C12")->group;

  CHECK(class_contains(s4, "all"));
  CHECK(class_contains(s4, "solvable"));
  CHECK(class_contains(d8, "p:2"));
  CHECK_FALSE(class_contains(c12, "p:2"));
  CHECK_FALSE(class_contains(c12, "p:3"));
  CHECK(class_contains(catalog_by_name("C9")->group, "p:3"));
  CHECK(class_contains(catalog_by_name("C1")->group, "p:2"));

  CHECK_THROWS_AS(class_contains(s4, "p:1"), InvalidInput);
  CHECK_THROWS_AS(class_contains(s4, "nilpotent"), InvalidInput);

  /* Everything this small is solvable. */
  CHECK(catalog_up_to(24, "solvable").size() == catalog().size());
  CHECK(catalog_up_to(8).size() == 14);
  auto two_groups = catalog_up_to(16, "p:2");
  for (const CatalogEntry* e : two_groups) CHECK((e->group.order() & (e->group.order() - 1)) == 0);
  CHECK(two_groups.size() == 14);
}

TEST_CASE("automorphism groups have the right size") {
  struct Expect {
    const char* name;
    std::size_t count;
  };
  for (const Expect& e : {Expect{"C1", 1}, Expect{"C2", 1}, Expect{"C5", 4}, Expect{"C8", 4},
                          Expect{"C2xC2", 6}, Expect{"S3", 6}, Expect{"Q8", 24},
                          Expect{"C2xC2xC2", 168}}) {
    INFO(e.name);
    const FiniteGroup& g = catalog_by_name(e.name)->group;
    std::vector<ElementHom> auts = automorphisms(g);
    CHECK(auts.size() == e.count);
    for (const ElementHom& f : auts) {
      CHECK(is_injective(f));
      CHECK(is_homomorphism(f, g, g));
    }
  }

  /* Closure under composition and inversion on a small case. */
  const FiniteGroup& v4 = catalog_by_name("C2xC2")->group;
  std::vector<ElementHom> auts = automorphisms(v4);
  auto member = [&](const ElementHom& f) {
    return std::any_of(auts.begin(), auts.end(),
                       [&](const ElementHom& h) { return h.image == f.image; });
  };
  for (const ElementHom& f : auts) {
    CHECK(member(inverse_of_injective(f, v4, v4)));
    for (const ElementHom& h : auts) CHECK(member(compose(f, h)));
  }
}
