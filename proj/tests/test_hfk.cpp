#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "doctest.h"
#include "json.hpp"
#include "khdetect/hfk.hpp"

using namespace kh;

namespace {

HFKShape genus_family(int g) {
  HFKShape s;
  s.classes = {{0, g, 1},
               {-1, g - 1, 1},
               {-g, 0, 1},
               {-2 * g + 1, 1 - g, 1},
               {-2 * g, -g, 1}};
  return s;
}

// Arrow set of a complex as source->target generator index pairs (1-based,
// generators ordered by decreasing Maslov grading).
std::set<std::pair<int, int>> arrows(const FilteredComplex& c) {
  std::set<std::pair<int, int>> out;
  for (int s = 0; s < c.size(); s++)
    for (int t = 0; t < c.size(); t++)
      if (c.differential[t][s] != 0) out.insert({s + 1, t + 1});
  return out;
}

}  // namespace

TEST_CASE("shape accessors") {
  auto s = genus_family(2);
  CHECK(s.total_dim() == 5);
  CHECK(s.genus() == 2);
  CHECK(s.dim_at_alexander(0) == 1);
  CHECK(s.single_delta() == -2);
  CHECK(s.symmetric());

  HFKShape fig8;
  fig8.classes = {{1, 1, 1}, {0, 0, 3}, {-1, -1, 1}};
  CHECK(fig8.symmetric());
  CHECK(fig8.single_delta() == 0);
  CHECK(fig8.mirrored() == fig8);
  CHECK(alexander_from_hfk(fig8).str() == "-1*t^-1 + 3 + -1*t^1");

  HFKShape lopsided;
  lopsided.classes = {{0, 1, 1}, {0, 0, 1}};
  CHECK_FALSE(lopsided.symmetric());
}

TEST_CASE("alexander polynomial of the genus-2 shape") {
  auto p = alexander_from_hfk(genus_family(2));
  auto expected = LaurentPoly::monomial('t', 1, 2) +
                  LaurentPoly::monomial('t', -1, 1) +
                  LaurentPoly::constant('t', 1) +
                  LaurentPoly::monomial('t', -1, -1) +
                  LaurentPoly::monomial('t', 1, -2);
  CHECK(p == expected);
  CHECK(p.eval_at_one() == 1);
}

TEST_CASE("dowlin candidates") {
  CHECK(dowlin_candidates(5) == std::vector<int>{1, 3, 5});
  CHECK(dowlin_candidates(1) == std::vector<int>{1});
  CHECK_THROWS_AS(dowlin_candidates(4), std::invalid_argument);
  CHECK_THROWS_AS(dowlin_candidates(-1), std::invalid_argument);
}

TEST_CASE("differential enumeration at genus 2") {
  auto cs = enumerate_differentials(genus_family(2));
  REQUIRE(cs.size() == 3);
  std::multiset<int> taus;
  for (auto& c : cs) {
    CHECK(c.gradings_ok());
    CHECK(c.d_squared_is_zero());
    CHECK(c.homology_dim() == 1);
    taus.insert(tau(c));
  }
  CHECK(taus == std::multiset<int>{-2, 0, 2});
}

TEST_CASE("tau sign convention") {
  auto cs = enumerate_differentials(genus_family(2));
  for (auto& c : cs) {
    auto a = arrows(c);
    if (a == std::set<std::pair<int, int>>{{2, 3}, {4, 5}}) CHECK(tau(c) == 2);
    if (a == std::set<std::pair<int, int>>{{1, 2}, {3, 4}}) CHECK(tau(c) == -2);
    if (a == std::set<std::pair<int, int>>{{1, 2}, {4, 5}}) CHECK(tau(c) == 0);
  }
}

TEST_CASE("plane complex elimination at genus 2") {
  auto cs = enumerate_differentials(genus_family(2));
  int eliminated = 0;
  for (auto& c : cs) {
    auto witness = d_squared_witness(build_plane_complex(c, 6));
    if (tau(c) == 0) {
      REQUIRE(witness.has_value());
      eliminated++;
      // The witness lives on the interior of the truncation window.
      CHECK(std::abs(witness->first.i) <= 4);
      CHECK(std::abs(witness->first.j) <= 4);
    } else {
      CHECK_FALSE(witness.has_value());
    }
  }
  CHECK(eliminated == 1);
}

TEST_CASE("higher genus: a single differential, always eliminated") {
  for (int g = 3; g <= 8; g++) {
    CAPTURE(g);
    auto cs = enumerate_differentials(genus_family(g));
    REQUIRE(cs.size() == 1);
    CHECK(arrows(cs[0]) == std::set<std::pair<int, int>>{{1, 2}, {4, 5}});
    CHECK(tau(cs[0]) == 0);
    CHECK(d_squared_witness(build_plane_complex(cs[0], 6)).has_value());
  }
}

TEST_CASE("small dimension routing") {
  auto u = apply_small_dim_axioms(1, 5);
  CHECK(u.certificate_type == "kh_dimension");
  REQUIRE_FALSE(u.trace.empty());
  CHECK(u.trace[0].rule == "unknot_detection");
  CHECK(axiom("unknot_detection").citation.find("Theorem 1.2") !=
        std::string::npos);

  auto t = apply_small_dim_axioms(3, 5);
  CHECK(t.trace[0].rule == "trefoil_detection");
  CHECK(axiom("trefoil_detection").citation.find("Corollary 8") !=
        std::string::npos);

  CHECK_THROWS_AS(apply_small_dim_axioms(5, 5), std::invalid_argument);
}

TEST_CASE("admissible shapes") {
  auto e = admissible_shapes(5, 8);
  // Figure-eight plus the genus-2..8 family.
  REQUIRE(e.surviving.size() == 8);
  CHECK(e.surviving[0].first.dim_at_alexander(0) == 3);
  for (int g = 2; g <= 8; g++)
    CHECK(e.surviving[g - 1].first == genus_family(g));

  std::multiset<std::string> types;
  for (auto& r : e.rejected) types.insert(r.certificate_type);
  CHECK(types.count("kh_dimension") == 1);       // dims (5) at a = 0
  CHECK(types.count("dimension_overflow") == 2); // (1,3,1) i > 1; gapped 5-tuple
  CHECK(types.count("alexander_at_one") == 8);   // (2,1,2) per genus
  for (auto& r : e.rejected)
    if (r.certificate_type == "alexander_at_one")
      CHECK((r.certificate.find("3") != std::string::npos ||
             r.certificate.find("5") != std::string::npos));
}

TEST_CASE("classification at dimension 5") {
  auto report = classify(5, 8);
  REQUIRE(report.accepted.size() == 2);

  auto& fig8 = report.accepted[0];
  CHECK(fig8.name == "figure-eight");
  CHECK(fig8.genus == 1);
  CHECK(fig8.fibered);
  CHECK_FALSE(fig8.strongly_quasipositive);
  CHECK(fig8.shape.classes == std::vector<HFKClass>{
                                  {1, 1, 1}, {0, 0, 3}, {-1, -1, 1}});
  CHECK(fig8.alexander.str() == "-1*t^-1 + 3 + -1*t^1");
  CHECK(delta_of_case(fig8) == 0);

  auto& sqp = report.accepted[1];
  CHECK(sqp.genus == 2);
  CHECK(sqp.fibered);
  CHECK(sqp.strongly_quasipositive);
  CHECK(sqp.tau_value == 2);
  CHECK(sqp.shape.classes == std::vector<HFKClass>{{0, 2, 1},
                                                   {-1, 1, 1},
                                                   {-2, 0, 1},
                                                   {-3, -1, 1},
                                                   {-4, -2, 1}});
  CHECK(sqp.alexander == alexander_from_hfk(genus_family(2)));
  CHECK(delta_of_case(sqp) == 2);
  REQUIRE(sqp.mirror.has_value());
  CHECK(sqp.mirror->tau_value == -2);
  CHECK(sqp.mirror->delta_numerator == -4);
  CHECK(sqp.mirror->shape.classes == std::vector<HFKClass>{{4, 2, 1},
                                                           {3, 1, 1},
                                                           {2, 0, 1},
                                                           {1, -1, 1},
                                                           {0, -2, 1}});

  // The tau = 0 complex is rejected with a concrete witness pair.
  bool witness_seen = false;
  for (auto& r : report.rejected)
    if (r.certificate_type == "d_squared_witness") {
      witness_seen = true;
      CHECK(r.description.find("x1->x2, x4->x5") != std::string::npos);
    }
  CHECK(witness_seen);

  // Report JSON is well-formed and carries the citations.
  auto j = nlohmann::json::parse(report.to_json());
  CHECK(j["accepted"].size() == 2);
  CHECK(j["axioms_used"].size() == report.axioms_used.size());
  bool dowlin = false;
  for (auto& ax : j["axioms_used"])
    if (ax["citation"].get<std::string>().find("Dowlin") != std::string::npos)
      dowlin = true;
  CHECK(dowlin);
}

TEST_CASE("classification routing for dimensions 1 and 3") {
  auto r1 = classify(1, 8);
  CHECK(r1.accepted.empty());
  REQUIRE(r1.rejected.size() == 1);
  CHECK(r1.rejected[0].description.find("unknot") != std::string::npos);

  auto r3 = classify(3, 8);
  CHECK(r3.accepted.empty());
  REQUIRE(r3.rejected.size() == 2);
  CHECK(r3.rejected[1].description.find("trefoil") != std::string::npos);

  CHECK_THROWS_AS(classify(4, 8), std::invalid_argument);
  CHECK_THROWS_AS(classify(7, 8), std::invalid_argument);
}
