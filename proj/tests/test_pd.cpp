#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "khdetect/pd.hpp"

using namespace kh;

namespace {
const char* kTrefoil = "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)";
const char* kFigureEight = "X(4,2,5,1);X(8,6,1,5);X(6,3,7,4);X(2,7,3,8)";
}  // namespace

TEST_CASE("trefoil parses with all-positive crossings") {
  auto d = parse_pd(kTrefoil);
  CHECK(d.n_crossings() == 3);
  CHECK(d.n_arcs == 6);
  CHECK(d.n_plus == 3);
  CHECK(d.n_minus == 0);
  CHECK(d.writhe() == 3);
  auto ors = orientations(d);
  for (auto& o : ors) {
    CHECK(o.sign == 1);
    CHECK_FALSE(o.over_from_d);
  }
}

TEST_CASE("figure-eight has writhe zero") {
  auto d = parse_pd(kFigureEight);
  CHECK(d.n_crossings() == 4);
  CHECK(d.n_plus == 2);
  CHECK(d.n_minus == 2);
  CHECK(d.writhe() == 0);
}

TEST_CASE("bracketed transliteration") {
  auto a = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]");
  auto b = parse_pd(kTrefoil);
  CHECK(a == b);
}

TEST_CASE("print then parse is the identity") {
  auto d = parse_pd(kFigureEight);
  CHECK(parse_pd(print_pd(d)) == d);
  CHECK(print_pd(d) == kFigureEight);
}

TEST_CASE("unknot literal") {
  auto d = parse_pd("unknot");
  CHECK(d.is_unknot());
  CHECK(d.n_arcs == 1);
  CHECK(d.writhe() == 0);
  CHECK(print_pd(d) == "unknot");
}

TEST_CASE("parse errors name the bad token") {
  CHECK_THROWS_AS(parse_pd("X(1,4,2)"), ParseError);
  CHECK_THROWS_AS(parse_pd("Y(1,4,2,5)"), ParseError);
  CHECK_THROWS_AS(parse_pd(""), ParseError);
  CHECK_THROWS_WITH_AS(parse_pd("X(1,banana,2,5)"),
                       doctest::Contains("banana"), ParseError);
}

TEST_CASE("positivity violations are reported as data") {
  PlanarDiagram d;
  d.crossings = {{{0, 2, 1, 3}}, {{1, 4, 2, 3}}};
  d.n_arcs = 4;
  auto bad = validate(d);
  REQUIRE_FALSE(bad.empty());
  bool named = false;
  for (auto& v : bad)
    if (v.find("non-positive") != std::string::npos) named = true;
  CHECK(named);
}

TEST_CASE("label multiplicity is enforced") {
  // Arc 1 appears three times.
  CHECK_THROWS_AS(parse_pd("X(1,1,2,1);X(3,6,4,5);X(5,2,6,3)"),
                  ValidationError);
}

TEST_CASE("multi-component strand patterns are rejected") {
  // Locally consistent tuples whose transitions do not close into a single
  // knot strand.
  CHECK_THROWS_AS(parse_pd("X(1,4,2,3);X(3,6,4,5);X(5,2,6,1)"),
                  ValidationError);
}

TEST_CASE("local orientation is enforced") {
  // c must be the successor of a.
  CHECK_THROWS_AS(parse_pd("X(1,4,3,5);X(2,6,4,1);X(5,3,6,2)"),
                  ValidationError);
}

TEST_CASE("mirror negates the writhe and is an involution") {
  auto d = parse_pd(kTrefoil);
  auto m = mirror(d);
  CHECK(validate(m).empty());
  CHECK(m.writhe() == -3);
  CHECK(mirror(m) == d);

  auto f = parse_pd(kFigureEight);
  CHECK(mirror(f).writhe() == 0);
  CHECK(mirror(mirror(f)) == f);
}

TEST_CASE("connected sum") {
  auto t = parse_pd(kTrefoil);
  auto f = parse_pd(kFigureEight);

  auto granny = connect_sum(t, t);
  CHECK(validate(granny).empty());
  CHECK(granny.n_crossings() == 6);
  CHECK(granny.writhe() == 6);

  auto square = connect_sum(t, mirror(t));
  CHECK(validate(square).empty());
  CHECK(square.writhe() == 0);

  auto tf = connect_sum(t, f);
  CHECK(validate(tf).empty());
  CHECK(tf.n_crossings() == 7);
  CHECK(tf.writhe() == 3);

  auto u = parse_pd("unknot");
  CHECK(connect_sum(t, u) == t);
  CHECK(connect_sum(u, t) == t);
}
