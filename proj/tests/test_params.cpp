#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "powemb/params.hpp"

#include <random>

using namespace powemb;

namespace {
Rational R(long n, long d = 1) { return Rational(n) / Rational(d); }
}  // namespace

TEST_CASE("parse_rational is exact") {
  CHECK(parse_rational("3/4") == R(3, 4));
  CHECK(parse_rational("-1/3") == R(-1, 3));
  CHECK(parse_rational("0.25") == R(1, 4));
  CHECK(parse_rational(" 2 ") == R(2));
  CHECK(parse_rational("1e-2") == R(1, 100));
  CHECK(parse_rational("0.1/0.3") == R(1, 3));
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("parse_extended accepts infinity") {
  CHECK(parse_extended("inf").is_infinite());
  CHECK(parse_extended("3/2") == Extended(R(3, 2)));
  CHECK_THROWS_AS(parse_extended("-1"), RangeError);
  CHECK(Extended::infinity().reciprocal() == 0);
  CHECK(Extended(4).reciprocal() == R(1, 4));
  CHECK(Extended(2) < Extended::infinity());
  CHECK_FALSE(Extended::infinity() < Extended::infinity());
}

TEST_CASE("rational_from_double uses the shortest round-trip decimal") {
  CHECK(rational_from_double(0.1) == R(1, 10));
  CHECK(rational_from_double(-2.5) == R(-5, 2));
  CHECK(rational_str(R(-3, 4)) == "-3/4");
  CHECK(rational_str(R(6, 3)) == "2");
}

TEST_CASE("validate canonicalizes") {
  const auto w = validate(SpaceSpec::sobolev(R(1, 2), 2, 0));
  CHECK(w.family == Family::Besov);
  CHECK(w.q.has_value());
  CHECK(*w.q == Extended(2));

  const auto l = validate(SpaceSpec::lebesgue(2, 0));
  CHECK(l.family == Family::BesselPotential);
  CHECK(l.s == 0);

  CHECK_THROWS_AS(validate(SpaceSpec::besov(1, 2, 1, -1)), RangeError);
  CHECK_THROWS_AS(validate(SpaceSpec::besov(1, 1, 1, 0)), RangeError);
  CHECK_THROWS_AS(validate(SpaceSpec::triebel(1, Extended::infinity(), 1, 0)), RangeError);
  CHECK_THROWS_AS(validate(SpaceSpec::bessel(1, Extended::infinity(), 0)), RangeError);
  CHECK_THROWS_AS(validate(SpaceSpec::sobolev(-1, 2, 0)), RangeError);
  CHECK_THROWS_AS(validate(SpaceSpec::holder(0)), RangeError);
  SpaceSpec noq = SpaceSpec::besov(1, 2, 1, 0);
  noq.q.reset();
  CHECK_THROWS_AS(validate(noq), RangeError);
}

TEST_CASE("weights are invisible at p = inf") {
  const auto b = validate(SpaceSpec::besov(1, Extended::infinity(), 1, 5, 3));
  CHECK(b.gamma == 0);
}

TEST_CASE("derived indices") {
  auto i = indices(SpaceSpec::besov(1, 2, 1, 0));
  CHECK(i.shifted_smoothness == R(1, 2));
  CHECK(i.weight_index == 0);
  CHECK(i.dim_index == R(1, 2));

  i = indices(SpaceSpec::besov(1, Extended::infinity(), 1, 5, 3));
  CHECK(i.shifted_smoothness == 1);
  CHECK(i.weight_index == 0);
  CHECK(i.dim_index == 0);

  i = indices(SpaceSpec::besov(R(3, 4), 4, 1, 2));
  CHECK(i.shifted_smoothness == 0);
  CHECK(i.weight_index == R(1, 2));
  CHECK(i.dim_index == R(3, 4));
}

TEST_CASE("A_p range") {
  CHECK(in_ap_range(2, R(1, 2), 1));
  CHECK_FALSE(in_ap_range(2, 1, 1));
  CHECK(in_ap_range(4, R(29, 10), 1));
  CHECK_FALSE(in_ap_range(2, -1, 1));
  CHECK_THROWS_AS(in_ap_range(Extended::infinity(), 0, 1), RangeError);
}

TEST_CASE("property: A_p membership is monotone in p") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> gnum(-40, 120), pnum(5, 40);
  for (int it = 0; it < 2000; ++it) {
    const int d = 1 + it % 3;
    const Rational g = R(gnum(rng), 10) * d;
    const Rational p = R(pnum(rng), 4);
    if (p <= 1) continue;
    if (in_ap_range(p, g, d)) CHECK(in_ap_range(p + R(1, 3), g, d));
  }
}

TEST_CASE("property: indices satisfy shifted = s - dim and dim = d/p + weight") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> n(-20, 20), pn(5, 30);
  for (int it = 0; it < 1000; ++it) {
    const int d = 1 + it % 3;
    const Rational s = R(n(rng), 4), p = R(pn(rng), 4);
    const Rational g = R(std::abs(n(rng)), 4) - R(d) + R(1, 8);
    if (p <= 1) continue;
    const auto x = SpaceSpec::besov(s, p, 2, g, d);
    const auto i = indices(x);
    CHECK(i.shifted_smoothness == s - i.dim_index);
    CHECK(i.dim_index == R(d) / p + i.weight_index);
  }
}

TEST_CASE("describe") {
  CHECK(describe(SpaceSpec::besov(1, 2, 1, 0)) == "B^{1}_{2,1}(g=0,d=1)");
  CHECK(describe(SpaceSpec::holder(R(3, 2))) == "BUC^{3/2}(d=1)");
  CHECK(family_from_tag("F") == Family::TriebelLizorkin);
  CHECK_THROWS_AS(family_from_tag("Q"), ParseError);
}
