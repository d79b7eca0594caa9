#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "powemb/oracle.hpp"

#include <random>

using namespace powemb;

namespace {

Rational R(long n, long d = 1) { return Rational(n) / Rational(d); }
const Extended inf = Extended::infinity();

Rule last_rule(const Verdict& v) { return v.trace.back().rule; }

bool cites(const Verdict& v, Rule r) {
  for (const auto& c : v.trace)
    if (c.rule == r) return true;
  return false;
}

// The Besov characterization written out directly from its three conditions.
bool besov_reference(const SpaceSpec& a, const SpaceSpec& b) {
  const Rational w0 = a.gamma * a.p.reciprocal(), w1 = b.gamma * b.p.reciprocal();
  const Rational D0 = (a.d + a.gamma) * a.p.reciprocal(), D1 = (b.d + b.gamma) * b.p.reciprocal();
  const Rational S0 = a.s - D0, S1 = b.s - D1;
  const bool g_eq = (a.p.is_infinite() ? Rational(0) : a.gamma) == (b.p.is_infinite() ? Rational(0) : b.gamma);
  const bool trivial = g_eq && a.p == b.p && (a.s > b.s || (a.s == b.s && *a.q <= *b.q));
  const bool exp = w1 <= w0 && D1 < D0 && S0 > S1;
  const bool expnew = w1 <= w0 && D1 < D0 && *a.q <= *b.q && S0 == S1;
  return trivial || exp || expnew;
}

}  // namespace

TEST_CASE("Besov examples") {
  auto v = decide_besov(SpaceSpec::besov(1, 2, 1, 0), SpaceSpec::besov(0, 4, 1, 0));
  CHECK(v.embeds());
  CHECK(last_rule(v) == Rule::SUBCRITICAL_14);

  const auto a = SpaceSpec::besov(R(3, 2), 3, 2, R(1, 2));
  v = decide_besov(a, a);
  CHECK(v.embeds());
  CHECK(last_rule(v) == Rule::TRIVIAL_13);

  for (auto s1 : {R(-3), R(0), R(1)}) {
    v = decide_besov(SpaceSpec::besov(1, 2, 1, R(-1, 2)), SpaceSpec::besov(s1, 4, inf, R(-1, 2)));
    CHECK(v.fails());
  }

  v = decide_besov(SpaceSpec::besov(1, 2, 1, 0), SpaceSpec::besov(R(3, 4), 4, 2, 0));
  CHECK(v.embeds());
  CHECK(last_rule(v) == Rule::SHARP_15);
  v = decide_besov(SpaceSpec::besov(1, 2, 2, 0), SpaceSpec::besov(R(3, 4), 4, 1, 0));
  CHECK(v.fails());
  CHECK(last_rule(v) == Rule::Q_NECESSITY);
  CHECK(v.first_violation()->violation == Violation::Microscopic);
}

TEST_CASE("Besov necessity citations name the violated index") {
  auto v = decide_besov(SpaceSpec::besov(1, 2, 2, R(-1, 2)), SpaceSpec::besov(0, 4, 2, R(-1, 2)));
  REQUIRE(v.fails());
  CHECK(v.first_violation()->violation == Violation::WeightIndex);
  CHECK(v.first_violation()->note.find("g1/p1 = -1/8") != std::string::npos);

  v = decide_besov(SpaceSpec::besov(0, 4, 2, 0), SpaceSpec::besov(-1, 2, 2, 0));
  REQUIRE(v.fails());
  CHECK(v.first_violation()->violation == Violation::DimIndex);

  v = decide_besov(SpaceSpec::besov(1, 2, 2, 0), SpaceSpec::besov(0, R(3, 2), 2, R(-1, 4)));
  REQUIRE(v.fails());
  CHECK(last_rule(v) == Rule::NEC_STRICT_45);
  CHECK(v.first_violation()->violation == Violation::DimEqual);
}

TEST_CASE("Triebel-Lizorkin examples") {
  auto v = decide_triebel(SpaceSpec::triebel(1, 2, 2, 0), SpaceSpec::triebel(R(1, 2), 4, 1, 0));
  CHECK(v.embeds());
  CHECK(last_rule(v) == Rule::F_SUFFICIENT_17);

  v = decide_triebel(SpaceSpec::triebel(R(3, 4), 4, 2, 2), SpaceSpec::triebel(R(3, 5), 2, 2, R(1, 5)));
  CHECK(v.fails());
  CHECK(last_rule(v) == Rule::F_SHARP_NEC_55);

  const auto a = SpaceSpec::triebel(1, 3, 2, 1);
  CHECK(decide_triebel(a, a).embeds());

  v = decide_triebel(SpaceSpec::triebel(1, 4, inf, 2), SpaceSpec::triebel(R(3, 5), 2, 1, R(1, 5)));
  CHECK(v.embeds());
  CHECK(cites(v, Rule::SANDWICH_BF));

  v = decide_triebel(SpaceSpec::triebel(R(3, 4), 4, 1, 2), SpaceSpec::triebel(R(3, 5), 2, 2, R(1, 5)));
  CHECK(v.outcome == Outcome::Unknown);
  CHECK(last_rule(v) == Rule::OPEN_REGIME);
}

TEST_CASE("Bessel-potential and Sobolev examples") {
  auto v = decide_bessel(SpaceSpec::bessel(1, 2, R(1, 2)), SpaceSpec::bessel(R(4, 5), 3, R(3, 4)));
  CHECK(v.embeds());
  CHECK(last_rule(v) == Rule::H_CHAR_110);

  // p1 < p0 with equal weights breaks the dimension index.
  v = decide_bessel(SpaceSpec::bessel(1, 4, 0), SpaceSpec::bessel(R(3, 4), 2, 0));
  CHECK(v.fails());
  CHECK(v.first_violation()->violation == Violation::DimIndex);

  v = decide(SpaceSpec::sobolev(1, 2, 0), SpaceSpec::lebesgue(2, 1));
  CHECK(v.fails());

  v = decide_sobolev(SpaceSpec::sobolev(1, 2, R(1, 2)), SpaceSpec::sobolev(0, 3, R(3, 4)));
  CHECK(v.embeds());

  const auto w = SpaceSpec::sobolev(2, 3, 1);
  CHECK(decide_sobolev(w, w).embeds());
  CHECK_THROWS_AS(decide_sobolev(SpaceSpec::sobolev(R(1, 2), 2, 0), w), FamilyError);
}

TEST_CASE("cross-family examples") {
  auto v = decide(SpaceSpec::besov(1, 2, 2, 0), SpaceSpec::triebel(R(3, 4), 4, 1, 0));
  CHECK(v.embeds());
  CHECK(last_rule(v) == Rule::JAWERTH_FRANKE_62);

  v = decide(SpaceSpec::triebel(1, 2, inf, 0), SpaceSpec::besov(R(3, 4), 4, 2, 0));
  CHECK(v.embeds());
  CHECK(last_rule(v) == Rule::JAWERTH_FRANKE_63);

  v = decide(SpaceSpec::bessel(0, 2, 0), SpaceSpec::besov(1, 2, 1, 0));
  CHECK(v.fails());
  CHECK(v.first_violation()->violation == Violation::Shifted);

  // Off the sharp line the B-sandwich decides first.
  v = decide(SpaceSpec::besov(1, 2, 2, 0), SpaceSpec::triebel(R(1, 4), 4, 1, 0));
  CHECK(v.embeds());
  CHECK(cites(v, Rule::SANDWICH_BF));

  v = decide(SpaceSpec::sobolev(1, 2, 0), SpaceSpec::triebel(R(1, 2), 4, 2, 0));
  CHECK(v.embeds());
  CHECK(cites(v, Rule::SANDWICH_HW));
  CHECK_THROWS_AS(decide_cross(SpaceSpec::besov(1, 2, 2, 0), SpaceSpec::besov(1, 2, 2, 0)), FamilyError);
}

TEST_CASE("Holder and Lebesgue targets") {
  auto v = decide(SpaceSpec::besov(2, 2, 2, 0), SpaceSpec::holder(R(3, 2)));
  CHECK(v.embeds());
  CHECK(last_rule(v) == Rule::HOLDER_73);
  CHECK(holder_embedding(SpaceSpec::besov(2, 2, 2, 0)).target_smoothness == R(3, 2));

  CHECK(decide(SpaceSpec::besov(R(3, 2), 2, 1, 0), SpaceSpec::holder(1)).embeds());
  CHECK(decide(SpaceSpec::triebel(R(3, 2), 2, 2, 0), SpaceSpec::holder(1)).outcome == Outcome::Unknown);
  CHECK(decide(SpaceSpec::besov(0, 2, 2, 0), SpaceSpec::holder(1)).fails());

  v = lp_target(SpaceSpec::besov(1, 2, 1, 0), 4, 0);
  CHECK(v.embeds());
  CHECK(last_rule(v) == Rule::LP_TARGET_71);
  CHECK(lp_target(SpaceSpec::bessel(0, 2, 0), 2, 0).embeds());
  CHECK(lp_target(SpaceSpec::besov(0, 2, 1, 0), 4, 0).fails());
  CHECK(last_rule(lp_target(SpaceSpec::triebel(1, 2, 2, 0), 4, 0)) == Rule::LP_TARGET_72);
}

TEST_CASE("embedding matrix of a nested chain is triangular") {
  const std::vector<SpaceSpec> chain = {SpaceSpec::besov(1, 2, 1, 0), SpaceSpec::besov(0, 4, 1, 0),
                                        SpaceSpec::besov(-1, 8, 1, 0)};
  const auto m = embedding_matrix(chain);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      REQUIRE(m.cells[i][j].verdict);
      CHECK(m.cells[i][j].verdict->embeds() == (i <= j));
    }
  CHECK(m.violations.empty());

  const auto one = embedding_matrix({chain[0]});
  CHECK(one.cells[0][0].verdict->embeds());
  CHECK(embedding_matrix({}).cells.empty());

  auto bad = chain;
  bad[1].gamma = -5;
  const auto mb = embedding_matrix(bad);
  CHECK_FALSE(mb.cells[1][0].verdict);
  CHECK_FALSE(mb.cells[0][1].verdict);
  CHECK_FALSE(mb.cells[1][0].diagnostic.empty());
  CHECK(mb.cells[0][2].verdict);
}

TEST_CASE("property: decide_besov agrees with the written-out characterization") {
  std::mt19937_64 rng(3);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const std::vector<Extended> ps = {R(3, 2), 2, 3, 4, inf};
  const std::vector<Extended> qs = {1, 2, inf};
  int checked = 0;
  for (int it = 0; it < 5000; ++it) {
    const int d = pick(1, 2);
    const auto a = SpaceSpec::besov(R(pick(-4, 8), 4), ps[pick(0, 4)], qs[pick(0, 2)], R(pick(-4 * d + 1, 6), 4), d);
    auto b = SpaceSpec::besov(R(pick(-4, 8), 4), ps[pick(0, 4)], qs[pick(0, 2)], R(pick(-4 * d + 1, 6), 4), d);
    if (it % 2 == 0 && !b.p.is_infinite()) {
      // Land on the sharp line half of the time.
      b.s = indices(a).shifted_smoothness + indices(b).dim_index;
    }
    const Verdict v = decide_besov(a, b);
    CHECK(v.outcome != Outcome::Unknown);
    CHECK(v.embeds() == besov_reference(a, b));
    ++checked;
  }
  CHECK(checked == 5000);
}

TEST_CASE("property: every negative verdict carries a violation or a necessity rule") {
  std::mt19937_64 rng(5);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const std::vector<Extended> ps = {R(3, 2), 2, 3, 4};
  for (int it = 0; it < 2000; ++it) {
    const auto a = SpaceSpec::triebel(R(pick(-4, 8), 4), ps[pick(0, 3)], pick(1, 2), R(pick(-3, 6), 4));
    const auto b = SpaceSpec::triebel(R(pick(-4, 8), 4), ps[pick(0, 3)], pick(1, 2), R(pick(-3, 6), 4));
    const Verdict v = decide_triebel(a, b);
    if (v.fails()) CHECK(v.first_violation() != nullptr);
    CHECK_FALSE(v.trace.empty());
  }
}

TEST_CASE("rule names round trip") {
  for (int i = 0; i < kRuleCount; ++i) {
    const auto r = static_cast<Rule>(i);
    CHECK(rule_from_name(rule_name(r)) == r);
  }
  CHECK(outcome_name(Outcome::DoesNotEmbed) == "no");
}
