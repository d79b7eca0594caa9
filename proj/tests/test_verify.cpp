#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "powemb/verify.hpp"

#include <cmath>
#include <random>

using namespace powemb;

namespace {

Rational R(long n, long d = 1) { return Rational(n) / Rational(d); }

}  // namespace

TEST_CASE("fit_exponent recovers an exact power law") {
  std::vector<double> xs, ys;
  for (double x : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    xs.push_back(x);
    ys.push_back(0.3 + 1.75 * std::log(x));
  }
  const auto f = fit_exponent(xs, ys);
  CHECK(std::abs(f.slope - 1.75) < 1e-10);
  CHECK(std::abs(f.intercept - 0.3) < 1e-10);
  CHECK(f.max_residual < 1e-10);

  CHECK_THROWS_AS(fit_exponent({1, 2, 4}, {0, 1, 2}), DegenerateData);
  CHECK_THROWS_AS(fit_exponent({1, 2, 2, 4}, {0, 1, 1, 2}), DegenerateData);
  CHECK_THROWS_AS(fit_exponent({-1, 2, 3, 4}, {0, 1, 1, 2}), DegenerateData);
  CHECK_THROWS_AS(fit_exponent({1, 2, 3, 4}, {0, 1, NAN, 2}), DegenerateData);
}

TEST_CASE("peak and translation scaling") {
  GridPlan plan;
  const auto peaks = check_peak_scaling(plan.peaks(1), 2, 0.5, 0, plan.peak_range(1));
  CHECK(peaks.pass);
  CHECK(peaks.predicted == doctest::Approx(0.25));
  CHECK(peaks.rows.size() == plan.peak_range(1).size());

  const auto base = gaussian_base(1, 2.0).sample(plan.translation(1));
  const auto tr = check_translation_scaling(base, 2, 1, plan.lambda_range());
  CHECK(tr.pass);
  CHECK(tr.predicted == doctest::Approx(0.5));
  CHECK(std::abs(tr.fit.slope - 0.5) < 0.05);
}

TEST_CASE("Nikol'skij inequality along dilations") {
  GridPlan plan;
  const auto base = gaussian_base(1);
  const auto ok = check_nikolskij(base, plan.dilation(1), 2, 0, 4, 0, {1, 0}, plan.dilation_range(1));
  CHECK(ok.pass);
  CHECK_THROWS_AS(check_nikolskij(base, plan.dilation(1), 4, 0, 2, 0, {0, 0}, plan.dilation_range(1)),
                  ConditionError);
  CHECK_NOTHROW(check_nikolskij(base, plan.dilation(1), 4, 0, 2, 0, {0, 0}, plan.dilation_range(1), 10, 0.05, true));
}

TEST_CASE("Gagliardo-Nirenberg ratio stays bounded") {
  const auto g = Grid::make(1, 16, 2048);
  std::vector<Field> batch;
  for (std::uint64_t s = 1; s <= 10; ++s) batch.push_back(random_multiscale_base(1, s).sample(g));
  const auto rep = check_gagliardo(batch, 0, 2, 0.5, 2, 2, 0.5);
  CHECK(rep.pass);
  CHECK(rep.rows.size() == batch.size());
}

TEST_CASE("lacunary model reproduces grid norms") {
  GridPlan plan;
  const LacunaryModel model{plan.peaks(1), 3};
  const auto sys = dyadic_for(plan.peaks(1));
  const double s0 = 1, p0 = 2, gam = 0.5, S0 = s0 - (1 + gam) / p0;
  for (int N : {1, 2, 3}) {
    const std::vector<double> a(static_cast<std::size_t>(N), 1.0);
    const double grid = besov_norm(lacunary_sum(*sys, a, s0, p0, gam), *sys, s0, p0, 2, gam).value;
    CHECK(model.besov_norm(a, S0, s0, p0, 2, gam) == doctest::Approx(grid).epsilon(0.01));
  }
}

TEST_CASE("failure demonstrations") {
  SUBCASE("weight index") {
    const auto rep = demonstrate_failure(SpaceSpec::besov(1, 2, 2, R(-1, 2)), SpaceSpec::besov(0, 4, 2, R(-1, 2)));
    CHECK(rep.pass);
    CHECK(rep.fit.slope > 0);
  }
  SUBCASE("shifted smoothness") {
    const auto rep = demonstrate_failure(SpaceSpec::bessel(0, 2, 0), SpaceSpec::besov(1, 2, 1, 0));
    CHECK(rep.pass);
  }
  SUBCASE("microscopic index on the sharp line") {
    const auto rep = demonstrate_failure(SpaceSpec::besov(1, 2, 2, 0), SpaceSpec::besov(R(3, 4), 4, 1, 0));
    CHECK(rep.pass);
  }
  SUBCASE("not applicable to embeddings") {
    CHECK_THROWS_AS(demonstrate_failure(SpaceSpec::besov(1, 2, 1, 0), SpaceSpec::besov(0, 4, 1, 0)), NotApplicable);
  }
}

TEST_CASE("bounded ratios for an embedding") {
  const auto reps = check_embeds_bounded(SpaceSpec::besov(1, 2, 1, 0), SpaceSpec::besov(0, 4, 1, 0));
  CHECK_FALSE(reps.empty());
  for (const auto& r : reps) CHECK(r.pass);
  CHECK_THROWS_AS(check_embeds_bounded(SpaceSpec::besov(0, 2, 1, 0), SpaceSpec::besov(1, 2, 1, 0)), NotApplicable);
}

TEST_CASE("report serialization") {
  ExperimentReport r;
  r.id = "x";
  r.predicted = 0.25;
  r.pass = true;
  r.rows = {{1, 2, 3, 1.5}, {2, 4, 5, 1.25}};
  const auto j = r.to_json();
  CHECK(j["id"] == "x");
  CHECK(j["pass"] == true);
  const auto csv = r.csv("abc");
  CHECK(csv.rfind("parameter,src_norm,tgt_norm,ratio,config_hash\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.find(",abc\n") != std::string::npos);
  CHECK_FALSE(r.summary().empty());
}

TEST_CASE("curated pairs cover every rule") {
  const auto pairs = curated_pairs();
  CHECK(pairs.size() == 20);
  std::vector<bool> seen(kRuleCount, false);
  for (const auto& p : pairs)
    for (const auto& c : decide(p.src, p.tgt).trace) seen[static_cast<std::size_t>(c.rule)] = true;
  for (int i = 0; i < kRuleCount; ++i) CHECK_MESSAGE(seen[static_cast<std::size_t>(i)], rule_name(static_cast<Rule>(i)));
}
