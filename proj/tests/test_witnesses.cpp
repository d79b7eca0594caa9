#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "powemb/norms.hpp"
#include "powemb/params.hpp"
#include "powemb/witnesses.hpp"

#include <cmath>
#include <numeric>
#include <optional>

using namespace powemb;

namespace {

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n, my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

double max_diff(const Field& a, const Field& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.values().size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

}  // namespace

TEST_CASE("kind names round trip") {
  for (auto k : {WitnessKind::Dilation, WitnessKind::Translation, WitnessKind::SpectralPeak, WitnessKind::LacunarySum,
                 WitnessKind::LogSingularity, WitnessKind::RieszLog})
    CHECK(witness_kind_from_name(witness_kind_name(k)) == k);
  CHECK_THROWS_AS(witness_kind_from_name("bogus"), ParseError);
}

TEST_CASE("dilation family") {
  const auto g = Grid::make(1, 16, 4096);
  const auto base = gaussian_base(1);
  const auto fam = dilation_family(base, g, {1.0, 0.5, 0.25, 2.0});
  REQUIRE(fam.size() == 4);
  const auto f1 = fam.member(0).field();
  CHECK(max_diff(f1, base.sample(g)) == 0.0);

  for (double gam : {0.0, 0.5}) {
    const double p = 3, n0 = weighted_lp(f1, p, gam);
    for (std::size_t i = 1; i < 4; ++i) {
      const double t = fam.index[i];
      const double expect = std::pow(t, 1 - (1 + gam) / p) * n0;
      CHECK(weighted_lp(fam.member(i).field(), p, gam) == doctest::Approx(expect).epsilon(1e-3));
      CHECK(*fam.member(i).field().band_limit() == doctest::Approx(t * base.band_limit));
    }
  }
  CHECK_THROWS_AS(dilation_family(base, g, {1e6}), NyquistError);
  CHECK_THROWS_AS(dilation_family(base, g, {-1.0}), RangeError);
  // Members are reproducible from their parameters.
  CHECK(max_diff(fam.member(2).field(), dilation_family(base, g, {0.25}).member(0).field()) == 0.0);
  CHECK(fam.manifest()["kind"] == std::string(witness_kind_name(WitnessKind::Dilation)));
}

TEST_CASE("translation family") {
  const auto g = Grid::make(1, 128, 16384);
  const auto base = gaussian_base(1).sample(g);
  const std::vector<double> lambdas = {4, 8, 16, 32, 64};
  auto all = lambdas;
  all.insert(all.begin(), 0.0);
  const auto fam = translation_family(base, all);
  CHECK(max_diff(fam.member(0).field(), base) < 1e-15);

  const double n0 = weighted_lp(base, 2, 0);
  std::vector<double> lx, ly;
  for (std::size_t i = 1; i < fam.size(); ++i) {
    const Field f = fam.member(i).field();
    CHECK(weighted_lp(f, 2, 0) == doctest::Approx(n0).epsilon(1e-10));
    lx.push_back(std::log(fam.index[i]));
    ly.push_back(std::log(weighted_lp(f, 2, 1)));
  }
  CHECK(slope(lx, ly) == doctest::Approx(0.5).epsilon(0.1));
  CHECK(std::abs(slope(lx, ly) - 0.5) < 0.05);
  CHECK_THROWS_AS(translation_family(base, {127.0}), BoundaryError);
}

TEST_CASE("spectral peaks") {
  const auto g = Grid::make(1, 16, 1u << 14);
  const auto sys = dyadic_for(g);
  const auto fam = spectral_peaks(*sys, {3, 4, 5, 6, 7}, 0);
  std::vector<double> n;
  for (std::size_t i = 0; i < fam.size(); ++i) n.push_back(weighted_lp(fam.member(i).field(), 2, 0.5));
  for (std::size_t i = 1; i < n.size(); ++i) CHECK(std::abs(std::log2(n[i] / n[i - 1]) - 0.25) < 0.02);

  const auto overlap = spectral_peaks(*sys, {4}, 1).member(0).field();
  CHECK(overlap.max_abs() > 0);
  for (std::size_t k = 0; k < g.N; ++k) {
    const double r = std::abs(g.freq(k));
    if (r < 16 || r > 24) CHECK(std::abs(overlap.spectrum()[k]) == 0.0);
  }
  CHECK_THROWS_AS(spectral_peaks(*sys, {3}, 2), RangeError);
  CHECK_THROWS_AS(spectral_peaks(*sys, {1}, 0), RangeError);
  CHECK_THROWS_AS(spectral_peaks(*sys, {sys->K + 2}, 0), NyquistError);
}

TEST_CASE("lacunary sums") {
  const auto g = Grid::make(1, 16, 1u << 14);
  const auto sys = dyadic_for(g);
  const double s0 = 1, p0 = 2, gam = 0.5;
  const auto one = lacunary_sum(*sys, {1.0}, s0, p0, gam);
  // N = 1 is a multiple of phi_3: |spectrum| / hat_phi_3 is constant on the support
  // (the phase only records the off-center origin of the lattice).
  std::optional<cplx> c;
  double spread = 0;
  for (std::size_t k = 0; k < g.N; ++k) {
    const double h = sys->hat_phi[3][k];
    if (h == 0.0) {
      CHECK(std::abs(one.spectrum()[k]) < 1e-12);
      continue;
    }
    if (h < 0.1) continue;
    const cplx q = one.spectrum()[k] / h;
    if (!c) c = q;
    spread = std::max(spread, std::abs(std::abs(q) - std::abs(*c)) / std::abs(*c));
  }
  CHECK(spread < 1e-12);
  const std::vector<std::vector<double>> coeffs = {{1, 1, 1}, {1, 0.5, 0.25}};
  std::vector<double> ratio;
  for (const auto& a : coeffs) {
    const auto f = lacunary_sum(*sys, a, s0, p0, gam);
    const double b = besov_norm(f, *sys, s0, p0, 1, gam).value;
    ratio.push_back(b / std::accumulate(a.begin(), a.end(), 0.0));
  }
  CHECK(std::max(ratio[0], ratio[1]) / std::min(ratio[0], ratio[1]) < 2.0);
  CHECK_THROWS_AS(lacunary_sum(*sys, {}, s0, p0, gam), RangeError);
  CHECK_THROWS_AS(lacunary_sum(*sys, std::vector<double>(10, 1.0), s0, p0, gam), NyquistError);
}

TEST_CASE("modulated blocks have equal block norms") {
  // The packets are wide in space; a small torus would wrap them.
  const auto g = Grid::make(1, 128, 1u << 15);
  const auto f = modulated_blocks(g, {3, 5, 7}, 1.0);
  const auto r = besov_norm(f, 1.0, 2, 2, 0);
  REQUIRE(r.per_block);
  std::vector<double> nz;
  for (const auto& [k, v] : *r.per_block)
    if (v > 1e-8) nz.push_back(v);
  REQUIRE(nz.size() == 3);
  CHECK(nz[1] == doctest::Approx(nz[0]).epsilon(1e-6));
  CHECK(nz[2] == doctest::Approx(nz[0]).epsilon(1e-6));
  CHECK_THROWS_AS(modulated_blocks(g, {2}, 1.0), RangeError);
}

TEST_CASE("log singularity profiles") {
  const double p0 = 4, g0 = 1, p1 = 2;
  const auto prof = log_singularity(p0, g0, p1, 1, 0);
  const auto src = radial_weighted_lp(prof, p0, g0);
  CHECK_FALSE(src.diverged);
  CHECK(src.last_relative_change < 0.01);
  // Equal dimension indices: (1 + g1) / 2 = (1 + 1) / 4.
  CHECK(radial_weighted_lp(prof, p1, 0).diverged);

  const auto printed = log_singularity(p0, 0, p1, 1, 0.01, true);
  const auto general = log_singularity(p0, 0, p1, 1, 0.01);
  for (double r : {0.02, 0.1, 0.4}) CHECK(printed(r) == doctest::Approx(general(r)));
  CHECK(printed(0.1) == doctest::Approx(std::pow(0.1, -0.25) * std::pow(std::log(10.0), -0.5)));
  CHECK_THROWS_AS(log_singularity(2, 0, 4, 1, 0), RangeError);
  CHECK_THROWS_AS(log_singularity(4, 0, 2, 1, 0.5), RangeError);
}

TEST_CASE("Riesz log profiles") {
  CHECK_FALSE(radial_weighted_lp(riesz_log(0.5, 0.5, 1, 0), 4, 1).diverged);
  CHECK_FALSE(radial_weighted_lp(riesz_log(0.2, 0, 2, 0), 3, 0).diverged);
  CHECK(radial_weighted_lp(riesz_log(1.0, 0, 2, 0), 2, 0).diverged);
  CHECK_THROWS_AS(riesz_log(1, 0, 1, -0.1), RangeError);
}
