#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "powemb/norms.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace powemb;

namespace {

const double inf = std::numeric_limits<double>::infinity();

const Grid& grid() {
  static const Grid g = Grid::make(1, 16, 1024);
  return g;
}

// e^{i xi0 x} with xi0 = 11 pi / 16, inside [(3/4) 2^n, 2^n] for n = 3 only.
Field pure_mode(long k = 35) {
  const double xi = std::numbers::pi * static_cast<double>(k) / grid().L;
  return Field::from_function(grid(), [xi](double x, double) { return std::polar(1.0, xi * x); });
}

Field random_field(unsigned seed, double band = 20.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  std::vector<cplx> x(grid().size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double t = grid().coord(j);
    x[j] = cplx(n(rng), n(rng)) * std::exp(-t * t / 8);
  }
  auto spec = fft_forward(grid(), x);
  return Field::from_spectrum(grid(), std::move(spec), band);
}

}  // namespace

TEST_CASE("pure mode collapses to a single block") {
  const auto f = pure_mode();
  const double xi = std::numbers::pi * 35 / 16;
  REQUIRE(xi >= 6.0);
  REQUIRE(xi <= 8.0);
  for (double gam : {0.0, 0.5}) {
    const double lp = weighted_lp(f, 2, gam);
    for (double q : {1.0, 2.0, inf}) {
      const auto b = besov_norm(f, 1.5, 2, q, gam);
      CHECK(b.value == doctest::Approx(std::pow(8.0, 1.5) * lp).epsilon(1e-10));
      CHECK(triebel_norm(f, 1.5, 2, q, gam).value == doctest::Approx(b.value).epsilon(1e-10));
    }
  }
  CHECK(bessel_norm(f, 2, 3, 0).value == doctest::Approx((1 + xi * xi) * weighted_lp(f, 3, 0)).epsilon(1e-10));
}

TEST_CASE("low-frequency field lives in block 0") {
  const auto g = grid();
  auto F = [](double xi, double) { return cplx(std::max(0.0, 1 - xi * xi), 0); };
  const auto f = Field::from_analytic_spectrum(g, F, 1.0);
  CHECK(besov_norm(f, 0, 2, 1, 0).value == doctest::Approx(weighted_lp(f, 2, 0)).epsilon(1e-12));
}

TEST_CASE("per-block breakdown aggregates to the value") {
  const auto f = random_field(1);
  const auto r = besov_norm(f, 0.5, 3, 2, 0.5);
  REQUIRE(r.per_block);
  double s = 0;
  for (const auto& [k, v] : *r.per_block) s += v * v;
  CHECK(r.value == doctest::Approx(std::sqrt(s)).epsilon(1e-12));
  CHECK_FALSE(triebel_norm(f, 0.5, 3, 2, 0.5).per_block);
}

TEST_CASE("q = p makes B and F coincide") {
  for (unsigned seed = 0; seed < 5; ++seed) {
    const auto f = random_field(seed);
    for (double p : {2.0, 3.0})
      CHECK(triebel_norm(f, 0.7, p, p, 0.5).value == doctest::Approx(besov_norm(f, 0.7, p, p, 0.5).value).epsilon(1e-10));
  }
}

TEST_CASE("q monotonicity and sandwich") {
  for (unsigned seed = 10; seed < 20; ++seed) {
    const auto f = random_field(seed);
    const double b1 = besov_norm(f, 1, 2, 1, 0).value, b2 = besov_norm(f, 1, 2, 2, 0).value,
                 bi = besov_norm(f, 1, 2, inf, 0).value;
    CHECK(b1 >= b2);
    CHECK(b2 >= bi);
    // p = 3, q = 1: B_{p,1} dominates F_{p,1} which dominates B_{p,3}.
    const double f31 = triebel_norm(f, 1, 3, 1, 0).value;
    CHECK(besov_norm(f, 1, 3, 1, 0).value >= f31 * (1 - 1e-12));
    CHECK(f31 >= besov_norm(f, 1, 3, 3, 0).value * (1 - 1e-12));
  }
}

TEST_CASE("homogeneity and the zero field") {
  const auto f = random_field(30);
  const cplx c(-2.0, 1.5);
  const double a = std::abs(c);
  CHECK(besov_norm(f.scaled(c), 0.5, 2, 2, 0.5).value == doctest::Approx(a * besov_norm(f, 0.5, 2, 2, 0.5).value));
  CHECK(triebel_norm(f.scaled(c), 0.5, 2, 1, 0.5).value == doctest::Approx(a * triebel_norm(f, 0.5, 2, 1, 0.5).value));
  CHECK(bessel_norm(f.scaled(c), 1, 2, 0.5).value == doctest::Approx(a * bessel_norm(f, 1, 2, 0.5).value));
  CHECK(sobolev_norm(f.scaled(c), 2, 2, 0.5).value == doctest::Approx(a * sobolev_norm(f, 2, 2, 0.5).value));
  const auto zero = f.scaled(0);
  CHECK(besov_norm(zero, 1, 2, 2, 0).value == 0.0);
  CHECK(triebel_norm(zero, 1, 2, 2, 0).value == 0.0);
}

TEST_CASE("Bessel potential identities") {
  const auto f = random_field(40);
  CHECK(bessel_norm(f, 0, 2, 0.5).value == doctest::Approx(weighted_lp(f, 2, 0.5)).epsilon(1e-12));
  CHECK(bessel_norm(bessel_apply(f, -1.5), 2, 3, 0).value ==
        doctest::Approx(bessel_norm(f, 0.5, 3, 0).value).epsilon(1e-10));
}

TEST_CASE("Sobolev norm of a sine") {
  const double w = std::numbers::pi * 5 / 16;
  const auto f = Field::from_function(grid(), [w](double x, double) { return cplx(std::sin(w * x), 0); });
  CHECK(sobolev_norm(f, 0, 2, 0).value == doctest::Approx(weighted_lp(f, 2, 0)).epsilon(1e-12));
  CHECK(sobolev_norm(f, 1, 2, 0).value == doctest::Approx((1 + w) * weighted_lp(f, 2, 0)).epsilon(1e-6));
}

TEST_CASE("Sobolev and Bessel norms are comparable on a batch") {
  double lo = inf, hi = 0;
  for (unsigned seed = 50; seed < 70; ++seed) {
    const auto f = random_field(seed);
    const double r = sobolev_norm(f, 1, 2, 0.5).value / bessel_norm(f, 1, 2, 0.5).value;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(lo >= 0.1);
  CHECK(hi <= 10);
}

TEST_CASE("space_norm dispatch and errors") {
  const auto f = random_field(80);
  CHECK(space_norm(f, SpaceSpec::besov(1, 2, 2, Rational(1) / 2)).value ==
        doctest::Approx(besov_norm(f, 1, 2, 2, 0.5).value));
  CHECK(space_norm(f, SpaceSpec::holder(1)).value == doctest::Approx(besov_norm(f, 1, inf, inf, 0).value));
  CHECK_THROWS_AS(space_norm(f, SpaceSpec::besov(1, 2, 2, 0, 2)), GridMismatch);
  CHECK_THROWS_AS(triebel_norm(f, 1, inf, 2, 0), RangeError);
  CHECK_THROWS_AS(besov_norm(f, 1, 2, 0.5, 0), RangeError);
}

TEST_CASE("periodization warning") {
  CHECK_FALSE(besov_norm(pure_mode(), 0, 2, 2, 0).warnings.empty());
  const auto g = Field::from_function(grid(), [](double x, double) { return cplx(std::exp(-x * x / 2), 0); });
  CHECK(besov_norm(g, 0, 2, 2, 0).warnings.empty());
}
