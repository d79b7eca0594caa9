#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "powemb/kernels.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace powemb::kernels;

namespace {

std::vector<cplx> random_field(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& z : v) z = {g(rng), g(rng)};
  return v;
}

std::vector<double> random_weights(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("weighted_power_sum: parallel matches serial") {
  const auto f = random_field(100003, 1);
  const auto w = random_weights(f.size(), 2);
  for (double p : {1.5, 2.0, 3.0, 7.25}) {
    const double s = serial::weighted_power_sum(f, w, p);
    CHECK(rel(parallel::weighted_power_sum(f, w, p), s) < 1e-12);
  }
  const std::vector<cplx> three = {{3, 4}, {0, 1}, {1, 0}};
  const std::vector<double> ones = {1, 1, 1};
  CHECK(serial::weighted_power_sum(three, ones, 2.0) == doctest::Approx(27.0));
}

TEST_CASE("multiply and max_abs: parallel matches serial") {
  auto a = random_field(65536, 3);
  auto b = a;
  const auto m = random_weights(a.size(), 4);
  const auto mc = random_field(a.size(), 5);
  serial::multiply(a, m);
  parallel::multiply(b, m);
  serial::multiply(a, mc);
  parallel::multiply(b, mc);
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(std::abs(a[i] - b[i]) <= 1e-12 * std::abs(a[i]) + 1e-300);
  CHECK(parallel::max_abs(a) == serial::max_abs(a));
  CHECK(serial::max_abs(std::vector<cplx>{{3, 4}, {-1, 0}}) == doctest::Approx(5.0));
}

TEST_CASE("lq_accumulate: finite and infinite q") {
  const auto blk = random_field(40000, 6);
  for (double q : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
    std::vector<double> a(blk.size(), 0.5), b(blk.size(), 0.5);
    serial::lq_accumulate(a, blk, 0.7, q);
    parallel::lq_accumulate(b, blk, 0.7, q);
    for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(rel(b[i], a[i]) < 1e-12);
  }
  std::vector<double> acc = {1.0};
  serial::lq_accumulate(acc, std::vector<cplx>{{0, 2}}, 0.5, 2.0);
  CHECK(acc[0] == doctest::Approx(2.0));
  serial::lq_accumulate(acc, std::vector<cplx>{{0, 8}}, 0.5, std::numeric_limits<double>::infinity());
  CHECK(acc[0] == doctest::Approx(4.0));
}

TEST_CASE("cell weights integrate |x|^gamma over the box") {
  const double L = 3.0;
  SUBCASE("d = 1") {
    const std::size_t N = 4096;
    for (double g : {0.0, 0.5, -0.5, 2.0}) {
      std::vector<double> s(N), p(N);
      serial::cell_weights(1, L, N, g, s);
      parallel::cell_weights(1, L, N, g, p);
      double sum = 0;
      for (std::size_t i = 0; i < N; ++i) {
        REQUIRE(rel(p[i], s[i]) < 1e-12);
        sum += s[i];
      }
      // Node-centered cells cover [-L - h/2, L - h/2).
      const double h = 2 * L / N, a = L + h / 2, b = L - h / 2;
      const double exact = (std::pow(a, g + 1) + std::pow(b, g + 1)) / (g + 1);
      CHECK(sum == doctest::Approx(exact).epsilon(1e-10));
    }
  }
  SUBCASE("d = 2") {
    const std::size_t N = 128;
    std::vector<double> s(N * N), p(N * N);
    serial::cell_weights(2, L, N, 0.0, s);
    parallel::cell_weights(2, L, N, 0.0, p);
    double sum = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      REQUIRE(rel(p[i], s[i]) < 1e-12);
      sum += s[i];
    }
    CHECK(sum == doctest::Approx(4 * L * L).epsilon(1e-12));
    serial::cell_weights(2, L, N, -1.0, s);
    parallel::cell_weights(2, L, N, -1.0, p);
    for (std::size_t i = 0; i < s.size(); ++i) REQUIRE(rel(p[i], s[i]) < 1e-12);
    // Integrable singularity: the origin cell is finite and positive.
    const std::size_t origin = (N / 2) * N + N / 2;
    CHECK(std::isfinite(s[origin]));
    CHECK(s[origin] > 0);
  }
}

TEST_CASE("FFTW agrees with a naive DFT") {
  const int n = 60;
  auto x = random_field(n, 7);
  std::vector<cplx> naive(n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      naive[k] += x[j] * std::polar(1.0, -2 * std::numbers::pi * k * j / n);
  std::vector<cplx> out(n);
  fftw_plan plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(x.data()),
                                    reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  for (int k = 0; k < n; ++k) CHECK(std::abs(out[k] - naive[k]) < 1e-10);
}
