#include "powemb/kernels.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace powemb::kernels {

namespace {

using boost::math::quadrature::gauss;

inline double power_abs(const cplx& z, double p) {
  const double a = std::abs(z);
  if (p == 2.0) return a * a;
  if (p == 1.0) return a;
  return a == 0.0 ? 0.0 : std::pow(a, p);
}

// Antiderivative of |x|^gamma.
inline double antider(double x, double gamma) {
  const double e = gamma + 1.0;
  return std::copysign(std::pow(std::abs(x), e) / e, x);
}

double cell_weight_1d(double a, double b, double gamma) {
  if (gamma == 0.0) return b - a;
  return antider(b, gamma) - antider(a, gamma);
}

double square_gauss(double x0, double x1, double y0, double y1, double gamma) {
  auto inner = [&](double x) {
    return gauss<double, 8>::integrate(
        [&](double y) { return std::pow(x * x + y * y, 0.5 * gamma); }, y0, y1);
  };
  return gauss<double, 8>::integrate(inner, x0, x1);
}

// [-a,a]^2 in polar coordinates: eight triangles of angle pi/4, radial part closed form.
double origin_square(double a, double gamma) {
  const double e = gamma + 2.0;
  const double angular = gauss<double, 20>::integrate(
      [&](double t) { return std::pow(std::cos(t), -e); }, 0.0,
      boost::math::constants::quarter_pi<double>());
  return 8.0 / e * std::pow(a, e) * angular;
}

double cell_weight_2d(std::size_t i, std::size_t j, double L, std::size_t N, double gamma) {
  const double h = 2.0 * L / static_cast<double>(N);
  if (gamma == 0.0) return h * h;
  const auto c = static_cast<long>(N / 2);
  const long di = static_cast<long>(i) - c;
  const long dj = static_cast<long>(j) - c;
  if (di == 0 && dj == 0) return origin_square(0.5 * h, gamma);
  const double x0 = (static_cast<double>(di) - 0.5) * h;
  const double y0 = (static_cast<double>(dj) - 0.5) * h;
  if (std::max(std::labs(di), std::labs(dj)) > 2) return square_gauss(x0, x0 + h, y0, y0 + h, gamma);
  // Cells next to the singular point get a 4x4 subdivision.
  constexpr int kSub = 4;
  const double hs = h / kSub;
  double sum = 0.0;
  for (int a = 0; a < kSub; ++a)
    for (int b = 0; b < kSub; ++b)
      sum += square_gauss(x0 + a * hs, x0 + (a + 1) * hs, y0 + b * hs, y0 + (b + 1) * hs, gamma);
  return sum;
}

inline double one_cell(int d, double L, std::size_t N, double gamma, std::size_t idx) {
  const double h = 2.0 * L / static_cast<double>(N);
  if (d == 1) {
    const double x = -L + static_cast<double>(idx) * h;
    return cell_weight_1d(x - 0.5 * h, x + 0.5 * h, gamma);
  }
  return cell_weight_2d(idx / N, idx % N, L, N, gamma);
}

}  // namespace

namespace serial {

double weighted_power_sum(std::span<const cplx> f, std::span<const double> w, double p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += power_abs(f[i], p) * w[i];
  return sum;
}

void multiply(std::span<cplx> spec, std::span<const double> m) {
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= m[i];
}

void multiply(std::span<cplx> spec, std::span<const cplx> m) {
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= m[i];
}

void lq_accumulate(std::span<double> acc, std::span<const cplx> block, double scale, double q) {
  if (std::isinf(q)) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = std::max(acc[i], scale * std::abs(block[i]));
    return;
  }
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += power_abs(scale * block[i], q);
}

double max_abs(std::span<const cplx> f) {
  double m = 0.0;
  for (const auto& z : f) m = std::max(m, std::abs(z));
  return m;
}

void cell_weights(int d, double L, std::size_t N, double gamma, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = one_cell(d, L, N, gamma, i);
}

}  // namespace serial

namespace parallel {

double weighted_power_sum(std::span<const cplx> f, std::span<const double> w, double p) {
  double sum = 0.0;
  const auto n = static_cast<std::ptrdiff_t>(f.size());
#pragma omp parallel for reduction(+ : sum) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) sum += power_abs(f[i], p) * w[i];
  return sum;
}

void multiply(std::span<cplx> spec, std::span<const double> m) {
  const auto n = static_cast<std::ptrdiff_t>(spec.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) spec[i] *= m[i];
}

void multiply(std::span<cplx> spec, std::span<const cplx> m) {
  const auto n = static_cast<std::ptrdiff_t>(spec.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) spec[i] *= m[i];
}

void lq_accumulate(std::span<double> acc, std::span<const cplx> block, double scale, double q) {
  const auto n = static_cast<std::ptrdiff_t>(acc.size());
  if (std::isinf(q)) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) acc[i] = std::max(acc[i], scale * std::abs(block[i]));
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) acc[i] += power_abs(scale * block[i], q);
}

double max_abs(std::span<const cplx> f) {
  double m = 0.0;
  const auto n = static_cast<std::ptrdiff_t>(f.size());
#pragma omp parallel for reduction(max : m) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(f[i]));
  return m;
}

void cell_weights(int d, double L, std::size_t N, double gamma, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(dynamic, 1024)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = one_cell(d, L, N, gamma, static_cast<std::size_t>(i));
}

}  // namespace parallel

}  // namespace powemb::kernels
