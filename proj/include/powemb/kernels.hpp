#pragma once

// Hot loops of the spectral engine. Each kernel exists twice: a plain serial
// loop that serves as the reference, and an OpenMP version used by default.

#include <complex>
#include <cstddef>
#include <span>

namespace powemb::kernels {

using cplx = std::complex<double>;

namespace serial {

// sum_i |f_i|^p w_i
double weighted_power_sum(std::span<const cplx> f, std::span<const double> w, double p);
// spec_i *= m_i
void multiply(std::span<cplx> spec, std::span<const double> m);
void multiply(std::span<cplx> spec, std::span<const cplx> m);
// acc_i += |scale * b_i|^q, or acc_i = max(acc_i, |scale * b_i|) when q is infinite
void lq_accumulate(std::span<double> acc, std::span<const cplx> block, double scale, double q);
double max_abs(std::span<const cplx> f);
// Integral of |x|^gamma over every node-centered cell of the grid on [-L, L)^d.
void cell_weights(int d, double L, std::size_t N, double gamma, std::span<double> out);

}  // namespace serial

namespace parallel {

double weighted_power_sum(std::span<const cplx> f, std::span<const double> w, double p);
void multiply(std::span<cplx> spec, std::span<const double> m);
void multiply(std::span<cplx> spec, std::span<const cplx> m);
void lq_accumulate(std::span<double> acc, std::span<const cplx> block, double scale, double q);
double max_abs(std::span<const cplx> f);
void cell_weights(int d, double L, std::size_t N, double gamma, std::span<double> out);

}  // namespace parallel

}  // namespace powemb::kernels
