#pragma once

// Discrete spectral core: periodic grids, the dyadic resolution of unity,
// Littlewood-Paley blocks, Fourier multipliers and weighted quadrature.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace powemb {

using cplx = std::complex<double>;

class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A requested spectrum does not fit below the grid's Nyquist frequency.
class NyquistError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Periodic lattice on [-L, L)^d, N points per axis, x_j = -L + j h.
/// The origin is the node j = N/2. Storage is row-major with axis 0 first.
struct Grid {
  int d = 1;
  double L = 16.0;
  std::size_t N = 1u << 14;

  static Grid make(int d, double L, std::size_t N);  // validates

  double h() const { return 2.0 * L / static_cast<double>(N); }
  std::size_t size() const { return d == 1 ? N : N * N; }
  /// Largest representable frequency per axis, pi N / (2L).
  double xi_max() const;
  double coord(std::size_t j) const { return -L + static_cast<double>(j) * h(); }
  /// Frequency of FFT index k: pi kk / L with kk in [-N/2, N/2).
  double freq(std::size_t k) const;
  long freq_index(std::size_t k) const;

  friend bool operator==(const Grid&, const Grid&) = default;
};

std::string describe(const Grid& g);

/// |xi| at every lattice frequency, in FFT order.
std::vector<double> frequency_radius(const Grid& g);

/// Unnormalized forward DFT and its normalized inverse (FFTW, cached plans).
std::vector<cplx> fft_forward(const Grid& g, const std::vector<cplx>& values);
std::vector<cplx> fft_inverse(const Grid& g, const std::vector<cplx>& spectrum);

/// A sampled complex function together with its lattice spectrum. Immutable.
class Field {
 public:
  /// With a band limit the spectrum is cut to the ball; the samples are kept as given.
  static Field from_values(const Grid& g, std::vector<cplx> values,
                           std::optional<double> band_limit = std::nullopt);
  /// Spectrum in FFT order (forward DFT of the samples). With a band limit,
  /// coefficients outside the ball are set to zero exactly.
  static Field from_spectrum(const Grid& g, std::vector<cplx> spectrum,
                             std::optional<double> band_limit = std::nullopt);
  static Field from_function(const Grid& g, const std::function<cplx(double, double)>& f);
  /// Samples the function whose continuous Fourier transform is F, i.e.
  /// f(x) = (2 pi)^-d int F(xi) e^{i x.xi} d xi, with F supported in |xi| <= band_limit.
  static Field from_analytic_spectrum(const Grid& g,
                                      const std::function<cplx(double, double)>& F,
                                      double band_limit);

  const Grid& grid() const { return grid_; }
  const std::vector<cplx>& values() const { return values_; }
  const std::vector<cplx>& spectrum() const { return spectrum_; }
  std::optional<double> band_limit() const { return band_limit_; }

  /// Max |DFT(values) - spectrum| relative to max |spectrum|.
  double spectrum_consistency() const;
  /// Largest |f| on the outermost lattice layer, relative to max |f|.
  double boundary_level() const;
  double max_abs() const;

  Field scaled(cplx c) const;
  Field operator+(const Field& other) const;

 private:
  Field() = default;
  Grid grid_;
  std::vector<cplx> values_;
  std::vector<cplx> spectrum_;
  std::optional<double> band_limit_;
};

/// Generator of the dyadic system: 1 on [0,1], 0 on [3/2, inf), smooth between.
double phi_hat(double r);
/// hat_phi_k at radius r.
double phi_hat_block(int k, double r);

struct DyadicSystem {
  Grid grid;
  int K = 0;
  std::vector<std::vector<double>> hat_phi;  // hat_phi[k][lattice index]

  /// Outer radius of the support of block k.
  static double outer_radius(int k) { return 1.5 * std::ldexp(1.0, k); }
};

DyadicSystem make_dyadic(const Grid& g);
/// Shared, lazily built system for a grid.
std::shared_ptr<const DyadicSystem> dyadic_for(const Grid& g);

std::vector<Field> lp_blocks(const Field& f, const DyadicSystem& sys);
/// S_k f for a single k.
Field lp_block(const Field& f, const DyadicSystem& sys, int k);

Field bessel_apply(const Field& f, double s);
/// (i xi)^alpha. Odd orders annihilate the unpaired Nyquist mode.
Field derivative(const Field& f, const std::array<int, 2>& alpha);
/// Multiplier e^{-i lambda xi_0}: translation by lambda along the first axis.
Field translate(const Field& f, double lambda);

/// Exact cell integrals of |x|^gamma, cached per (grid, gamma).
std::shared_ptr<const std::vector<double>> cell_weights(const Grid& g, double gamma);

/// ||f||_{L^p(|x|^gamma)}; p may be infinite.
double weighted_lp(const Field& f, double p, double gamma);
double weighted_lp(const Grid& g, const std::vector<cplx>& values, double p, double gamma);
double weighted_lp(const Grid& g, const std::vector<double>& values, double p, double gamma);

/// Radial function on (eps, R0].
struct RadialProfile {
  enum class Form { PowerLog, Tabulated };

  int d = 1;
  Form form = Form::PowerLog;
  double a = 0.0;   // r^{-a}
  double b = 0.0;   // log(1/r)^{-b}
  double R0 = 0.5;
  double eps = 0.0;
  std::vector<double> r, v;  // tabulated samples, r increasing
  std::string tag;

  static RadialProfile power_log(int d, double a, double b, double R0, double eps, std::string tag = {});
  static RadialProfile tabulated(int d, std::vector<double> r, std::vector<double> v, double eps,
                                 std::string tag = {});

  double operator()(double r) const;
  double upper() const { return form == Form::PowerLog ? R0 : r.back(); }
  RadialProfile with_eps(double e) const;
};

/// sigma_{d-1} = 2 pi^{d/2} / Gamma(d/2).
double sphere_area(int d);

/// sigma_{d-1} int_eps^R0 |f(r)|^p r^{d-1+gamma} dr, adaptive in u = log r.
double radial_integral(const RadialProfile& prof, double p, double gamma, double eps);

struct RadialNorm {
  bool diverged = false;
  double value = 0.0;                 // norm (integral^{1/p}); at the finest eps when eps = 0
  std::vector<double> eps_values;     // refinement sequence, empty when eps > 0
  std::vector<double> integrals;      // integral at each eps
  /// Relative change of the norm between the last two refinements.
  double last_relative_change = 0.0;
};

/// Refinement protocol used when the profile's inner cutoff is 0.
struct DivergenceProtocol {
  int m_first = 4;
  int m_last = 20;
  double growth = 0.1;    // I(m_last) - I(m_last - 2) above this ...
  double cauchy = 1e-3;   // ... and |I(m_last) - I(m_last - 1)| above this
};

RadialNorm radial_weighted_lp(const RadialProfile& prof, double p, double gamma,
                              const DivergenceProtocol& protocol = {});

}  // namespace powemb
