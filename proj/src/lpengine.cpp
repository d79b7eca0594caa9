#include "powemb/lpengine.hpp"

#include "powemb/kernels.hpp"
#include "powemb/params.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

namespace powemb {

namespace kp = kernels::parallel;

Grid Grid::make(int d, double L, std::size_t N) {
  if (d != 1 && d != 2) throw RangeError("grid dimension must be 1 or 2");
  if (!(L > 0.0) || !std::isfinite(L)) throw RangeError("grid half-width must be positive");
  if (N < 8 || !std::has_single_bit(N)) throw RangeError("grid size must be a power of two >= 8");
  return Grid{d, L, N};
}

double Grid::xi_max() const { return std::numbers::pi * static_cast<double>(N) / (2.0 * L); }

long Grid::freq_index(std::size_t k) const {
  const auto n = static_cast<long>(N);
  const auto kk = static_cast<long>(k);
  return kk < n / 2 ? kk : kk - n;
}

double Grid::freq(std::size_t k) const {
  return std::numbers::pi * static_cast<double>(freq_index(k)) / L;
}

std::string describe(const Grid& g) {
  std::ostringstream os;
  os << "grid(d=" << g.d << ",L=" << g.L << ",N=" << g.N << ")";
  return os.str();
}

std::vector<double> frequency_radius(const Grid& g) {
  std::vector<double> r(g.size());
  if (g.d == 1) {
    for (std::size_t k = 0; k < g.N; ++k) r[k] = std::abs(g.freq(k));
    return r;
  }
  for (std::size_t i = 0; i < g.N; ++i) {
    const double a = g.freq(i);
    for (std::size_t j = 0; j < g.N; ++j) r[i * g.N + j] = std::hypot(a, g.freq(j));
  }
  return r;
}

// ---------------------------------------------------------------- FFT

namespace {

struct PlanCache {
  std::mutex mu;
  std::map<std::tuple<int, std::size_t, int>, fftw_plan> plans;

  fftw_plan get(int d, std::size_t N, int sign) {
    std::lock_guard lock(mu);
    auto key = std::make_tuple(d, N, sign);
    if (auto it = plans.find(key); it != plans.end()) return it->second;
    const std::size_t n = d == 1 ? N : N * N;
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan p = d == 1 ? fftw_plan_dft_1d(static_cast<int>(N), in, out, sign, flags)
                         : fftw_plan_dft_2d(static_cast<int>(N), static_cast<int>(N), in, out, sign, flags);
    fftw_free(in);
    fftw_free(out);
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

std::vector<cplx> run_fft(const Grid& g, const std::vector<cplx>& in, int sign) {
  if (in.size() != g.size()) throw GridMismatch("array size does not match " + describe(g));
  fftw_plan p = plan_cache().get(g.d, g.N, sign);
  std::vector<cplx> src = in;
  std::vector<cplx> out(in.size());
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(src.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

std::vector<cplx> fft_forward(const Grid& g, const std::vector<cplx>& values) {
  return run_fft(g, values, FFTW_FORWARD);
}

std::vector<cplx> fft_inverse(const Grid& g, const std::vector<cplx>& spectrum) {
  auto out = run_fft(g, spectrum, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& z : out) z *= scale;
  return out;
}

// ---------------------------------------------------------------- Field

Field Field::from_values(const Grid& g, std::vector<cplx> values, std::optional<double> band_limit) {
  if (values.size() != g.size()) throw GridMismatch("value count does not match " + describe(g));
  Field f;
  f.grid_ = g;
  f.spectrum_ = fft_forward(g, values);
  if (band_limit) {
    const auto r = frequency_radius(g);
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] > *band_limit) f.spectrum_[i] = 0.0;
  }
  f.values_ = std::move(values);
  f.band_limit_ = band_limit;
  return f;
}

Field Field::from_spectrum(const Grid& g, std::vector<cplx> spectrum, std::optional<double> band_limit) {
  if (spectrum.size() != g.size()) throw GridMismatch("spectrum size does not match " + describe(g));
  if (band_limit) {
    const auto r = frequency_radius(g);
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] > *band_limit) spectrum[i] = 0.0;
  }
  Field f;
  f.grid_ = g;
  f.values_ = fft_inverse(g, spectrum);
  f.spectrum_ = std::move(spectrum);
  f.band_limit_ = band_limit;
  return f;
}

Field Field::from_function(const Grid& g, const std::function<cplx(double, double)>& fn) {
  std::vector<cplx> v(g.size());
  if (g.d == 1) {
    for (std::size_t j = 0; j < g.N; ++j) v[j] = fn(g.coord(j), 0.0);
  } else {
    for (std::size_t i = 0; i < g.N; ++i)
      for (std::size_t j = 0; j < g.N; ++j) v[i * g.N + j] = fn(g.coord(i), g.coord(j));
  }
  return from_values(g, std::move(v));
}

Field Field::from_analytic_spectrum(const Grid& g, const std::function<cplx(double, double)>& F,
                                    double band_limit) {
  if (!(band_limit < g.xi_max())) {
    std::ostringstream os;
    os << "band limit " << band_limit << " is not below the Nyquist frequency " << g.xi_max()
       << " of " << describe(g);
    throw NyquistError(os.str());
  }
  // Sample spacing h and the x_0 = -L offset turn F(xi_k) into DFT coefficients
  // F(xi_k) (-1)^kk / h^d.
  const double inv_hd = std::pow(1.0 / g.h(), g.d);
  std::vector<cplx> spec(g.size());
  if (g.d == 1) {
    for (std::size_t k = 0; k < g.N; ++k) {
      const double sign = (g.freq_index(k) & 1) ? -1.0 : 1.0;
      spec[k] = F(g.freq(k), 0.0) * (sign * inv_hd);
    }
  } else {
    for (std::size_t i = 0; i < g.N; ++i)
      for (std::size_t j = 0; j < g.N; ++j) {
        const double sign = ((g.freq_index(i) + g.freq_index(j)) & 1) ? -1.0 : 1.0;
        spec[i * g.N + j] = F(g.freq(i), g.freq(j)) * (sign * inv_hd);
      }
  }
  return from_spectrum(g, std::move(spec), band_limit);
}

double Field::spectrum_consistency() const {
  const auto fresh = fft_forward(grid_, values_);
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    diff = std::max(diff, std::abs(fresh[i] - spectrum_[i]));
    scale = std::max(scale, std::abs(spectrum_[i]));
  }
  return scale == 0.0 ? diff : diff / scale;
}

double Field::max_abs() const { return kp::max_abs(values_); }

double Field::boundary_level() const {
  const double m = max_abs();
  if (m == 0.0) return 0.0;
  double b = 0.0;
  const std::size_t N = grid_.N;
  if (grid_.d == 1) {
    b = std::max(std::abs(values_.front()), std::abs(values_.back()));
  } else {
    for (std::size_t t = 0; t < N; ++t) {
      b = std::max({b, std::abs(values_[t]), std::abs(values_[(N - 1) * N + t]),
                    std::abs(values_[t * N]), std::abs(values_[t * N + N - 1])});
    }
  }
  return b / m;
}

Field Field::scaled(cplx c) const {
  Field f = *this;
  for (auto& z : f.values_) z *= c;
  for (auto& z : f.spectrum_) z *= c;
  return f;
}

Field Field::operator+(const Field& other) const {
  if (!(grid_ == other.grid_)) throw GridMismatch("adding fields on different grids");
  Field f = *this;
  for (std::size_t i = 0; i < f.values_.size(); ++i) {
    f.values_[i] += other.values_[i];
    f.spectrum_[i] += other.spectrum_[i];
  }
  if (band_limit_ && other.band_limit_) f.band_limit_ = std::max(*band_limit_, *other.band_limit_);
  else f.band_limit_.reset();
  return f;
}

// ---------------------------------------------------------------- dyadic system

namespace {

double chi(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double phi_hat(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 1.5) return 0.0;
  const double a = chi(1.5 - r);
  const double b = chi(r - 1.0);
  return a / (a + b);
}

double phi_hat_block(int k, double r) {
  if (k == 0) return phi_hat(r);
  return phi_hat(std::ldexp(r, -k)) - phi_hat(std::ldexp(r, 1 - k));
}

DyadicSystem make_dyadic(const Grid& g) {
  DyadicSystem sys;
  sys.grid = g;
  sys.K = static_cast<int>(std::ceil(std::log2(g.xi_max() * std::sqrt(static_cast<double>(g.d))))) + 1;
  const auto r = frequency_radius(g);
  sys.hat_phi.assign(static_cast<std::size_t>(sys.K) + 1, std::vector<double>(r.size()));
  for (int k = 0; k <= sys.K; ++k) {
    auto& h = sys.hat_phi[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < r.size(); ++i) h[i] = phi_hat_block(k, r[i]);
  }
  return sys;
}

std::shared_ptr<const DyadicSystem> dyadic_for(const Grid& g) {
  static std::mutex mu;
  static std::map<std::tuple<int, double, std::size_t>, std::shared_ptr<const DyadicSystem>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_tuple(g.d, g.L, g.N);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto sys = std::make_shared<const DyadicSystem>(make_dyadic(g));
  cache.emplace(key, sys);
  return sys;
}

Field lp_block(const Field& f, const DyadicSystem& sys, int k) {
  if (!(f.grid() == sys.grid)) throw GridMismatch("field and dyadic system live on different grids");
  if (k < 0 || k > sys.K) throw RangeError("block index out of range");
  std::vector<cplx> spec = f.spectrum();
  kp::multiply(spec, sys.hat_phi[static_cast<std::size_t>(k)]);
  return Field::from_spectrum(f.grid(), std::move(spec), DyadicSystem::outer_radius(k));
}

std::vector<Field> lp_blocks(const Field& f, const DyadicSystem& sys) {
  std::vector<Field> out;
  out.reserve(static_cast<std::size_t>(sys.K) + 1);
  for (int k = 0; k <= sys.K; ++k) out.push_back(lp_block(f, sys, k));
  return out;
}

// ---------------------------------------------------------------- multipliers

namespace {

Field with_multiplier(const Field& f, const std::vector<cplx>& m) {
  std::vector<cplx> spec = f.spectrum();
  kp::multiply(spec, m);
  return Field::from_spectrum(f.grid(), std::move(spec), f.band_limit());
}

}  // namespace

Field bessel_apply(const Field& f, double s) {
  if (s == 0.0) return f;
  const auto r = frequency_radius(f.grid());
  std::vector<double> m(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) m[i] = std::pow(1.0 + r[i] * r[i], 0.5 * s);
  std::vector<cplx> spec = f.spectrum();
  kp::multiply(spec, m);
  return Field::from_spectrum(f.grid(), std::move(spec), f.band_limit());
}

Field derivative(const Field& f, const std::array<int, 2>& alpha) {
  if (alpha[0] < 0 || alpha[1] < 0) throw RangeError("negative derivative order");
  if (alpha[0] == 0 && alpha[1] == 0) return f;
  const Grid& g = f.grid();
  if (g.d == 1 && alpha[1] != 0) throw RangeError("second derivative axis on a 1-D grid");
  const long nyq = -static_cast<long>(g.N / 2);
  auto axis_factor = [&](std::size_t k, int order) -> cplx {
    if (order == 0) return 1.0;
    if ((order & 1) && g.freq_index(k) == nyq) return 0.0;
    return std::pow(cplx(0.0, g.freq(k)), order);
  };
  std::vector<cplx> m(g.size());
  if (g.d == 1) {
    for (std::size_t k = 0; k < g.N; ++k) m[k] = axis_factor(k, alpha[0]);
  } else {
    for (std::size_t i = 0; i < g.N; ++i) {
      const cplx a = axis_factor(i, alpha[0]);
      for (std::size_t j = 0; j < g.N; ++j) m[i * g.N + j] = a * axis_factor(j, alpha[1]);
    }
  }
  return with_multiplier(f, m);
}

Field translate(const Field& f, double lambda) {
  if (lambda == 0.0) return f;
  const Grid& g = f.grid();
  std::vector<cplx> m(g.size());
  for (std::size_t i = 0; i < g.N; ++i) {
    const cplx phase = std::polar(1.0, -lambda * g.freq(i));
    if (g.d == 1) {
      m[i] = phase;
    } else {
      for (std::size_t j = 0; j < g.N; ++j) m[i * g.N + j] = phase;
    }
  }
  return with_multiplier(f, m);
}

// ---------------------------------------------------------------- quadrature

std::shared_ptr<const std::vector<double>> cell_weights(const Grid& g, double gamma) {
  if (!(gamma > -g.d)) throw RangeError("weight exponent must exceed -d");
  static std::mutex mu;
  static std::map<std::tuple<int, double, std::size_t, double>, std::shared_ptr<const std::vector<double>>> cache;
  const auto key = std::make_tuple(g.d, g.L, g.N, gamma);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto w = std::make_shared<std::vector<double>>(g.size());
  kp::cell_weights(g.d, g.L, g.N, gamma, *w);
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(w)).first->second;
}

double weighted_lp(const Grid& g, const std::vector<cplx>& values, double p, double gamma) {
  if (!(gamma > -g.d)) throw RangeError("weight exponent must exceed -d");
  if (!(p >= 1.0)) throw RangeError("p must be at least 1");
  if (values.size() != g.size()) throw GridMismatch("value count does not match " + describe(g));
  if (std::isinf(p)) return kp::max_abs(values);
  const auto w = cell_weights(g, gamma);
  return std::pow(kp::weighted_power_sum(values, *w, p), 1.0 / p);
}

double weighted_lp(const Grid& g, const std::vector<double>& values, double p, double gamma) {
  std::vector<cplx> v(values.begin(), values.end());
  return weighted_lp(g, v, p, gamma);
}

double weighted_lp(const Field& f, double p, double gamma) {
  return weighted_lp(f.grid(), f.values(), p, gamma);
}

// ---------------------------------------------------------------- radial quadrature

RadialProfile RadialProfile::power_log(int d, double a, double b, double R0, double eps, std::string tag) {
  if (d < 1) throw RangeError("dimension must be >= 1");
  if (b != 0.0 && !(R0 < 1.0)) throw RangeError("log factor needs R0 < 1");
  if (!(R0 > 0.0) || eps < 0.0) throw RangeError("bad radial range");
  RadialProfile p;
  p.d = d;
  p.form = Form::PowerLog;
  p.a = a;
  p.b = b;
  p.R0 = R0;
  p.eps = eps;
  p.tag = std::move(tag);
  return p;
}

RadialProfile RadialProfile::tabulated(int d, std::vector<double> r, std::vector<double> v, double eps,
                                       std::string tag) {
  if (r.size() < 2 || r.size() != v.size()) throw RangeError("tabulated profile needs >= 2 samples");
  if (!std::is_sorted(r.begin(), r.end()) || !(r.front() > 0.0)) throw RangeError("radii must increase");
  RadialProfile p;
  p.d = d;
  p.form = Form::Tabulated;
  p.r = std::move(r);
  p.v = std::move(v);
  p.R0 = p.r.back();
  p.eps = eps;
  p.tag = std::move(tag);
  return p;
}

double RadialProfile::operator()(double x) const {
  if (form == Form::PowerLog) {
    if (x <= eps || x > R0) return 0.0;
    double val = std::pow(x, -a);
    if (b != 0.0) val *= std::pow(std::log(1.0 / x), -b);
    return val;
  }
  if (x <= eps || x < r.front() || x > r.back()) return 0.0;
  auto it = std::upper_bound(r.begin(), r.end(), x);
  if (it == r.end()) return v.back();
  const std::size_t i = static_cast<std::size_t>(it - r.begin());
  const double t = (x - r[i - 1]) / (r[i] - r[i - 1]);
  return (1.0 - t) * v[i - 1] + t * v[i];
}

RadialProfile RadialProfile::with_eps(double e) const {
  RadialProfile p = *this;
  p.eps = e;
  return p;
}

double sphere_area(int d) {
  const double h = 0.5 * d;
  return 2.0 * std::pow(std::numbers::pi, h) / boost::math::tgamma(h);
}

double radial_integral(const RadialProfile& prof, double p, double gamma, double eps) {
  if (!(gamma > -prof.d)) throw RangeError("weight exponent must exceed -d");
  if (!(p >= 1.0) || std::isinf(p)) throw RangeError("radial quadrature needs 1 <= p < inf");
  double lo = std::max(eps, prof.eps);
  if (prof.form == RadialProfile::Form::Tabulated) lo = std::max(lo, prof.r.front());
  const double hi = prof.upper();
  if (!(lo > 0.0)) throw RangeError("radial quadrature needs a positive inner cutoff");
  if (lo >= hi) return 0.0;
  const double e = prof.d + gamma;
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double value = 0.0;
  if (prof.form == RadialProfile::Form::PowerLog) {
    // |r^-a log(1/r)^-b|^p r^{d+gamma} in log coordinates.
    auto g = [&](double u) {
      double lg = u * (e - prof.a * p);
      if (prof.b != 0.0) lg -= prof.b * p * std::log(-u);
      return std::exp(lg);
    };
    value = GK::integrate(g, std::log(lo), std::log(hi), 20, 1e-13);
  } else {
    auto g = [&](double u) {
      const double x = std::exp(u);
      return std::pow(std::abs(prof(x)), p) * std::exp(u * e);
    };
    // Integrate node to node so the interpolation kinks sit on panel edges.
    auto start = std::lower_bound(prof.r.begin(), prof.r.end(), lo);
    double a = std::log(lo);
    for (auto it = start; it != prof.r.end(); ++it) {
      const double b = std::log(*it);
      if (b > a) value += GK::integrate(g, a, b, 10, 1e-13);
      a = std::max(a, b);
    }
  }
  return sphere_area(prof.d) * value;
}

RadialNorm radial_weighted_lp(const RadialProfile& prof, double p, double gamma,
                              const DivergenceProtocol& protocol) {
  RadialNorm out;
  if (prof.eps > 0.0 || (prof.form == RadialProfile::Form::Tabulated)) {
    const double I = radial_integral(prof, p, gamma, prof.eps);
    out.value = std::pow(I, 1.0 / p);
    return out;
  }
  for (int m = protocol.m_first; m <= protocol.m_last; ++m) {
    const double eps = std::ldexp(1.0, -m);
    out.eps_values.push_back(eps);
    out.integrals.push_back(radial_integral(prof, p, gamma, eps));
  }
  const auto& I = out.integrals;
  const std::size_t n = I.size();
  const double growth = I[n - 1] - I[n - 3];
  const double step = std::abs(I[n - 1] - I[n - 2]);
  out.diverged = growth > protocol.growth && step > protocol.cauchy;
  out.value = out.diverged ? std::numeric_limits<double>::infinity() : std::pow(I[n - 1], 1.0 / p);
  const double a = std::pow(I[n - 2], 1.0 / p);
  const double b = std::pow(I[n - 1], 1.0 / p);
  out.last_relative_change = a > 0.0 ? std::abs(b - a) / a : 0.0;
  return out;
}

}  // namespace powemb
