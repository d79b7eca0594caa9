#include "powemb/witnesses.hpp"

#include "powemb/params.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace powemb {

namespace {

constexpr std::array<std::string_view, 6> kKindNames = {
    "dilation", "translation", "peaks", "lacunary", "logsing", "rieszlog",
};

// exp(-40.5) ~ 2.6e-18: the Gaussian transform is cut at 9 standard deviations.
constexpr double kGaussCut = 9.0;

struct Packet {
  cplx amp;
  std::array<double, 2> center;  // frequency center
  std::array<double, 2> shift;   // spatial center
  double sigma;                  // spectral standard deviation
};

cplx packet_spectrum(const Packet& pk, int d, double x, double y) {
  const double dx = x - pk.center[0];
  const double dy = d == 2 ? y - pk.center[1] : 0.0;
  const double r2 = (dx * dx + dy * dy) / (pk.sigma * pk.sigma);
  if (r2 > kGaussCut * kGaussCut) return 0.0;
  const double phase = -(x * pk.shift[0] + (d == 2 ? y * pk.shift[1] : 0.0));
  return pk.amp * std::exp(-0.5 * r2) * std::polar(1.0, phase);
}

SpectralBase packet_base(std::string name, int d, std::vector<Packet> packets, nlohmann::json params) {
  double band = 0.0;
  for (const auto& pk : packets)
    band = std::max(band, std::hypot(pk.center[0], pk.center[1]) + kGaussCut * pk.sigma);
  SpectralBase b;
  b.name = std::move(name);
  b.d = d;
  b.band_limit = band;
  b.params = std::move(params);
  b.spectrum = [packets = std::move(packets), d](double x, double y) {
    cplx sum = 0.0;
    for (const auto& pk : packets) sum += packet_spectrum(pk, d, x, y);
    return sum;
  };
  return b;
}

void require_dim(int d) {
  if (d != 1 && d != 2) throw RangeError("witness grids support d = 1 or 2");
}

}  // namespace

std::string_view witness_kind_name(WitnessKind k) { return kKindNames[static_cast<std::size_t>(k)]; }

WitnessKind witness_kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i)
    if (kKindNames[i] == name) return static_cast<WitnessKind>(i);
  throw ParseError("unknown witness kind '" + std::string(name) + "'");
}

SpectralBase SpectralBase::dilated(double t) const {
  if (!(t > 0.0)) throw RangeError("dilation parameter must be positive");
  SpectralBase b = *this;
  b.band_limit = band_limit * t;
  b.spectrum = [F = spectrum, t](double x, double y) { return F(x / t, y / t); };
  b.params["t"] = t;
  return b;
}

SpectralBase gaussian_base(int d, double width) {
  require_dim(d);
  const double norm = std::pow(2.0 * std::numbers::pi * width * width, 0.5 * d);
  Packet pk{norm, {0.0, 0.0}, {0.0, 0.0}, 1.0 / width};
  return packet_base("gaussian", d, {pk}, {{"width", width}});
}

SpectralBase random_base(int d, std::uint64_t seed) {
  require_dim(d);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> freq(-2.0, 2.0);
  std::uniform_real_distribution<double> shift(-1.0, 1.0);
  std::vector<Packet> packets;
  for (int m = 0; m < 3; ++m) {
    Packet pk{{normal(rng), normal(rng)}, {freq(rng), d == 2 ? freq(rng) : 0.0},
              {shift(rng), d == 2 ? shift(rng) : 0.0}, 1.0};
    packets.push_back(pk);
  }
  return packet_base("random", d, std::move(packets), {{"seed", seed}});
}

SpectralBase random_multiscale_base(int d, std::uint64_t seed, int blocks) {
  require_dim(d);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> shift(-2.0, 2.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<Packet> packets;
  for (int k = 0; k < blocks; ++k) {
    const double mu = k == 0 ? 0.0 : 1.2 * std::ldexp(1.0, k);
    const double th = angle(rng);
    const double sign = std::cos(th) < 0.0 ? -1.0 : 1.0;
    Packet pk{{normal(rng), normal(rng)},
              {d == 1 ? sign * mu : mu * std::cos(th), d == 2 ? mu * std::sin(th) : 0.0},
              {shift(rng), d == 2 ? shift(rng) : 0.0},
              std::max(1.0, std::ldexp(1.0, k) / 4.0)};
    packets.push_back(pk);
  }
  return packet_base("multiscale", d, std::move(packets), {{"seed", seed}, {"blocks", blocks}});
}

nlohmann::json WitnessFamily::manifest() const {
  nlohmann::json m;
  m["kind"] = witness_kind_name(kind);
  m["parameters"] = parameters;
  nlohmann::json members = nlohmann::json::array();
  for (std::size_t i = 0; i < index.size(); ++i) members.push_back({{"index", i}, {"parameter", index[i]}});
  m["members"] = members;
  return m;
}

WitnessFamily dilation_family(const SpectralBase& base, const Grid& g, const std::vector<double>& t_values) {
  if (base.d != g.d) throw GridMismatch("base and grid dimensions differ");
  for (double t : t_values) {
    if (!(t > 0.0)) throw RangeError("dilation parameters must be positive");
    if (!(t * base.band_limit < g.xi_max())) {
      std::ostringstream os;
      os << "dilation t = " << t << " moves the band limit " << t * base.band_limit
         << " past the Nyquist frequency " << g.xi_max();
      throw NyquistError(os.str());
    }
  }
  WitnessFamily fam;
  fam.kind = WitnessKind::Dilation;
  fam.parameters = {{"base", base.name}, {"base_params", base.params}, {"t", t_values},
                    {"grid", {{"d", g.d}, {"L", g.L}, {"N", g.N}}}};
  fam.index = t_values;
  fam.generator = [base, g, t_values](std::size_t i) {
    const double t = t_values.at(i);
    return WitnessMember{t, base.dilated(t).sample(g), {{"t", t}}};
  };
  return fam;
}

WitnessFamily translation_family(const Field& base, const std::vector<double>& lambda_values) {
  const Grid& g = base.grid();
  // Extent of the base along the first axis, measured at the 1e-12 level.
  const double thr = 1e-12 * base.max_abs();
  double extent = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(base.values()[i]) <= thr) continue;
    const std::size_t i0 = g.d == 1 ? i : i / g.N;
    extent = std::max(extent, std::abs(g.coord(i0)));
  }
  for (double lam : lambda_values) {
    if (std::abs(lam) + extent >= g.L) {
      std::ostringstream os;
      os << "translation by " << lam << " pushes the support (extent " << extent
         << ") across the torus boundary at L = " << g.L;
      throw BoundaryError(os.str());
    }
  }
  WitnessFamily fam;
  fam.kind = WitnessKind::Translation;
  fam.parameters = {{"lambda", lambda_values}, {"extent", extent},
                    {"grid", {{"d", g.d}, {"L", g.L}, {"N", g.N}}}};
  fam.index = lambda_values;
  fam.generator = [base, lambda_values](std::size_t i) {
    const double lam = lambda_values.at(i);
    return WitnessMember{lam, translate(base, lam), {{"lambda", lam}}};
  };
  return fam;
}

WitnessFamily spectral_peaks(const DyadicSystem& sys, const std::vector<int>& n_values, int j) {
  if (j < -1 || j > 1) throw RangeError("peak offset j must be -1, 0 or 1 (other products vanish)");
  const Grid& g = sys.grid;
  for (int n : n_values) {
    if (n < 2) throw RangeError("peak index n must be at least 2");
    const int top = n + std::max(j, 0);
    if (top > sys.K || !(DyadicSystem::outer_radius(top) <= g.xi_max())) {
      std::ostringstream os;
      os << "peak n = " << n << ", j = " << j << " needs frequencies up to "
         << DyadicSystem::outer_radius(top) << " beyond Nyquist " << g.xi_max();
      throw NyquistError(os.str());
    }
  }
  WitnessFamily fam;
  fam.kind = WitnessKind::SpectralPeak;
  fam.parameters = {{"n", n_values}, {"j", j}, {"grid", {{"d", g.d}, {"L", g.L}, {"N", g.N}}}};
  for (int n : n_values) fam.index.push_back(static_cast<double>(n));
  fam.generator = [g, n_values, j](std::size_t i) {
    const int n = n_values.at(i);
    auto F = [n, j, d = g.d](double x, double y) -> cplx {
      const double r = d == 1 ? std::abs(x) : std::hypot(x, y);
      return phi_hat_block(n, r) * phi_hat_block(n + j, r);
    };
    Field f = Field::from_analytic_spectrum(g, F, DyadicSystem::outer_radius(n + std::max(j, 0)));
    return WitnessMember{static_cast<double>(n), std::move(f), {{"n", n}, {"j", j}}};
  };
  return fam;
}

Field lacunary_sum(const DyadicSystem& sys, const std::vector<double>& coeffs, double s0, double p0,
                   double gamma0) {
  const Grid& g = sys.grid;
  const int N = static_cast<int>(coeffs.size());
  if (N < 1) throw RangeError("lacunary sum needs at least one coefficient");
  if (3 * N > sys.K || !(DyadicSystem::outer_radius(3 * N) <= g.xi_max())) {
    std::ostringstream os;
    os << "lacunary sum with N = " << N << " needs block " << 3 * N << " beyond Nyquist of "
       << describe(g);
    throw NyquistError(os.str());
  }
  const double shifted = s0 - (g.d + gamma0) / p0;
  std::vector<double> c(coeffs.size());
  for (int j = 1; j <= N; ++j)
    c[static_cast<std::size_t>(j - 1)] = std::pow(2.0, -3.0 * j * (g.d + shifted)) * coeffs[static_cast<std::size_t>(j - 1)];
  auto F = [c, d = g.d](double x, double y) -> cplx {
    const double r = d == 1 ? std::abs(x) : std::hypot(x, y);
    double sum = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) sum += c[j] * phi_hat_block(3 * static_cast<int>(j + 1), r);
    return sum;
  };
  return Field::from_analytic_spectrum(g, F, DyadicSystem::outer_radius(3 * N));
}

Field modulated_blocks(const Grid& g, const std::vector<int>& ks, double s) {
  // Plateau of block k is (3/4) 2^k <= |xi| <= 2^k; the packet sits at (7/8) 2^k
  // with spectral radius 3/4, which fits for k >= 3 in both dimensions.
  constexpr double kRadius = 0.75;
  const double sigma = kRadius / kGaussCut;
  const double norm = std::pow(std::sqrt(2.0 * std::numbers::pi) / sigma, g.d);
  std::vector<Packet> packets;
  double band = 0.0;
  for (int k : ks) {
    if (k < kModulatedFirstBlock) throw RangeError("modulated packets need block index >= 3");
    const double center = 0.875 * std::ldexp(1.0, k);
    if (!(std::ldexp(1.0, k) < g.xi_max())) throw NyquistError("modulated block beyond Nyquist");
    packets.push_back({norm * std::pow(2.0, -k * s), {center, 0.0}, {0.0, 0.0}, sigma});
    band = std::max(band, center + kRadius);
  }
  auto F = [packets, d = g.d](double x, double y) {
    cplx sum = 0.0;
    for (const auto& pk : packets) sum += packet_spectrum(pk, d, x, y);
    return sum;
  };
  return Field::from_analytic_spectrum(g, F, band);
}

RadialProfile log_singularity(double p0, double gamma0, double p1, int d, double eps, bool printed) {
  if (!(p1 < p0)) throw RangeError("log singularity profile needs p1 < p0");
  if (eps < 0.0 || eps > 0.25) throw RangeError("eps must lie in [0, 1/4]");
  if (!(gamma0 > -d)) throw RangeError("weight exponent must exceed -d");
  const double a = printed ? d / p0 : (d + gamma0) / p0;
  return RadialProfile::power_log(d, a, 1.0 / p1, 0.5, eps, printed ? "logsing-printed" : "logsing");
}

RadialProfile riesz_log(double a, double b, int d, double eps) {
  if (eps < 0.0 || eps > 0.25) throw RangeError("eps must lie in [0, 1/4]");
  return RadialProfile::power_log(d, a, b, 0.5, eps, "rieszlog");
}

}  // namespace powemb
