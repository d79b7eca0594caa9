#pragma once

// Extremal families from the necessity arguments: dilations, translations,
// spectral peaks, lacunary sums and radial log-singular profiles.

#include "powemb/lpengine.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace powemb {

class BoundaryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class WitnessKind { Dilation, Translation, SpectralPeak, LacunarySum, LogSingularity, RieszLog };

std::string_view witness_kind_name(WitnessKind k);
WitnessKind witness_kind_from_name(std::string_view name);

/// A band-limited function known through its continuous Fourier transform,
/// so that dilations can be sampled exactly on any grid.
struct SpectralBase {
  std::string name;
  int d = 1;
  double band_limit = 1.0;
  std::function<cplx(double, double)> spectrum;
  nlohmann::json params;

  Field sample(const Grid& g) const { return Field::from_analytic_spectrum(g, spectrum, band_limit); }
  /// t^d f(t x), whose transform is F(xi / t).
  SpectralBase dilated(double t) const;
};

/// exp(-|x|^2 / (2 w^2)), transform truncated where it drops below 3e-18.
SpectralBase gaussian_base(int d, double width = 1.0);
/// A few Gaussian wave packets with random centers, frequencies and phases.
/// Band limit 12.
SpectralBase random_base(int d, std::uint64_t seed);
/// Random field spread over `blocks` dyadic scales starting at block 0.
SpectralBase random_multiscale_base(int d, std::uint64_t seed, int blocks = 6);

struct WitnessMember {
  double parameter = 0.0;
  std::variant<Field, RadialProfile> value;
  nlohmann::json params;

  const Field& field() const { return std::get<Field>(value); }
  const RadialProfile& profile() const { return std::get<RadialProfile>(value); }
};

struct WitnessFamily {
  WitnessKind kind = WitnessKind::Dilation;
  nlohmann::json parameters;
  std::vector<double> index;  // family parameter of each member
  std::function<WitnessMember(std::size_t)> generator;

  std::size_t size() const { return index.size(); }
  WitnessMember member(std::size_t i) const { return generator(i); }
  nlohmann::json manifest() const;
};

WitnessFamily dilation_family(const SpectralBase& base, const Grid& g, const std::vector<double>& t_values);
WitnessFamily translation_family(const Field& base, const std::vector<double>& lambda_values);
/// Members phi_n * phi_{n+j}.
WitnessFamily spectral_peaks(const DyadicSystem& sys, const std::vector<int>& n_values, int j);

/// sum_j 2^{-3j(d + s0 - (d+gamma0)/p0)} a_j phi_{3j}.
Field lacunary_sum(const DyadicSystem& sys, const std::vector<double>& coeffs, double s0, double p0,
                   double gamma0);
/// One Gaussian packet per block k in ks, placed on the plateau of hat_phi_k
/// and scaled by 2^{-ks}; every block norm then equals that of the envelope.
/// The envelope is about 12 wide in space, so use L >= 64.
Field modulated_blocks(const Grid& g, const std::vector<int>& ks, double s);
/// Smallest block index whose plateau holds a modulated packet.
inline constexpr int kModulatedFirstBlock = 3;

/// r^{-(d+gamma0)/p0} log(1/r)^{-1/p1} on (eps, 1/2]. With printed = true the
/// exponent is -d/p0 regardless of gamma0.
RadialProfile log_singularity(double p0, double gamma0, double p1, int d, double eps, bool printed = false);
/// r^{-a} log(1/r)^{-b} on (eps, 1/2].
RadialProfile riesz_log(double a, double b, int d, double eps);

}  // namespace powemb
