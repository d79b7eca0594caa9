#pragma once

// Weighted B, F, H and W norms assembled from the spectral engine.

#include "powemb/lpengine.hpp"
#include "powemb/params.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace powemb {

struct NormResult {
  double value = 0.0;
  /// (k, 2^{ks} ||S_k f||) for Besov norms only.
  std::optional<std::vector<std::pair<int, double>>> per_block;
  std::vector<std::string> warnings;
};

/// Boundary level above which a periodization warning is attached.
inline constexpr double kBoundaryTolerance = 1e-12;

NormResult besov_norm(const Field& f, const DyadicSystem& sys, double s, double p, double q, double gamma);
NormResult besov_norm(const Field& f, double s, double p, double q, double gamma);

NormResult triebel_norm(const Field& f, const DyadicSystem& sys, double s, double p, double q, double gamma);
NormResult triebel_norm(const Field& f, double s, double p, double q, double gamma);

NormResult bessel_norm(const Field& f, double s, double p, double gamma);
NormResult sobolev_norm(const Field& f, int m, double p, double gamma);

/// Norm of f in the space described by spec. Holder targets are measured in
/// the unweighted B^s_{inf,inf} norm.
NormResult space_norm(const Field& f, const SpaceSpec& spec);

}  // namespace powemb
