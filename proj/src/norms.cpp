#include "powemb/norms.hpp"

#include "powemb/kernels.hpp"
#include "powemb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace powemb {

namespace kp = kernels::parallel;

namespace {

void check_ranges(double p, double q, double gamma, int d) {
  if (!(p >= 1.0)) throw RangeError("p must be at least 1");
  if (!(q >= 1.0)) throw RangeError("q must be at least 1");
  if (!(gamma > -d)) throw RangeError("weight exponent must exceed -d");
}

void boundary_warning(const Field& f, NormResult& r) {
  const double level = f.boundary_level();
  if (level > kBoundaryTolerance) {
    std::ostringstream os;
    os << "periodization: boundary level " << level << " exceeds " << kBoundaryTolerance;
    r.warnings.push_back(os.str());
  }
}

bool block_is_empty(const Field& f, const std::vector<double>& hat) {
  const auto& spec = f.spectrum();
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (hat[i] != 0.0 && spec[i] != 0.0) return false;
  return true;
}

}  // namespace

NormResult besov_norm(const Field& f, const DyadicSystem& sys, double s, double p, double q, double gamma) {
  check_ranges(p, q, gamma, f.grid().d);
  NormResult r;
  r.per_block.emplace();
  double acc = 0.0;
  for (int k = 0; k <= sys.K; ++k) {
    double term = 0.0;
    if (!block_is_empty(f, sys.hat_phi[static_cast<std::size_t>(k)])) {
      term = std::pow(2.0, k * s) * weighted_lp(lp_block(f, sys, k), p, gamma);
    }
    r.per_block->emplace_back(k, term);
    if (std::isinf(q)) acc = std::max(acc, term);
    else acc += std::pow(term, q);
  }
  r.value = std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
  boundary_warning(f, r);
  return r;
}

NormResult besov_norm(const Field& f, double s, double p, double q, double gamma) {
  return besov_norm(f, *dyadic_for(f.grid()), s, p, q, gamma);
}

NormResult triebel_norm(const Field& f, const DyadicSystem& sys, double s, double p, double q, double gamma) {
  check_ranges(p, q, gamma, f.grid().d);
  if (std::isinf(p)) throw RangeError("F norms require p < inf");
  std::vector<double> acc(f.grid().size(), 0.0);
  for (int k = 0; k <= sys.K; ++k) {
    if (block_is_empty(f, sys.hat_phi[static_cast<std::size_t>(k)])) continue;
    const Field block = lp_block(f, sys, k);
    kp::lq_accumulate(acc, block.values(), std::pow(2.0, k * s), q);
  }
  if (!std::isinf(q)) {
    for (auto& a : acc) a = std::pow(a, 1.0 / q);
  }
  NormResult r;
  r.value = weighted_lp(f.grid(), acc, p, gamma);
  boundary_warning(f, r);
  return r;
}

NormResult triebel_norm(const Field& f, double s, double p, double q, double gamma) {
  return triebel_norm(f, *dyadic_for(f.grid()), s, p, q, gamma);
}

NormResult bessel_norm(const Field& f, double s, double p, double gamma) {
  check_ranges(p, 1.0, gamma, f.grid().d);
  NormResult r;
  r.value = weighted_lp(bessel_apply(f, s), p, gamma);
  boundary_warning(f, r);
  return r;
}

NormResult sobolev_norm(const Field& f, int m, double p, double gamma) {
  check_ranges(p, 1.0, gamma, f.grid().d);
  if (m < 0) throw RangeError("Sobolev order must be nonnegative");
  NormResult r;
  const int second_max = f.grid().d == 2 ? m : 0;
  for (int a = 0; a <= m; ++a)
    for (int b = 0; b <= second_max && a + b <= m; ++b)
      r.value += weighted_lp(derivative(f, {a, b}), p, gamma);
  boundary_warning(f, r);
  return r;
}

NormResult space_norm(const Field& f, const SpaceSpec& in) {
  const SpaceSpec spec = validate(in);
  if (spec.d != f.grid().d) throw GridMismatch("space dimension differs from the grid dimension");
  const double s = to_double(spec.s);
  const double p = spec.p.to_double();
  const double g = to_double(spec.gamma);
  switch (spec.family) {
    case Family::Besov: return besov_norm(f, s, p, spec.q->to_double(), g);
    case Family::TriebelLizorkin: return triebel_norm(f, s, p, spec.q->to_double(), g);
    case Family::BesselPotential: return bessel_norm(f, s, p, g);
    case Family::Sobolev: return sobolev_norm(f, static_cast<int>(spec.s.convert_to<double>()), p, g);
    case Family::Holder: {
      const double inf = std::numeric_limits<double>::infinity();
      return besov_norm(f, s, inf, inf, 0.0);
    }
    case Family::Lebesgue: break;
  }
  throw FamilyError("no norm for family");
}

}  // namespace powemb
