#pragma once

// Parameter algebra for power-weighted smoothness spaces.

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace powemb {

using Rational = boost::multiprecision::mpq_rational;

class RangeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value in (0, +inf]: finite positive rationals plus an explicit infinity.
class Extended {
 public:
  Extended() = default;
  Extended(Rational v);  // NOLINT(google-explicit-constructor)
  Extended(long v) : Extended(Rational(v)) {}  // NOLINT
  Extended(int v) : Extended(Rational(v)) {}   // NOLINT

  static Extended infinity();

  bool is_infinite() const { return infinite_; }
  /// Throws std::logic_error on infinity.
  const Rational& value() const;
  /// 1/x with 1/inf = 0.
  Rational reciprocal() const;
  double to_double() const;
  std::string str() const;

  friend bool operator==(const Extended& a, const Extended& b);
  friend bool operator<(const Extended& a, const Extended& b);
  friend bool operator<=(const Extended& a, const Extended& b) { return !(b < a); }
  friend bool operator>(const Extended& a, const Extended& b) { return b < a; }
  friend bool operator>=(const Extended& a, const Extended& b) { return !(a < b); }

 private:
  bool infinite_ = false;
  Rational value_{1};
};

enum class Family { Besov, TriebelLizorkin, BesselPotential, Sobolev, Lebesgue, Holder };

std::string_view family_tag(Family f);  // "B", "F", "H", "W", "Lp", "Holder"
Family family_from_tag(std::string_view tag);

struct SpaceSpec {
  Family family = Family::Besov;
  Rational s{0};
  Extended p{2};
  std::optional<Extended> q;  // B and F only
  Rational gamma{0};
  int d = 1;

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

  static SpaceSpec besov(Rational s, Extended p, Extended q, Rational gamma, int d = 1);
  static SpaceSpec triebel(Rational s, Extended p, Extended q, Rational gamma, int d = 1);
  static SpaceSpec bessel(Rational s, Extended p, Rational gamma, int d = 1);
  static SpaceSpec sobolev(Rational s, Extended p, Rational gamma, int d = 1);
  static SpaceSpec lebesgue(Extended p, Rational gamma, int d = 1);
  static SpaceSpec holder(Rational s, int d = 1);
};

/// Human-readable form, e.g. "B^{1}_{2,1}(g=0,d=1)".
std::string describe(const SpaceSpec& spec);

struct DerivedIndices {
  Rational shifted_smoothness;  // s - (d+gamma)/p
  Rational weight_index;        // gamma/p
  Rational dim_index;           // (d+gamma)/p
};

/// Checks the definitional ranges and canonicalizes: fractional Sobolev becomes
/// Besov with q = p, Lebesgue becomes Bessel potential with s = 0.
SpaceSpec validate(const SpaceSpec& spec);

DerivedIndices indices(const SpaceSpec& spec);

/// Power weight |x|^gamma lies in A_p iff -d < gamma < d(p-1). Undefined for p = inf.
bool in_ap_range(const Extended& p, const Rational& gamma, int d);

bool is_integer(const Rational& r);

/// Accepts "3/4", "-1/3", "0.25", "2", "inf". Exact.
Rational parse_rational(std::string_view text);
Extended parse_extended(std::string_view text);
/// Exact rational of the shortest decimal text that round-trips to x.
Rational rational_from_double(double x);
/// "3/4", "-2", "0".
std::string rational_str(const Rational& r);
double to_double(const Rational& r);

}  // namespace powemb
