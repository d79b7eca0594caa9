#include "powemb/params.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace powemb {

Extended::Extended(Rational v) : value_(std::move(v)) {
  if (value_ <= 0) throw RangeError("extended value must be positive, got " + rational_str(value_));
}

Extended Extended::infinity() {
  Extended e;
  e.infinite_ = true;
  e.value_ = 0;
  return e;
}

const Rational& Extended::value() const {
  if (infinite_) throw std::logic_error("value() of infinite Extended");
  return value_;
}

Rational Extended::reciprocal() const { return infinite_ ? Rational(0) : Rational(1) / value_; }

double Extended::to_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : powemb::to_double(value_);
}

std::string Extended::str() const { return infinite_ ? "inf" : rational_str(value_); }

bool operator==(const Extended& a, const Extended& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

bool operator<(const Extended& a, const Extended& b) {
  if (a.infinite_) return false;
  if (b.infinite_) return true;
  return a.value_ < b.value_;
}

std::string_view family_tag(Family f) {
  switch (f) {
    case Family::Besov: return "B";
    case Family::TriebelLizorkin: return "F";
    case Family::BesselPotential: return "H";
    case Family::Sobolev: return "W";
    case Family::Lebesgue: return "Lp";
    case Family::Holder: return "Holder";
  }
  return "?";
}

Family family_from_tag(std::string_view tag) {
  if (tag == "B") return Family::Besov;
  if (tag == "F") return Family::TriebelLizorkin;
  if (tag == "H") return Family::BesselPotential;
  if (tag == "W") return Family::Sobolev;
  if (tag == "Lp" || tag == "L") return Family::Lebesgue;
  if (tag == "Holder" || tag == "BUC") return Family::Holder;
  throw ParseError("unknown family tag '" + std::string(tag) + "'");
}

SpaceSpec SpaceSpec::besov(Rational s, Extended p, Extended q, Rational gamma, int d) {
  return {Family::Besov, std::move(s), p, q, std::move(gamma), d};
}
SpaceSpec SpaceSpec::triebel(Rational s, Extended p, Extended q, Rational gamma, int d) {
  return {Family::TriebelLizorkin, std::move(s), p, q, std::move(gamma), d};
}
SpaceSpec SpaceSpec::bessel(Rational s, Extended p, Rational gamma, int d) {
  return {Family::BesselPotential, std::move(s), p, std::nullopt, std::move(gamma), d};
}
SpaceSpec SpaceSpec::sobolev(Rational s, Extended p, Rational gamma, int d) {
  return {Family::Sobolev, std::move(s), p, std::nullopt, std::move(gamma), d};
}
SpaceSpec SpaceSpec::lebesgue(Extended p, Rational gamma, int d) {
  return {Family::Lebesgue, Rational(0), p, std::nullopt, std::move(gamma), d};
}
SpaceSpec SpaceSpec::holder(Rational s, int d) {
  return {Family::Holder, std::move(s), Extended::infinity(), std::nullopt, Rational(0), d};
}

std::string describe(const SpaceSpec& x) {
  std::ostringstream os;
  const auto s = rational_str(x.s);
  switch (x.family) {
    case Family::Besov:
    case Family::TriebelLizorkin:
      os << family_tag(x.family) << "^{" << s << "}_{" << x.p.str() << ","
         << (x.q ? x.q->str() : "?") << "}";
      break;
    case Family::BesselPotential:
    case Family::Sobolev:
      os << family_tag(x.family) << "^{" << s << "," << x.p.str() << "}";
      break;
    case Family::Lebesgue: os << "L^{" << x.p.str() << "}"; break;
    case Family::Holder: os << "BUC^{" << s << "}(d=" << x.d << ")"; return os.str();
  }
  os << "(g=" << rational_str(x.gamma) << ",d=" << x.d << ")";
  return os.str();
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

SpaceSpec validate(const SpaceSpec& in) {
  SpaceSpec x = in;
  if (x.d < 1) throw RangeError("dimension must be >= 1");
  if (x.family == Family::Holder) {
    if (x.s <= 0) throw RangeError("Holder smoothness must be positive");
    x.p = Extended::infinity();
    x.q.reset();
    x.gamma = 0;
    return x;
  }
  if (x.gamma <= -x.d) {
    throw RangeError("weight exponent " + rational_str(x.gamma) + " must exceed -d = " +
                     std::to_string(-x.d));
  }
  if (!x.p.is_infinite() && x.p.value() <= 1) throw RangeError("p must lie in (1, inf]");
  // The weight does not change the essential supremum.
  if (x.p.is_infinite()) x.gamma = 0;

  switch (x.family) {
    case Family::Besov:
    case Family::TriebelLizorkin:
      if (!x.q) throw RangeError("q is required for B and F spaces");
      if (!x.q->is_infinite() && x.q->value() < 1) throw RangeError("q must lie in [1, inf]");
      if (x.family == Family::TriebelLizorkin && x.p.is_infinite())
        throw RangeError("F spaces require p < inf");
      break;
    case Family::Lebesgue:
      x.family = Family::BesselPotential;
      x.s = 0;
      [[fallthrough]];
    case Family::BesselPotential:
      if (x.p.is_infinite()) throw RangeError("H and Lp spaces require p < inf");
      x.q.reset();
      break;
    case Family::Sobolev:
      if (x.s < 0) throw RangeError("Sobolev smoothness must be nonnegative");
      if (!is_integer(x.s)) {
        x.family = Family::Besov;
        x.q = x.p;
        break;
      }
      if (x.p.is_infinite()) throw RangeError("integer-order W spaces require p < inf");
      x.q.reset();
      break;
    case Family::Holder: break;
  }
  return x;
}

DerivedIndices indices(const SpaceSpec& x) {
  const Rational inv_p = x.p.reciprocal();
  DerivedIndices out;
  out.weight_index = x.gamma * inv_p;
  out.dim_index = (Rational(x.d) + x.gamma) * inv_p;
  out.shifted_smoothness = x.s - out.dim_index;
  return out;
}

bool in_ap_range(const Extended& p, const Rational& gamma, int d) {
  if (p.is_infinite()) throw RangeError("A_p membership is not defined for p = inf");
  return gamma > -d && gamma < Rational(d) * (p.value() - 1);
}

namespace {

std::string_view trim(std::string_view t) {
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  return t;
}

// Decimal literal with optional sign, fraction and exponent.
Rational parse_decimal(std::string_view t) {
  if (t.empty()) throw ParseError("empty number");
  bool negative = false;
  if (t.front() == '+' || t.front() == '-') {
    negative = t.front() == '-';
    t.remove_prefix(1);
  }
  std::string digits;
  long exponent = 0;
  bool seen_dot = false;
  bool any_digit = false;
  std::size_t i = 0;
  for (; i < t.size(); ++i) {
    const char c = t[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_dot) --exponent;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw ParseError("malformed number '" + std::string(t) + "'");
  if (i < t.size()) {
    if (t[i] != 'e' && t[i] != 'E') throw ParseError("malformed number '" + std::string(t) + "'");
    long e = 0;
    auto rest = t.substr(i + 1);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), e);
    if (ec != std::errc() || ptr != rest.data() + rest.size() || rest.empty())
      throw ParseError("malformed exponent in '" + std::string(t) + "'");
    if (e > 4000 || e < -4000) throw ParseError("exponent out of range");
    exponent += e;
  }
  // A leading zero would make mpz parse the digits as octal.
  const auto nz = digits.find_first_not_of('0');
  digits = nz == std::string::npos ? "0" : digits.substr(nz);
  boost::multiprecision::mpz_int n(digits);
  Rational r(n);
  boost::multiprecision::mpz_int ten_pow = boost::multiprecision::pow(
      boost::multiprecision::mpz_int(10), static_cast<unsigned>(std::labs(exponent)));
  if (exponent >= 0) r *= Rational(ten_pow);
  else r /= Rational(ten_pow);
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto t = trim(text);
  const auto slash = t.find('/');
  if (slash == std::string_view::npos) return parse_decimal(t);
  const Rational num = parse_decimal(trim(t.substr(0, slash)));
  const Rational den = parse_decimal(trim(t.substr(slash + 1)));
  if (den == 0) throw ParseError("zero denominator in '" + std::string(t) + "'");
  return num / den;
}

Extended parse_extended(std::string_view text) {
  auto t = trim(text);
  if (t == "inf" || t == "+inf" || t == "infinity" || t == "Inf" || t == "oo")
    return Extended::infinity();
  const Rational r = parse_rational(t);
  if (r <= 0) throw RangeError("expected a positive value or inf, got '" + std::string(t) + "'");
  return Extended(r);
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw ParseError("non-finite number");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw ParseError("number formatting failed");
  return parse_decimal(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

std::string rational_str(const Rational& r) {
  std::string out = numerator(r).str();
  if (denominator(r) != 1) out += "/" + denominator(r).str();
  return out;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace powemb
