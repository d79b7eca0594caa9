#include "powemb/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace powemb {

namespace {

Rational rational_field(const nlohmann::json& v, const char* key) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_float()) return rational_from_double(v.get<double>());
  throw ParseError(std::string("field '") + key + "' must be a number or a rational string");
}

Extended extended_field(const nlohmann::json& v, const char* key) {
  if (v.is_string()) return parse_extended(v.get<std::string>());
  const Rational r = rational_field(v, key);
  if (r <= 0) throw RangeError(std::string("field '") + key + "' must be positive");
  return Extended(r);
}

nlohmann::json rational_json(const Rational& r) {
  if (is_integer(r)) {
    const auto n = numerator(r);
    if (n <= std::numeric_limits<long long>::max() && n >= std::numeric_limits<long long>::min())
      return static_cast<long long>(n);
  }
  return rational_str(r);
}

nlohmann::json extended_json(const Extended& e) {
  if (e.is_infinite()) return "inf";
  return rational_json(e.value());
}

constexpr std::array<std::string_view, 7> violation_names = {"none",     "shifted",     "dim_index", "weight_index",
                                                              "dim_equal", "microscopic", "sharp_swap"};

void put_le(std::ostream& os, double x) {
  auto bits = std::bit_cast<std::uint64_t>(x);
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  os.write(buf, 8);
}

double get_le(std::istream& is) {
  unsigned char buf[8];
  is.read(reinterpret_cast<char*>(buf), 8);
  if (!is) throw ParseError("truncated field payload");
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | buf[i];
  return std::bit_cast<double>(bits);
}

}  // namespace

SpaceSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("space descriptor must be a JSON object");
  if (!j.contains("family")) throw ParseError("descriptor lacks 'family'");
  SpaceSpec s;
  s.family = family_from_tag(j.at("family").get<std::string>());
  s.d = j.contains("dim") ? j.at("dim").get<int>() : 1;
  if (j.contains("s")) s.s = rational_field(j.at("s"), "s");
  if (j.contains("gamma")) s.gamma = rational_field(j.at("gamma"), "gamma");
  if (s.family == Family::Holder) {
    if (!j.contains("s")) throw ParseError("Holder descriptor lacks 's'");
    s.p = Extended::infinity();
    return s;
  }
  if (!j.contains("p")) throw ParseError("descriptor lacks 'p'");
  s.p = extended_field(j.at("p"), "p");
  if (j.contains("q") && !j.at("q").is_null()) s.q = extended_field(j.at("q"), "q");
  if ((s.family == Family::Besov || s.family == Family::TriebelLizorkin) && !s.q)
    throw ParseError("B and F descriptors need 'q'");
  if (s.family != Family::Lebesgue && s.family != Family::Holder && !j.contains("s"))
    throw ParseError("descriptor lacks 's'");
  return s;
}

nlohmann::json spec_to_json(const SpaceSpec& s) {
  nlohmann::json j;
  j["family"] = std::string(family_tag(s.family));
  if (s.family != Family::Lebesgue) j["s"] = rational_json(s.s);
  if (s.family != Family::Holder) {
    j["p"] = extended_json(s.p);
    if (s.q) j["q"] = extended_json(*s.q);
    j["gamma"] = rational_json(s.gamma);
  }
  j["dim"] = s.d;
  return j;
}

nlohmann::json verdict_to_json(const Verdict& v) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& c : v.trace) {
    nlohmann::json e = {{"rule", rule_name(c.rule)}, {"note", c.note}};
    if (c.violation != Violation::None) e["violation"] = violation_names[static_cast<std::size_t>(c.violation)];
    trace.push_back(std::move(e));
  }
  return {{"outcome", outcome_name(v.outcome)}, {"trace", trace}};
}

Verdict verdict_from_json(const nlohmann::json& j) {
  Verdict v;
  const auto o = j.at("outcome").get<std::string>();
  if (o == "embeds") v.outcome = Outcome::Embeds;
  else if (o == "no") v.outcome = Outcome::DoesNotEmbed;
  else if (o == "unknown") v.outcome = Outcome::Unknown;
  else throw ParseError("unknown outcome '" + o + "'");
  for (const auto& c : j.at("trace")) {
    RuleCitation rc{rule_from_name(c.at("rule").get<std::string>()), c.at("note").get<std::string>()};
    if (c.contains("violation")) {
      const auto name = c.at("violation").get<std::string>();
      const auto it = std::find(violation_names.begin(), violation_names.end(), name);
      if (it == violation_names.end()) throw ParseError("unknown violation '" + name + "'");
      rc.violation = static_cast<Violation>(it - violation_names.begin());
    }
    v.trace.push_back(std::move(rc));
  }
  return v;
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void write_field(const std::filesystem::path& path, const Field& f, const nlohmann::json& extra) {
  const Grid& g = f.grid();
  nlohmann::json header = extra;
  header["grid"] = {{"d", g.d}, {"L", g.L}, {"N", g.N}};
  header["encoding"] = "complex128-le";
  header["count"] = g.size();
  if (f.band_limit()) header["band_limit"] = *f.band_limit();
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << header.dump() << '\n';
  for (const auto& z : f.values()) {
    put_le(os, z.real());
    put_le(os, z.imag());
  }
}

Field read_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::getline(is, line);
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad field header: ") + e.what());
  }
  const auto& gj = header.at("grid");
  const Grid g = Grid::make(gj.at("d").get<int>(), gj.at("L").get<double>(), gj.at("N").get<std::size_t>());
  std::vector<cplx> v(g.size());
  for (auto& z : v) {
    const double re = get_le(is);
    const double im = get_le(is);
    z = {re, im};
  }
  std::optional<double> band;
  if (header.contains("band_limit")) band = header.at("band_limit").get<double>();
  return Field::from_values(g, std::move(v), band);
}

void write_profile_csv(const std::filesystem::path& path, const RadialProfile& prof, std::size_t samples,
                       const std::string& config_hash) {
  if (samples < 2) throw RangeError("need at least two samples");
  const double lo = prof.eps > 0.0 ? prof.eps : std::ldexp(1.0, -20);
  const double hi = prof.upper();
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << "r,value\n";
  os << "# config_hash=" << config_hash << '\n';
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
    const double r = lo * std::pow(hi / lo, t);
    os << format_double(r) << ',' << format_double(prof(std::min(r, hi))) << '\n';
  }
}

RadialProfile read_profile_csv(const std::filesystem::path& path, int d) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::vector<double> r, v;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'r') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("profile row without comma");
    r.push_back(std::stod(line.substr(0, comma)));
    v.push_back(std::stod(line.substr(comma + 1)));
  }
  return RadialProfile::tabulated(d, std::move(r), std::move(v), 0.0, "csv");
}

}  // namespace powemb
