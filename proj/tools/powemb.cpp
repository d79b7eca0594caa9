// Command-line front end: decide, lattice, witness, verify.

#include "powemb/io.hpp"
#include "powemb/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace powemb;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitVerifyFailed = 3;
constexpr int kExitInternal = 70;

double num(const std::string& text) { return to_double(parse_rational(text)); }

std::vector<double> num_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(num(item));
  if (out.empty()) throw ParseError("empty list '" + text + "'");
  return out;
}

// "3..7" or "3,4,5".
std::vector<int> int_range(const std::string& text) {
  std::vector<int> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int a = std::stoi(text.substr(0, dots));
    const int b = std::stoi(text.substr(dots + 2));
    if (b < a) throw ParseError("empty range '" + text + "'");
    for (int i = a; i <= b; ++i) out.push_back(i);
    return out;
  }
  for (double x : num_list(text)) out.push_back(static_cast<int>(x));
  return out;
}

Grid parse_grid(const std::string& text) {
  const auto v = num_list(text);
  if (v.size() != 3) throw ParseError("--grid expects d,L,N");
  return Grid::make(static_cast<int>(v[0]), v[1], static_cast<std::size_t>(v[2]));
}

Grid default_grid(int d) { return d == 1 ? Grid::make(1, 16.0, 1u << 14) : Grid::make(2, 16.0, 512); }

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

json read_json_file(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot read " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_json_text(ss.str());
}

// A descriptor given inline or as @file.
SpaceSpec spec_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return spec_from_json(read_json_file(arg.substr(1)));
  return spec_from_json(parse_json_text(arg));
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

std::string config_hash(const json& config) { return hex64(fnv1a(config.dump())); }

// ---------------------------------------------------------------- decide

int cmd_decide(const std::string& src, const std::string& tgt) {
  const Verdict v = decide(spec_arg(src), spec_arg(tgt));
  std::cout << verdict_to_json(v).dump(2) << '\n';
  switch (v.outcome) {
    case Outcome::Embeds: return 0;
    case Outcome::DoesNotEmbed: return 1;
    case Outcome::Unknown: return 2;
  }
  return kExitInternal;
}

// ---------------------------------------------------------------- lattice

int cmd_lattice(const std::string& file, const fs::path& out) {
  const json list = read_json_file(file);
  if (!list.is_array()) throw ParseError("lattice input must be a JSON array of descriptors");
  std::vector<SpaceSpec> specs;
  for (const auto& j : list) specs.push_back(spec_from_json(j));
  for (const auto& s : specs)
    if (s.d != specs.front().d) throw RangeError("all descriptors in a lattice must share the dimension");
  const EmbeddingMatrix m = embedding_matrix(specs);

  json report;
  report["config_hash"] = config_hash(list);
  report["specs"] = json::array();
  for (const auto& s : specs) report["specs"].push_back(spec_to_json(s));
  report["cells"] = json::array();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < specs.size(); ++j) {
      const auto& c = m.cells[i][j];
      row.push_back(c.verdict ? verdict_to_json(*c.verdict) : json{{"error", c.diagnostic}});
    }
    report["cells"].push_back(row);
  }
  report["transitivity_violations"] = json::array();
  for (const auto& v : m.violations) report["transitivity_violations"].push_back({v.a, v.b, v.c});

  std::ostringstream table;
  for (std::size_t i = 0; i < specs.size(); ++i) table << '[' << i << "] " << describe(specs[i]) << '\n';
  table << "    ";
  for (std::size_t j = 0; j < specs.size(); ++j) table << ' ' << std::setw(3) << j;
  table << '\n';
  for (std::size_t i = 0; i < specs.size(); ++i) {
    table << std::setw(3) << i << ' ';
    for (std::size_t j = 0; j < specs.size(); ++j) {
      const auto& c = m.cells[i][j];
      const char* mark = !c.verdict ? "!" : c.verdict->embeds() ? "Y" : c.verdict->fails() ? "." : "?";
      table << ' ' << std::setw(3) << mark;
    }
    table << '\n';
  }
  table << "transitivity audit: " << m.violations.size() << " violation(s)\n";
  report["table"] = table.str();

  std::cout << table.str();
  if (!out.empty()) {
    fs::create_directories(out);
    write_text(out / "lattice.json", report.dump(2) + "\n");
  } else {
    std::cout << report.dump(2) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- witness

struct WitnessArgs {
  std::string kind;
  std::string p = "2", gamma = "0", j = "0", n = "3..7";
  std::string t = "1,1/2,1/4,1/8", lambda = "4,8,16,32,64";
  std::string width = "1", base = "gaussian";
  std::string coeffs = "1,1", s0 = "1", p0 = "2", gamma0 = "0", p1 = "3/2";
  std::string a = "1/2", b = "1", eps = "0";
  bool printed = false;
};

int cmd_witness(const WitnessArgs& w, const std::optional<Grid>& grid_opt, std::uint64_t seed, const fs::path& out) {
  const WitnessKind kind = witness_kind_from_name(w.kind);
  const fs::path dir = out.empty() ? fs::path("witness_" + w.kind) : out;
  json config = {{"kind", w.kind}, {"seed", seed}};
  const Grid g = grid_opt ? *grid_opt : default_grid(1);
  if (kind != WitnessKind::LogSingularity && kind != WitnessKind::RieszLog)
    config["grid"] = {{"d", g.d}, {"L", g.L}, {"N", g.N}};

  std::optional<WitnessFamily> fam;
  std::optional<Field> single;
  std::optional<RadialProfile> profile;
  switch (kind) {
    case WitnessKind::SpectralPeak:
      config.update({{"p", w.p}, {"gamma", w.gamma}, {"j", w.j}, {"n", w.n}});
      fam = spectral_peaks(*dyadic_for(g), int_range(w.n), static_cast<int>(num(w.j)));
      break;
    case WitnessKind::Dilation: {
      config.update({{"t", w.t}, {"base", w.base}, {"width", w.width}});
      const SpectralBase base = w.base == "random" ? random_base(g.d, seed) : gaussian_base(g.d, num(w.width));
      fam = dilation_family(base, g, num_list(w.t));
      break;
    }
    case WitnessKind::Translation:
      config.update({{"lambda", w.lambda}, {"width", w.width}});
      fam = translation_family(gaussian_base(g.d, num(w.width)).sample(g), num_list(w.lambda));
      break;
    case WitnessKind::LacunarySum:
      config.update({{"coeffs", w.coeffs}, {"s0", w.s0}, {"p0", w.p0}, {"gamma0", w.gamma0}});
      single = lacunary_sum(*dyadic_for(g), num_list(w.coeffs), num(w.s0), num(w.p0), num(w.gamma0));
      break;
    case WitnessKind::LogSingularity:
      config.update({{"p0", w.p0}, {"gamma0", w.gamma0}, {"p1", w.p1}, {"eps", w.eps}, {"printed", w.printed},
                     {"d", g.d}});
      profile = log_singularity(num(w.p0), num(w.gamma0), num(w.p1), g.d, num(w.eps), w.printed);
      break;
    case WitnessKind::RieszLog:
      config.update({{"a", w.a}, {"b", w.b}, {"eps", w.eps}, {"d", g.d}});
      profile = riesz_log(num(w.a), num(w.b), g.d, num(w.eps));
      break;
  }

  const std::string hash = config_hash(config);
  fs::create_directories(dir);
  json manifest = {{"config", config}, {"config_hash", hash}, {"files", json::array()}};
  if (fam) {
    manifest["family"] = fam->manifest();
    const bool measure = kind == WitnessKind::SpectralPeak;
    for (std::size_t i = 0; i < fam->size(); ++i) {
      const auto m = fam->member(i);
      const std::string name = "member_" + std::to_string(i) + ".field";
      json extra = {{"config_hash", hash}, {"parameter", m.parameter}, {"params", m.params}};
      if (measure) extra["weighted_lp"] = format_double(weighted_lp(m.field(), num(w.p), num(w.gamma)));
      write_field(dir / name, m.field(), extra);
      manifest["files"].push_back({{"file", name}, {"parameter", m.parameter}});
    }
  } else if (single) {
    write_field(dir / "lacunary.field", *single, {{"config_hash", hash}});
    manifest["files"].push_back({{"file", "lacunary.field"}});
  } else {
    write_profile_csv(dir / "profile.csv", *profile, 512, hash);
    manifest["profile"] = {{"a", profile->a}, {"b", profile->b}, {"R0", profile->R0}, {"eps", profile->eps}};
    manifest["files"].push_back({{"file", "profile.csv"}});
  }
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
  std::cout << "wrote " << manifest["files"].size() << " file(s) and manifest.json to " << dir.string() << '\n';
  return 0;
}

// ---------------------------------------------------------------- verify

struct CatalogEntry {
  std::string type;
  std::string help;
};

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c = {
      {"criterion", "acceptance criterion {\"id\": 1..9}"},
      {"peak_scaling", "{\"p\",\"gamma\",\"j\",\"n\":[lo,hi],\"tolerance\"}, slope d-(d+gamma)/p"},
      {"translation_scaling", "{\"p\",\"gamma\",\"lambda\":[...],\"width\",\"tolerance\"}, slope gamma/p"},
      {"nikolskij", "{\"p0\",\"gamma0\",\"p1\",\"gamma1\",\"alpha\",\"t\":[...],\"factor\"} on a random base"},
      {"demonstrate", "{\"src\",\"tgt\"} descriptors of a negative verdict"},
      {"bounded", "{\"src\",\"tgt\"} descriptors of a positive verdict"},
  };
  return c;
}

json default_config(std::uint64_t seed) {
  json c = {{"seed", seed}, {"experiments", json::array()}};
  for (int i = 1; i <= kCriterionCount; ++i) c["experiments"].push_back({{"type", "criterion"}, {"id", i}});
  return c;
}

double jnum(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return INFINITY;
    return num(s);
  }
  return v.get<double>();
}

std::vector<double> jlist(const json& j, const char* key, std::vector<double> fallback) {
  if (!j.contains(key)) return fallback;
  std::vector<double> out;
  for (const auto& v : j.at(key)) out.push_back(v.is_string() ? num(v.get<std::string>()) : v.get<double>());
  return out;
}

struct Outcome1 {
  std::string name;
  bool pass = false;
  std::string line;
  std::vector<ExperimentReport> reports;
  json extra;
};

Outcome1 run_experiment(const json& e, const std::optional<Grid>& grid_opt, std::uint64_t seed) {
  Outcome1 o;
  const std::string type = e.value("type", "");
  const Grid g = e.contains("grid") ? Grid::make(e["grid"].at("d"), e["grid"].at("L"), e["grid"].at("N"))
                 : grid_opt        ? *grid_opt
                                   : default_grid(1);
  if (type == "criterion") {
    const int id = e.at("id").get<int>();
    o.name = "criterion_" + std::to_string(id);
    auto r = run_criterion(id, seed);
    o.pass = r.pass;
    o.line = r.title;
    o.extra = {{"details", r.details}, {"seconds", r.seconds}};
    o.reports = std::move(r.reports);
    return o;
  }
  if (type == "peak_scaling") {
    const auto n = e.contains("n") ? e["n"].get<std::vector<int>>() : std::vector<int>{3, 7};
    std::vector<int> ns;
    for (int k = n.at(0); k <= n.at(1); ++k) ns.push_back(k);
    o.reports.push_back(check_peak_scaling(g, jnum(e, "p", 2), jnum(e, "gamma", 0),
                                           static_cast<int>(jnum(e, "j", 0)), ns, jnum(e, "tolerance", 0.02)));
  } else if (type == "translation_scaling") {
    const Field base = gaussian_base(g.d, jnum(e, "width", 2)).sample(g);
    o.reports.push_back(check_translation_scaling(base, jnum(e, "p", 2), jnum(e, "gamma", 0),
                                                  jlist(e, "lambda", {4, 8, 16, 32, 64}),
                                                  jnum(e, "tolerance", 0.05)));
  } else if (type == "nikolskij") {
    const int a = static_cast<int>(jnum(e, "alpha", 0));
    o.reports.push_back(check_nikolskij(random_base(g.d, seed), g, jnum(e, "p0", 2), jnum(e, "gamma0", 0),
                                        jnum(e, "p1", 4), jnum(e, "gamma1", 0), {a, 0},
                                        jlist(e, "t", {1, 2, 4, 8, 16}), jnum(e, "factor", 10)));
  } else if (type == "demonstrate") {
    DemoOptions opt;
    opt.seed = seed;
    o.reports.push_back(demonstrate_failure(spec_from_json(e.at("src")), spec_from_json(e.at("tgt")), opt));
  } else if (type == "bounded") {
    DemoOptions opt;
    opt.seed = seed;
    o.reports = check_embeds_bounded(spec_from_json(e.at("src")), spec_from_json(e.at("tgt")), opt);
  } else {
    throw ParseError("unknown experiment type '" + type + "'");
  }
  o.name = e.value("name", type);
  o.pass = true;
  for (auto& r : o.reports) {
    r.seed = seed;
    o.pass = o.pass && r.pass;
  }
  o.line = o.reports.front().summary();
  return o;
}

int cmd_verify(const std::string& config_file, bool list, const std::optional<Grid>& grid_opt, std::uint64_t seed,
               bool seed_given, int jobs, const fs::path& out) {
  if (list) {
    for (const auto& c : catalog()) std::cout << c.type << "  " << c.help << '\n';
    return 0;
  }
  json config = config_file.empty() ? default_config(seed) : read_json_file(config_file);
  if (!config.is_object() || !config.contains("experiments") || !config["experiments"].is_array())
    throw ParseError("config must be an object with an 'experiments' array");
  if (seed_given || !config.contains("seed")) config["seed"] = seed;
  seed = config["seed"].get<std::uint64_t>();
  if (grid_opt) config["grid"] = {{"d", grid_opt->d}, {"L", grid_opt->L}, {"N", grid_opt->N}};
  const std::optional<Grid> grid =
      config.contains("grid")
          ? std::optional<Grid>(Grid::make(config["grid"].at("d"), config["grid"].at("L"), config["grid"].at("N")))
          : std::nullopt;
  const std::string hash = config_hash(config);
  const fs::path dir = out.empty() ? fs::path("powemb_out") : out;
  fs::create_directories(dir);

  const auto& exps = config["experiments"];
  const int n = static_cast<int>(exps.size());
  std::vector<Outcome1> results(static_cast<std::size_t>(n));
  std::vector<std::string> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, jobs))
  for (int i = 0; i < n; ++i) {
    try {
      results[static_cast<std::size_t>(i)] = run_experiment(exps[static_cast<std::size_t>(i)], grid, seed);
    } catch (const std::exception& ex) {
      errors[static_cast<std::size_t>(i)] = ex.what();
    }
  }

  int failed = 0;
  json summary = {{"config", config}, {"config_hash", hash}, {"experiments", json::array()}};
  for (int i = 0; i < n; ++i) {
    const auto& r = results[static_cast<std::size_t>(i)];
    const auto& err = errors[static_cast<std::size_t>(i)];
    const std::string stem = std::to_string(i + 1) + "_" + (r.name.empty() ? std::string("experiment") : r.name);
    json entry = {{"index", i + 1}, {"name", r.name}};
    if (!err.empty()) {
      ++failed;
      entry["status"] = "error";
      entry["error"] = err;
      std::cout << "[" << (i + 1) << "] ERROR " << err << '\n';
    } else {
      if (!r.pass) ++failed;
      entry["status"] = r.pass ? "pass" : "fail";
      json doc = {{"name", r.name}, {"pass", r.pass}, {"config_hash", hash}, {"reports", json::array()}};
      if (!r.extra.is_null()) doc.update(r.extra);
      std::string csv;
      for (const auto& rep : r.reports) {
        doc["reports"].push_back(rep.to_json());
        csv += rep.csv(hash);
      }
      write_text(dir / (stem + ".json"), doc.dump(2) + "\n");
      if (!r.reports.empty()) write_text(dir / (stem + ".csv"), csv);
      std::cout << "[" << (i + 1) << "] " << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.line << '\n';
    }
    summary["experiments"].push_back(entry);
  }
  summary["failed"] = failed;
  write_text(dir / "summary.json", summary.dump(2) + "\n");
  std::cout << (n - failed) << " of " << n << " experiments passed; reports in " << dir.string() << '\n';
  return failed == 0 ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Embeddings of power-weighted Besov, Triebel-Lizorkin, Bessel-potential and Sobolev spaces"};
  app.require_subcommand(1);
  std::string out_flag, grid_text;
  std::uint64_t seed = 1;
  int jobs = 1;
  app.add_option("--out", out_flag, "output directory (POWEMB_OUT overrides)");
  app.add_option("--jobs", jobs, "experiments run concurrently")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  app.add_option("--grid", grid_text, "grid as d,L,N");

  std::string src, tgt;
  auto* decide_cmd = app.add_subcommand("decide", "decide one embedding; exit 0 embeds, 1 no, 2 unknown");
  decide_cmd->add_option("src", src, "source descriptor (JSON or @file)")->required();
  decide_cmd->add_option("tgt", tgt, "target descriptor (JSON or @file)")->required();

  std::string specs_file;
  auto* lattice_cmd = app.add_subcommand("lattice", "embedding matrix of a list of descriptors");
  lattice_cmd->add_option("specs", specs_file, "JSON array of descriptors")->required();

  WitnessArgs w;
  auto* witness_cmd = app.add_subcommand("witness", "write a witness family with its manifest");
  witness_cmd->add_option("kind", w.kind, "dilation|translation|peaks|lacunary|logsing|rieszlog")->required();
  witness_cmd->add_option("--p", w.p);
  witness_cmd->add_option("--gamma", w.gamma);
  witness_cmd->add_option("--j", w.j);
  witness_cmd->add_option("--n", w.n, "range such as 3..7");
  witness_cmd->add_option("--t", w.t, "comma-separated dilation factors");
  witness_cmd->add_option("--lambda", w.lambda, "comma-separated shifts");
  witness_cmd->add_option("--width", w.width, "Gaussian width of the base");
  witness_cmd->add_option("--base", w.base, "gaussian or random");
  witness_cmd->add_option("--coeffs", w.coeffs, "lacunary coefficients a_j");
  witness_cmd->add_option("--s0", w.s0);
  witness_cmd->add_option("--p0", w.p0);
  witness_cmd->add_option("--gamma0", w.gamma0);
  witness_cmd->add_option("--p1", w.p1);
  witness_cmd->add_option("--a", w.a);
  witness_cmd->add_option("--b", w.b);
  witness_cmd->add_option("--eps", w.eps);
  witness_cmd->add_flag("--printed", w.printed, "use the unweighted exponent d/p0");

  std::string config_file;
  bool list = false;
  auto* verify_cmd = app.add_subcommand("verify", "run an experiment suite (default: the acceptance criteria)");
  verify_cmd->add_option("config", config_file, "RunConfig JSON");
  verify_cmd->add_flag("--list", list, "print the experiment catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  fs::path out = out_flag;
  if (const char* env = std::getenv("POWEMB_OUT"); env && *env) out = env;

  try {
    std::optional<Grid> grid;
    if (!grid_text.empty()) grid = parse_grid(grid_text);
    if (*decide_cmd) return cmd_decide(src, tgt);
    if (*lattice_cmd) return cmd_lattice(specs_file, out);
    if (*witness_cmd) return cmd_witness(w, grid, seed, out);
    if (*verify_cmd) return cmd_verify(config_file, list, grid, seed, seed_opt->count() > 0, jobs, out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
