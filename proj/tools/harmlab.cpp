#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "harmlab/errors.hpp"
#include "harmlab/suites.hpp"

namespace {

constexpr const char* kVersion = "harmlab 1.0.0";

struct RunConfig {
  harmlab::SuiteContext ctx;
  std::vector<std::string> suites;            // ids or globs; empty = all
  std::map<std::string, double> tolerances;   // per-suite extra scale
  std::string out_path;
};

void apply_key(RunConfig& rc, const std::string& key, const nlohmann::json& v) {
  using harmlab::ConfigError;
  auto num = [&](const char* what) -> double {
    if (!v.is_number()) throw ConfigError(std::string(what) + " must be a number");
    return v.get<double>();
  };
  if (key == "seed") {
    rc.ctx.seed = std::uint64_t(num("seed"));
  } else if (key == "tol_scale") {
    rc.ctx.tol_scale = num("tol_scale");
  } else if (key == "jobs") {
    rc.ctx.jobs = int(num("jobs"));
  } else if (key == "corpus_size") {
    rc.ctx.corpus_size = int(num("corpus_size"));
  } else if (key == "max_n_heis") {
    rc.ctx.max_n_heis = int(num("max_n_heis"));
  } else if (key == "max_n_su2") {
    rc.ctx.max_n_su2 = int(num("max_n_su2"));
  } else if (key == "out") {
    rc.out_path = v.get<std::string>();
  } else if (key == "suites") {
    rc.suites.clear();
    if (v.is_array())
      for (const auto& s : v) rc.suites.push_back(s.get<std::string>());
    else
      throw ConfigError("suites must be an array of ids or globs");
  } else if (key == "quad.rel_tol") {
    rc.ctx.quad.rel_tol = num(key.c_str());
  } else if (key == "quad.abs_tol") {
    rc.ctx.quad.abs_tol = num(key.c_str());
  } else if (key == "quad.base_order") {
    rc.ctx.quad.base_order = int(num(key.c_str()));
  } else if (key == "quad.max_panels") {
    rc.ctx.quad.max_panels = int(num(key.c_str()));
  } else if (key == "quad.osc_panels_per_period") {
    rc.ctx.quad.osc_panels_per_period = int(num(key.c_str()));
  } else if (key == "quad.b_cutoff_policy") {
    std::string s = v.get<std::string>();
    if (s == "fixed")
      rc.ctx.quad.b_cutoff_policy = harmlab::QuadConfig::CutoffPolicy::Fixed;
    else if (s == "certified")
      rc.ctx.quad.b_cutoff_policy = harmlab::QuadConfig::CutoffPolicy::Certified;
    else
      throw ConfigError("quad.b_cutoff_policy must be fixed or certified");
  } else if (key == "quad.fixed_cutoff") {
    rc.ctx.quad.fixed_cutoff = num(key.c_str());
  } else if (key == "quad.target_tail") {
    rc.ctx.quad.target_tail = num(key.c_str());
  } else if (key.rfind("tolerance.", 0) == 0) {
    rc.tolerances[key.substr(10)] = num(key.c_str());
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

void load_json_config(RunConfig& rc, const nlohmann::json& j) {
  for (const auto& [key, v] : j.items()) {
    if (key == "quad" && v.is_object()) {
      for (const auto& [qk, qv] : v.items()) apply_key(rc, "quad." + qk, qv);
    } else if (key == "tolerances" && v.is_object()) {
      for (const auto& [tk, tv] : v.items())
        apply_key(rc, "tolerance." + tk, tv);
    } else {
      apply_key(rc, key, v);
    }
  }
}

void load_flat_config(RunConfig& rc, std::istream& is) {
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t eq = line.find('=');
    auto trim = [](std::string s) {
      std::size_t b = s.find_first_not_of(" \t\r");
      std::size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (eq == std::string::npos) {
      if (!trim(line).empty())
        throw harmlab::ConfigError("config line " + std::to_string(lineno) +
                                   ": expected key = value");
      continue;
    }
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "suites") {
      // comma-separated list in the flat format
      nlohmann::json arr = nlohmann::json::array();
      std::stringstream ss(val);
      std::string item;
      while (std::getline(ss, item, ',')) arr.push_back(trim(item));
      apply_key(rc, key, arr);
    } else if (key == "out" || key == "quad.b_cutoff_policy") {
      apply_key(rc, key, nlohmann::json(val));
    } else {
      try {
        apply_key(rc, key, nlohmann::json(std::stod(val)));
      } catch (const std::invalid_argument&) {
        throw harmlab::ConfigError("config key " + key +
                                   ": expected a number, got '" + val + "'");
      }
    }
  }
}

void load_config_file(RunConfig& rc, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw harmlab::ConfigError("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(is)),
                   std::istreambuf_iterator<char>());
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw harmlab::ConfigError(std::string("config JSON parse error: ") +
                                 e.what());
    }
    load_json_config(rc, j);
  } else {
    std::istringstream ss(text);
    load_flat_config(rc, ss);
  }
}

nlohmann::json config_echo(const RunConfig& rc,
                           const std::vector<const harmlab::SuiteInfo*>& sel) {
  nlohmann::json suites = nlohmann::json::array();
  for (const auto* s : sel) suites.push_back(s->id);
  nlohmann::json tols = nlohmann::json::object();
  for (const auto& [id, t] : rc.tolerances) tols[id] = t;
  const auto& q = rc.ctx.quad;
  return {
      {"seed", rc.ctx.seed},
      {"tol_scale", rc.ctx.tol_scale},
      {"corpus_size", rc.ctx.corpus_size},
      {"max_n_heis", rc.ctx.max_n_heis},
      {"max_n_su2", rc.ctx.max_n_su2},
      {"suites", std::move(suites)},
      {"tolerances", std::move(tols)},
      {"quad",
       {{"rel_tol", q.rel_tol},
        {"abs_tol", q.abs_tol},
        {"base_order", q.base_order},
        {"max_panels", q.max_panels},
        {"osc_panels_per_period", q.osc_panels_per_period},
        {"b_cutoff_policy",
         q.b_cutoff_policy == harmlab::QuadConfig::CutoffPolicy::Fixed
             ? "fixed"
             : "certified"},
        {"fixed_cutoff", q.fixed_cutoff},
        {"target_tail", q.target_tail}}},
  };
}

int run_verify(const RunConfig& rc, bool strip_timing) {
  std::vector<std::string> patterns =
      rc.suites.empty() ? std::vector<std::string>{"*"} : rc.suites;
  auto selected = harmlab::select_suites(patterns);
  harmlab::Report report;
  report.tool_version = kVersion;
  report.config_echo = config_echo(rc, selected);
  for (const auto* s : selected) {
    harmlab::SuiteContext ctx = rc.ctx;
    auto it = rc.tolerances.find(s->id);
    if (it != rc.tolerances.end()) ctx.tol_scale *= it->second;
    auto recs = s->run(ctx);
    report.records.insert(report.records.end(),
                          std::make_move_iterator(recs.begin()),
                          std::make_move_iterator(recs.end()));
  }
  std::string out = report.to_json(strip_timing).dump(2) + "\n";
  if (!rc.out_path.empty()) {
    std::ofstream os(rc.out_path);
    if (!os) throw harmlab::ConfigError("cannot write: " + rc.out_path);
    os << out;
  } else {
    std::cout << out;
  }
  std::cerr << "suites: " << selected.size() << "  checks: " << report.total()
            << "  passed: " << report.passed()
            << "  failed: " << report.total() - report.passed() << "\n";
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of explicit representation identities "
               "on the affine group, the reduced Heisenberg group, and SU(2)"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RunConfig rc;
  std::string config_path;
  bool strip_timing = false;
  bool cli_seed_set = false, cli_tol_set = false, cli_jobs_set = false,
       cli_out_set = false;
  std::uint64_t cli_seed = 0;
  double cli_tol_scale = 1.0;
  int cli_jobs = 0;
  std::string cli_out;

  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> patterns;
  verify->add_option("suites", patterns,
                     "suite ids or globs (default: all suites)");
  verify->add_option("--config", config_path,
                     "config file, JSON or flat key = value");
  verify->add_option("--seed", cli_seed, "corpus seed")
      ->trigger_on_parse()
      ->each([&](const std::string&) { cli_seed_set = true; });
  verify->add_option("--tol-scale", cli_tol_scale,
                     "multiply every tolerance by this factor")
      ->each([&](const std::string&) { cli_tol_set = true; });
  verify->add_option("--jobs", cli_jobs, "worker threads (0 = all cores)")
      ->each([&](const std::string&) { cli_jobs_set = true; });
  verify->add_option("--out", cli_out, "report path (default: stdout)")
      ->each([&](const std::string&) { cli_out_set = true; });
  verify->add_flag("--strip-timing", strip_timing,
                   "zero wall_time fields for byte-exact comparisons");

  auto* list = app.add_subcommand("list", "print available suite ids");
  std::string explain_id;
  auto* explain =
      app.add_subcommand("explain", "describe a suite and its tolerance");
  explain->add_option("id", explain_id, "suite id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      for (const auto& s : harmlab::all_suites()) std::cout << s.id << "\n";
      return 0;
    }
    if (explain->parsed()) {
      for (const auto& s : harmlab::all_suites())
        if (s.id == explain_id) {
          std::cout << s.id << "\n  " << s.description
                    << "\n  base tolerance: " << s.base_tolerance << "\n";
          return 0;
        }
      throw harmlab::ConfigError("unknown suite id: " + explain_id);
    }
    if (!config_path.empty()) load_config_file(rc, config_path);
    if (!patterns.empty()) rc.suites = patterns;
    if (cli_seed_set) rc.ctx.seed = cli_seed;
    if (cli_tol_set) rc.ctx.tol_scale = cli_tol_scale;
    if (cli_jobs_set) rc.ctx.jobs = cli_jobs;
    if (cli_out_set) rc.out_path = cli_out;
    return run_verify(rc, strip_timing);
  } catch (const harmlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
