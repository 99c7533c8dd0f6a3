// End-to-end tests of the harmlab executable: exit codes, report shape,
// determinism, and the list/explain subcommands.  The binary path comes in
// through the HARMLAB_BIN compile definition.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& stem) {
  return std::string("cli_test_") + stem + ".tmp";
}

RunResult run(const std::string& args, const std::string& tag) {
  std::string out = temp_path(tag);
  std::string cmd =
      std::string(HARMLAB_BIN) + " " + args + " > " + out + " 2>&1";
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = rc == -1 ? -1 : WEXITSTATUS(rc);
  r.out = slurp(out);
  std::remove(out.c_str());
  return r;
}

}  // namespace

TEST_CASE("verify: all-pass run exits 0 and writes a valid report") {
  std::string rep = temp_path("rep0");
  RunResult r = run("verify su2.f_pi_bound su2.schur --out " + rep, "v0");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(slurp(rep));
  std::remove(rep.c_str());
  CHECK(j["summary"]["failed"] == 0);
  CHECK(j["summary"]["total"] == j["records"].size());
  CHECK(j["config"]["seed"] == 1);
  for (const auto& rec : j["records"]) {
    CHECK(rec["pass"] == true);
    CHECK(rec["residual"].get<double>() <= rec["tolerance"].get<double>());
    CHECK(!rec["inputs_digest"].get<std::string>().empty());
  }
}

TEST_CASE("verify: a failing check exits 1") {
  // an absurd tolerance scale turns real (tiny) residuals into failures
  RunResult r = run("verify su2.schur --tol-scale 1e-30 --out " +
                        temp_path("rep1"),
                    "v1");
  CHECK(r.exit_code == 1);
  std::remove(temp_path("rep1").c_str());
}

TEST_CASE("verify: unknown suite pattern exits 2") {
  RunResult r = run("verify nosuch.suite", "v2");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("nosuch.suite") != std::string::npos);
}

TEST_CASE("config file: json and flat forms, bad input exits 2") {
  std::string cfg = temp_path("cfg");
  {
    std::ofstream os(cfg);
    os << "{\"seed\": 9, \"suites\": [\"su2.f_pi_bound\"]}\n";
  }
  std::string rep = temp_path("repj");
  RunResult r = run("verify --config " + cfg + " --out " + rep, "c0");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(slurp(rep));
  CHECK(j["config"]["seed"] == 9);
  {
    std::ofstream os(cfg);
    os << "# flat form\nseed = 9\nsuites = su2.f_pi_bound\n"
          "quad.rel_tol = 1e-9\n";
  }
  RunResult r2 = run("verify --config " + cfg + " --out " + rep, "c1");
  CHECK(r2.exit_code == 0);
  auto j2 = nlohmann::json::parse(slurp(rep));
  CHECK(j2["config"]["seed"] == 9);
  CHECK(j2["config"]["quad"]["rel_tol"] == 1e-9);
  {
    std::ofstream os(cfg);
    os << "no_such_key = 1\n";
  }
  CHECK(run("verify --config " + cfg, "c2").exit_code == 2);
  {
    std::ofstream os(cfg);
    os << "{ broken json\n";
  }
  CHECK(run("verify --config " + cfg, "c3").exit_code == 2);
  std::remove(cfg.c_str());
  std::remove(rep.c_str());
}

TEST_CASE("determinism: identical configs give byte-identical reports") {
  const std::string suites = "su2.f_pi_bound su2.schur su2.nonvanishing";
  std::string r1 = temp_path("det1"), r2 = temp_path("det2");
  CHECK(run("verify " + suites + " --seed 5 --strip-timing --out " + r1, "d1")
            .exit_code == 0);
  CHECK(run("verify " + suites + " --seed 5 --strip-timing --out " + r2, "d2")
            .exit_code == 0);
  std::string a = slurp(r1), b = slurp(r2);
  CHECK(!a.empty());
  CHECK(a == b);
  // a different seed must change the seeded records
  std::string r3 = temp_path("det3");
  CHECK(run("verify " + suites + " --seed 6 --strip-timing --out " + r3, "d3")
            .exit_code == 0);
  CHECK(slurp(r3) != a);
  std::remove(r1.c_str());
  std::remove(r2.c_str());
  std::remove(r3.c_str());
}

TEST_CASE("list prints every suite id") {
  RunResult r = run("list", "l0");
  CHECK(r.exit_code == 0);
  for (const char* id :
       {"axb.orthogonality", "heis.derivation", "su2.schur",
        "decomp.w_isometry"})
    CHECK(r.out.find(id) != std::string::npos);
}

TEST_CASE("explain prints the identity and its tolerance") {
  RunResult r = run("explain su2.schur", "e0");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("Schur") != std::string::npos);
  CHECK(r.out.find("tolerance") != std::string::npos);
  CHECK(run("explain nosuch.id", "e1").exit_code == 2);
}
