// Acceptance gate: one pass/fail line per criterion.  Each criterion runs the
// relevant verification suites with the default context and checks that every
// record passes, that the advertised corpus sizes and tolerances are in force,
// and (criterion 9) that runs are deterministic, exit codes follow the
// contract, and refinement is monotone.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "harmlab/quadrature.hpp"
#include "harmlab/report.hpp"
#include "harmlab/suites.hpp"

using namespace harmlab;

namespace {

int g_failures = 0;

std::vector<Record> run(const std::string& id) {
  SuiteContext ctx;  // defaults: seed 1, tol_scale 1, corpus_size 20
  return run_suites(select_suites({id}), ctx);
}

int count_prefix(const std::vector<Record>& recs, const std::string& prefix) {
  int k = 0;
  for (const auto& r : recs)
    if (r.id.rfind(prefix, 0) == 0) ++k;
  return k;
}

int count_contains(const std::vector<Record>& recs, const std::string& piece) {
  int k = 0;
  for (const auto& r : recs)
    if (r.id.find(piece) != std::string::npos) ++k;
  return k;
}

bool all_pass(const std::vector<Record>& recs, std::string& why) {
  for (const auto& r : recs)
    if (!r.pass) {
      char buf[256];
      std::snprintf(buf, sizeof(buf), "%s residual %.3e > tol %.3e",
                    r.id.c_str(), r.residual, r.tolerance);
      why = buf;
      return false;
    }
  return true;
}

void criterion(int num, const std::string& title,
               const std::function<bool(std::string&)>& body) {
  std::string why;
  bool ok = false;
  try {
    ok = body(why);
  } catch (const std::exception& e) {
    why = std::string("exception: ") + e.what();
  }
  std::cout << "criterion " << num << " [" << (ok ? "PASS" : "FAIL") << "] "
            << title;
  if (!ok) std::cout << " -- " << why;
  std::cout << "\n" << std::flush;
  if (!ok) ++g_failures;
}

bool expect(bool cond, const std::string& msg, std::string& why) {
  if (!cond && why.empty()) why = msg;
  return cond;
}

}  // namespace

int main() {
  // 1. Orthogonality relations on the affine group: 20 random quadruples,
  //    both signs agree with the closed form, cross-sign inner products
  //    vanish, and every oscillatory integral carries a truncation
  //    certificate below 1e-8 times the norm product.
  criterion(1, "affine orthogonality relations with certified tails",
            [](std::string& why) {
              auto recs = run("axb.orthogonality");
              bool ok = all_pass(recs, why);
              ok &= expect(int(recs.size()) == 60,
                           "expected 60 records (20 quadruples x 3)", why);
              ok &= expect(count_contains(recs, "/pp") == 20 &&
                               count_contains(recs, "/mm") == 20 &&
                               count_contains(recs, "/pm") == 20,
                           "missing sign combinations", why);
              // zero tail is legitimate only for structurally zero integrals
              // (disjoint supports or opposite-sign spectra); every nonzero
              // value must carry a positive truncation certificate
              int certified = 0;
              for (const auto& r : recs) {
                if (r.tail_bound > 0.0)
                  ++certified;
                else
                  ok &= expect(std::abs(r.lhs) == 0.0,
                               "nonzero integral without a truncation "
                               "certificate: " + r.id,
                               why);
              }
              ok &= expect(certified >= 20,
                           "too few certified oscillatory integrals", why);
              return ok;
            });

  // 2. The weighted derivative formula: the analytic operator matches a
  //    five-point central difference of the coefficient at 50 random pairs.
  criterion(2, "derivative formula vs central differences (50 pairs)",
            [](std::string& why) {
              auto recs = run("axb.deriv_formula");
              bool ok = all_pass(recs, why);
              ok &= expect(int(recs.size()) == 50, "expected 50 records", why);
              return ok;
            });

  // 3. The key estimate |D_flat(f,g)| <= ||f||_A ||g||_A on 200 random pairs
  //    with antisymmetry, and tightness: the bound is attained (value
  //    ||xi||^4) on rank-one pairs.
  criterion(3, "key derivation estimate, antisymmetry, and tightness",
            [](std::string& why) {
              auto key = run("axb.key_estimate");
              bool ok = all_pass(key, why);
              ok &= expect(int(key.size()) == 400,
                           "expected 400 records (200 pairs x 2)", why);
              ok &= expect(count_contains(key, "/margin") == 200 &&
                               count_contains(key, "/antisym") == 200,
                           "missing margin/antisym records", why);
              auto tight = run("axb.nonvanishing");
              ok &= all_pass(tight, why);
              ok &= expect(count_contains(tight, "/value") == 20 &&
                               count_contains(tight, "/tight") == 20,
                           "expected 20 value + 20 tightness records", why);
              return ok;
            });

  // 4. The Leibniz rule D_flat(fg,h) = D_flat(g,hf) + D_flat(f,gh) on 50
  //    random triples; every product in them is a genuine two-factor
  //    coefficient product.
  criterion(4, "Leibniz rule on 50 triples with two-factor products",
            [](std::string& why) {
              auto recs = run("axb.leibniz");
              bool ok = all_pass(recs, why);
              ok &= expect(int(recs.size()) == 50, "expected 50 records", why);
              return ok;
            });

  // 5. Heisenberg square integrability: the norm identity with the 1/|n|
  //    factor for n in {+-1,+-2,+-3}, 20 random pairs each, and cross-n
  //    orthogonality below 1e-8.
  criterion(5, "Heisenberg square integrability and cross-n orthogonality",
            [](std::string& why) {
              auto recs = run("heis.square_integrability");
              bool ok = all_pass(recs, why);
              ok &= expect(int(recs.size()) == 140,
                           "expected 120 norm + 20 cross records", why);
              for (int n : {1, 2, 3, -1, -2, -3})
                ok &= expect(
                    count_contains(recs, "/norm/n" + std::to_string(n) + "/") ==
                        20,
                    "expected 20 records at n = " + std::to_string(n), why);
              ok &= expect(count_contains(recs, "/cross/") == 20,
                           "expected 20 cross-n records", why);
              for (const auto& r : recs)
                if (r.id.find("/cross/") != std::string::npos)
                  ok &= expect(r.tolerance <= 1e-8,
                               "cross-n tolerance looser than 1e-8", why);
              return ok;
            });

  // 6. The Heisenberg derivation: the exact value on rank-one pairs, the
  //    vanishing of the lambda_0 (abelian) contribution to 1e-10, and the
  //    bound |D_flat(v,w)| <= ||v||_A ||w||_A on 100 random pairs.
  criterion(6, "Heisenberg derivation value, lambda_0 vanishing, and bound",
            [](std::string& why) {
              auto recs = run("heis.derivation");
              bool ok = all_pass(recs, why);
              ok &= expect(count_contains(recs, "/value/") == 15,
                           "expected 15 value records", why);
              ok &= expect(count_contains(recs, "/lambda0_zero/") == 5,
                           "expected 5 lambda_0 records", why);
              ok &= expect(count_contains(recs, "/key/") == 100,
                           "expected 100 bound records", why);
              for (const auto& r : recs)
                if (r.id.find("/lambda0_zero/") != std::string::npos)
                  ok &= expect(r.tolerance <= 1e-10,
                               "lambda_0 tolerance looser than 1e-10", why);
              return ok;
            });

  // 7. SU(2): Schur orthogonality to 1e-8 for all degree pairs n,m <= 4, the
  //    n/(2n+2) multiplier norm to 1e-12, the 1/2-weighted bound with
  //    antisymmetry on 200 pairs, and the distinguished value i/3.
  criterion(7, "SU(2) Schur, multiplier norm, bound, and i/3 value",
            [](std::string& why) {
              auto schur = run("su2.schur");
              bool ok = all_pass(schur, why);
              ok &= expect(int(schur.size()) == 25,
                           "expected 25 Schur records (n,m <= 4)", why);
              auto fpi = run("su2.f_pi_bound");
              ok &= all_pass(fpi, why);
              for (const auto& r : fpi)
                ok &= expect(r.tolerance <= 1e-12,
                             "multiplier-norm tolerance looser than 1e-12",
                             why);
              auto key = run("su2.key_estimate");
              ok &= all_pass(key, why);
              ok &= expect(count_contains(key, "/margin") == 200 &&
                               count_contains(key, "/antisym") == 200,
                           "expected 200 margin + 200 antisym records", why);
              auto nv = run("su2.nonvanishing");
              ok &= all_pass(nv, why);
              ok &= expect(count_prefix(nv, "su2.nonvanishing/e0") == 1,
                           "missing the distinguished i/3 record", why);
              return ok;
            });

  // 8. Decompositions: the half-plane transform identity and the translated
  //    orthogonality relation hold to 1e-5 at 10 sample points per draw, the
  //    Heisenberg translation formula is exact to 1e-10, and the identity
  //    point ties the translated relation back to plain orthogonality.
  criterion(8, "transform identities and translation formulas",
            [](std::string& why) {
              auto ftw = run("decomp.ftw_identity");
              bool ok = all_pass(ftw, why);
              ok &= expect(int(ftw.size()) == 20,
                           "expected 20 transform records", why);
              auto lam = run("decomp.lambda_translation");
              ok &= all_pass(lam, why);
              ok &= expect(
                  count_prefix(lam, "decomp.lambda_translation/9/") == 2,
                  "missing the identity-point records", why);
              auto ht = run("decomp.heis_translation");
              ok &= all_pass(ht, why);
              for (const auto& r : ht)
                ok &= expect(r.tolerance <= 1e-10,
                             "translation tolerance looser than 1e-10", why);
              return ok;
            });

  // 9. Determinism and contract: identical contexts give byte-identical
  //    stripped reports, a changed seed changes them, the CLI exit codes are
  //    0/1/2 for pass/fail/config error, tightening the tolerance never
  //    worsens the quadrature error on a closed-form integral, and the
  //    truncation bound halves when the cutoff doubles.
  criterion(9, "determinism, exit codes, and refinement monotonicity",
            [](std::string& why) {
              SuiteContext ctx;
              auto sel = select_suites({"su2.f_pi_bound", "su2.nonvanishing",
                                        "su2.schur"});
              Report r1, r2;
              r1.records = run_suites(sel, ctx);
              r2.records = run_suites(sel, ctx);
              bool ok = expect(
                  r1.to_json(true).dump() == r2.to_json(true).dump(),
                  "repeat run is not byte-identical", why);
              SuiteContext ctx2 = ctx;
              ctx2.seed = 2;
              Report r3;
              r3.records = run_suites(sel, ctx2);
              ok &= expect(r1.to_json(true).dump() != r3.to_json(true).dump(),
                           "changing the seed did not change the report", why);

              auto sh = [](const std::string& args) {
                std::string cmd = std::string(HARMLAB_BIN) + " " + args +
                                  " > /dev/null 2>&1";
                int rc = std::system(cmd.c_str());
                return rc == -1 ? -1 : WEXITSTATUS(rc);
              };
              ok &= expect(sh("verify su2.f_pi_bound") == 0,
                           "exit code for a passing run is not 0", why);
              ok &= expect(sh("verify su2.schur --tol-scale 1e-30") == 1,
                           "exit code for a failing check is not 1", why);
              ok &= expect(sh("verify nosuch.suite") == 2,
                           "exit code for a config error is not 2", why);

              // refinement monotonicity on a closed form: int_0^2 e^x dx
              const double exact = std::exp(2.0) - 1.0;
              double prev = 1e300;
              for (double rel : {1e-3, 1e-6, 1e-9, 1e-12}) {
                QuadConfig q;
                q.rel_tol = rel;
                q.abs_tol = 1e-15;
                double got = integrate_interval(
                                 [](double x) {
                                   return complexd{std::exp(x), 0.0};
                                 },
                                 Interval{0.0, 2.0}, q)
                                 .value.real();
                double err = std::abs(got - exact);
                ok &= expect(err <= prev * (1.0 + 1e-12) + 1e-15,
                             "refinement increased the quadrature error", why);
                prev = err;
              }
              FuncExpr f = FuncExpr::bump(1.0, 0.5);
              double b50 = fourier_tail_bound(f, f, 50.0);
              double b25 = fourier_tail_bound(f, f, 25.0);
              ok &= expect(b50 > 0.0 &&
                               std::abs(b50 - 0.5 * b25) <= 1e-12 * b25,
                           "tail bound does not halve with the cutoff", why);
              return ok;
            });

  std::cout << (g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL")
            << " (" << (9 - g_failures) << "/9 criteria)\n";
  return g_failures == 0 ? 0 : 1;
}
