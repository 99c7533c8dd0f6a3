#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include <nlohmann/json.hpp>

#include "harmlab/axb.hpp"
#include "harmlab/corpus.hpp"
#include "harmlab/decomp.hpp"
#include "harmlab/errors.hpp"
#include "harmlab/funcexpr.hpp"
#include "harmlab/heis.hpp"
#include "harmlab/quadrature.hpp"
#include "harmlab/report.hpp"
#include "harmlab/su2.hpp"
#include "harmlab/suites.hpp"

using namespace harmlab;

namespace {

double cabs(complexd z) { return std::abs(z); }

}  // namespace

// ---------------------------------------------------------------------------
// funcexpr
// ---------------------------------------------------------------------------

TEST_CASE("bump value, support and smooth edges") {
  FuncExpr b = FuncExpr::bump(1.0, 0.5);
  CHECK(cabs(b.eval(1.0) - complexd{std::exp(-1.0), 0.0}) < 1e-15);
  CHECK(b.eval(0.49) == complexd{});
  CHECK(b.eval(1.51) == complexd{});
  CHECK(cabs(b.eval(0.5)) < 1e-300);  // flat edge
  REQUIRE(b.support().size() == 1);
  CHECK(b.support()[0].lo == doctest::Approx(0.5));
  CHECK(b.support()[0].hi == doctest::Approx(1.5));
}

TEST_CASE("analytic derivative matches central differences") {
  Corpus c(7);
  FuncExpr f = c.random_func(DomainTag::Line);
  FuncExpr df = f.derivative();
  const double h = 1e-5;
  for (double t : {0.7, 1.3, 2.1, 3.4}) {
    complexd fd = (f.eval(t + h) - f.eval(t - h)) / (2.0 * h);
    CHECK(cabs(df.eval(t) - fd) < 1e-7 * (1.0 + cabs(fd)));
  }
}

TEST_CASE("transform identities at sample points") {
  FuncExpr b = FuncExpr::bump(2.0, 1.0);
  const double t = 2.3;
  CHECK(cabs(b.shifted(0.4).eval(t) - b.eval(t - 0.4)) < 1e-15);
  CHECK(cabs(b.dilated(1.7).eval(t) - b.eval(1.7 * t)) < 1e-15);
  CHECK(cabs(b.power_weight(2.0).eval(t) - t * t * b.eval(t)) < 1e-15);
  complexd ph = std::exp(complexd{0.0, 2.0 * std::numbers::pi * 0.3 * t});
  CHECK(cabs(b.modulated(0.3).eval(t) - ph * b.eval(t)) < 1e-15);
  FuncExpr g = b.scaled({0.5, 0.25}).modulated(-0.8);
  CHECK(cabs(g.conjugated().eval(t) - std::conj(g.eval(t))) < 1e-15);
}

TEST_CASE("sum and product evaluation and supports") {
  FuncExpr a = FuncExpr::bump(1.0, 0.4), b = FuncExpr::bump(3.0, 0.4);
  FuncExpr s = a + b;
  CHECK(cabs(s.eval(1.1) - a.eval(1.1)) < 1e-15);
  CHECK(s.support().size() == 2);
  FuncExpr p = a * b;  // disjoint supports: identically zero
  CHECK(p.is_zero());
  FuncExpr q = a * a;
  CHECK(cabs(q.eval(1.2) - a.eval(1.2) * a.eval(1.2)) < 1e-15);
}

TEST_CASE("inner product norms and Cauchy-Schwarz") {
  Corpus c(11);
  FuncExpr f = c.random_func(DomainTag::HalfLine);
  FuncExpr g = c.random_func(DomainTag::HalfLine);
  double nf = norm(f, Measure::HaarHalfLine);
  double ng = norm(g, Measure::HaarHalfLine);
  complexd ip = inner_product(f, g, Measure::HaarHalfLine);
  CHECK(cabs(ip) <= nf * ng * (1.0 + 1e-10));
  complexd self = inner_product(f, f, Measure::HaarHalfLine);
  CHECK(self.real() == doctest::Approx(nf * nf).epsilon(1e-10));
  CHECK(std::abs(self.imag()) < 1e-12 * nf * nf);
  // conjugate symmetry
  complexd ip2 = inner_product(g, f, Measure::HaarHalfLine);
  CHECK(cabs(ip - std::conj(ip2)) < 1e-12 * (1.0 + cabs(ip)));
}

TEST_CASE("json round trip preserves the function") {
  Corpus c(13);
  FuncExpr f = c.random_func(DomainTag::Line).modulated(0.7).power_weight(1.0);
  FuncExpr g = FuncExpr::from_json(f.to_json());
  for (double t : {0.6, 1.2, 2.8, 3.9})
    CHECK(cabs(f.eval(t) - g.eval(t)) < 1e-15);
  CHECK(f.to_json().dump() == g.to_json().dump());
}

TEST_CASE("2d tensor sums evaluate pointwise") {
  FuncExpr a = FuncExpr::bump(1.0, 0.5), b = FuncExpr::bump(2.0, 0.5);
  Func2D f = Func2D::tensor(a, b) + Func2D::tensor(b, a).scaled({0.0, 1.0});
  complexd want = a.eval(1.1) * b.eval(2.2) +
                  complexd{0.0, 1.0} * b.eval(1.1) * a.eval(2.2);
  CHECK(cabs(f.eval(1.1, 2.2) - want) < 1e-15);
  CHECK(cabs(f.conjugated().eval(1.1, 2.2) - std::conj(f.eval(1.1, 2.2))) <
        1e-15);
}

// ---------------------------------------------------------------------------
// quadrature
// ---------------------------------------------------------------------------

TEST_CASE("gauss legendre integrates monomials exactly") {
  QuadConfig cfg;
  for (int k = 0; k <= 7; ++k) {
    auto r = integrate_interval(
        [k](double x) { return complexd{std::pow(x, k), 0.0}; }, {0.0, 1.0},
        cfg);
    CHECK(cabs(r.value - complexd{1.0 / (k + 1), 0.0}) < 1e-13);
  }
}

TEST_CASE("oscillatory integral with known zero value") {
  QuadConfig cfg;
  // integral over a full period of e^{2 pi i 5 t} is 0
  auto r = integrate_interval(
      [](double t) {
        return std::exp(complexd{0.0, 2.0 * std::numbers::pi * 5.0 * t});
      },
      {0.0, 1.0}, cfg, 5.0);
  CHECK(cabs(r.value) < 1e-12);
}

TEST_CASE("adaptive result matches a dense trapezoid oracle") {
  FuncExpr b = FuncExpr::bump(1.5, 0.9);
  QuadConfig cfg;
  auto r = integrate_intervals([&](double t) { return b.eval(t); },
                               b.support(), cfg);
  // plain trapezoid oracle on a fine uniform grid
  const int n = 200000;
  const double lo = 0.6, hi = 2.4, h = (hi - lo) / n;
  complexd acc{};
  for (int i = 1; i < n; ++i) acc += b.eval(lo + i * h);
  acc *= h;
  CHECK(cabs(r.value - acc) < 1e-10);
}

TEST_CASE("refinement monotonicity on closed-form oracles") {
  auto exact_err = [](double rel) {
    QuadConfig cfg;
    cfg.rel_tol = rel;
    cfg.abs_tol = rel * 1e-3;
    auto r = integrate_interval(
        [](double x) { return complexd{std::exp(x), 0.0}; }, {0.0, 2.0}, cfg);
    return cabs(r.value - complexd{std::exp(2.0) - 1.0, 0.0});
  };
  double prev = 1e300;
  for (double rel : {1e-3, 1e-6, 1e-9, 1e-12}) {
    double e = exact_err(rel);
    CHECK(e <= prev + 1e-14);
    prev = e;
  }
  CHECK(prev < 1e-12);
}

TEST_CASE("quadrature is deterministic") {
  FuncExpr b = FuncExpr::bump(1.0, 0.6).modulated(3.0);
  QuadConfig cfg;
  auto f = [&](double t) { return b.eval(t); };
  auto r1 = integrate_intervals(f, b.support(), cfg);
  auto r2 = integrate_intervals(f, b.support(), cfg);
  CHECK(r1.value.real() == r2.value.real());
  CHECK(r1.value.imag() == r2.value.imag());
  CHECK(r1.panels_used == r2.panels_used);
}

TEST_CASE("fourier tail bound halves exactly when the cutoff doubles") {
  FuncExpr xi = FuncExpr::bump(2.0, 0.8, DomainTag::HalfLine);
  FuncExpr eta = FuncExpr::bump(1.5, 0.6, DomainTag::HalfLine);
  double b1 = fourier_tail_bound(xi, eta, 25.0);
  double b2 = fourier_tail_bound(xi, eta, 50.0);
  CHECK(b1 > 0.0);
  CHECK(b2 == doctest::Approx(0.5 * b1).epsilon(1e-12));
}

TEST_CASE("panel budget overrun raises ToleranceError") {
  QuadConfig cfg;
  cfg.rel_tol = 1e-14;
  cfg.abs_tol = 0.0;
  cfg.max_panels = 4;
  CHECK_THROWS_AS(integrate_interval(
                      [](double x) {
                        return complexd{std::sqrt(std::abs(x - 0.123)), 0.0};
                      },
                      {0.0, 1.0}, cfg),
                  ToleranceError);
}

// ---------------------------------------------------------------------------
// ax+b group
// ---------------------------------------------------------------------------

TEST_CASE("axb group operations") {
  AxbElement g{0.7, 1.9}, h{-0.3, 0.4};
  AxbElement gh = g * h;
  CHECK(gh.b == doctest::Approx(0.7 + 1.9 * -0.3));
  CHECK(gh.a == doctest::Approx(1.9 * 0.4));
  AxbElement e = g * g.inverse();
  CHECK(e.b == doctest::Approx(0.0));
  CHECK(e.a == doctest::Approx(1.0));
}

TEST_CASE("coefficient evaluation agrees along both paths") {
  Corpus c(17);
  for (int i = 0; i < 4; ++i) {
    CoeffTerm t{i % 2 ? RepSign::Minus : RepSign::Plus,
                c.random_func(DomainTag::HalfLine),
                c.random_func(DomainTag::HalfLine),
                {1.0, 0.0}};
    AxbElement g = c.random_axb();
    complexd a = coeff_eval(t, g);
    complexd b = coeff_eval_rep_path(t, g);
    CHECK(cabs(a - b) < 1e-9 * (1.0 + cabs(b)));
  }
}

TEST_CASE("orthogonality relations against the closed form") {
  Corpus c(19);
  FuncExpr x1 = c.random_func(DomainTag::HalfLine);
  FuncExpr e1 = c.random_func(DomainTag::HalfLine);
  FuncExpr x2 = c.random_func(DomainTag::HalfLine);
  FuncExpr e2 = c.random_func(DomainTag::HalfLine);
  QuadConfig cfg;
  cfg.rel_tol = 1e-7;
  complexd scal = hilbert_inner(x1.power_weight(-0.5), x2.power_weight(-0.5)) *
                  hilbert_inner(e2, e1);
  double np = hilbert_norm(x1) * hilbert_norm(e1) * hilbert_norm(x2) *
              hilbert_norm(e2);
  for (RepSign s : {RepSign::Plus, RepSign::Minus}) {
    AlgebraElem u(CoeffSum::coeff(s, x1, e1));
    AlgebraElem w(CoeffSum::coeff(s, x2, e2));
    IntegralResult r = l2g_inner(u, w, cfg);
    CHECK(cabs(r.value - scal) < 1e-6 * np);
    CHECK(r.tail_bound > 0.0);  // a genuine truncation certificate
    CHECK(r.tail_bound < 1e-6 * np);
  }
  AlgebraElem u(CoeffSum::coeff(RepSign::Plus, x1, e1));
  AlgebraElem w(CoeffSum::coeff(RepSign::Minus, x2, e2));
  CHECK(cabs(l2g_inner(u, w, cfg).value) < 1e-8 * (1.0 + np));
}

TEST_CASE("derivation value, antisymmetry and trapezoid cross-check") {
  Corpus c(23);
  FuncExpr xi = c.random_func(DomainTag::HalfLine);
  CoeffSum u = CoeffSum::coeff(RepSign::Plus, xi, xi);
  QuadConfig cfg;
  cfg.rel_tol = 1e-9;
  double n2 = hilbert_norm(xi);
  double n4 = n2 * n2 * n2 * n2;
  AlgebraElem U(u), Uc(u.conjugated());
  complexd d1 = d_flat(U, Uc, cfg).value;
  complexd d2 = d_flat(Uc, U, cfg).value;
  CHECK(cabs(d1 - complexd{n4, 0.0}) < 1e-8 * n4);
  CHECK(cabs(d1 + d2) < 1e-9 * n4);
  // the exact b-collapse must agree with the certified trapezoid path,
  // which integrates madb(u) * conj(u) directly over the group
  QuadConfig cfg2 = cfg;
  cfg2.target_tail = 1e-10 * n4;
  complexd trap = integrate_axb(U.madb() * Uc, cfg2).value;
  CHECK(cabs(d1 - trap) < 1e-8 * n4);
}

TEST_CASE("a_norm of a rank-one coefficient is the product of norms") {
  Corpus c(29);
  FuncExpr xi = c.random_func(DomainTag::HalfLine);
  FuncExpr eta = c.random_func(DomainTag::HalfLine);
  CoeffSum u = CoeffSum::coeff(RepSign::Minus, xi, eta, {0.0, -2.0});
  CHECK(a_norm(u) ==
        doctest::Approx(2.0 * hilbert_norm(xi) * hilbert_norm(eta))
            .epsilon(1e-9));
}

TEST_CASE("madb agrees with the scaled b-derivative of the coefficient") {
  Corpus c(31);
  CoeffSum u = CoeffSum::coeff(RepSign::Plus,
                               c.random_func(DomainTag::HalfLine),
                               c.random_func(DomainTag::HalfLine));
  AxbElement g{0.35, 1.4};
  QuadConfig cfg;
  cfg.rel_tol = 1e-12;
  const double h = 1e-4;
  complexd diff = (u.eval({g.b + h, g.a}, cfg) - u.eval({g.b - h, g.a}, cfg)) /
                  (2.0 * h);
  complexd want =
      g.a * diff * complexd{0.0, 1.0 / (2.0 * std::numbers::pi)};
  CHECK(cabs(u.madb().eval(g, cfg) - want) < 1e-7 * (1.0 + cabs(want)));
}

// ---------------------------------------------------------------------------
// reduced Heisenberg group
// ---------------------------------------------------------------------------

TEST_CASE("heis group operations") {
  HeisElement g{0.3, -0.8, 0.2}, h{-0.5, 0.4, 0.9};
  HeisElement e = g * g.inverse();
  CHECK(std::abs(e.p) < 1e-15);
  CHECK(std::abs(e.q) < 1e-15);
  CHECK(std::abs(e.theta) < 1e-15);
  HeisElement a = (g * h) * g.inverse();
  HeisElement b = g * (h * g.inverse());
  CHECK(a.p == doctest::Approx(b.p));
  CHECK(a.q == doctest::Approx(b.q));
  CHECK(a.theta == doctest::Approx(b.theta));
}

TEST_CASE("schrodinger coefficient two-path agreement") {
  Corpus c(37);
  for (int n : {1, -2}) {
    SchCoeffTerm t{n, c.random_func(DomainTag::Line),
                   c.random_func(DomainTag::Line), {1.0, 0.0}};
    HeisElement g = c.random_heis();
    complexd a = sch_coeff_eval(t, g);
    complexd b = sch_coeff_eval_rep_path(t, g);
    CHECK(cabs(a - b) < 1e-9 * (1.0 + cabs(b)));
  }
}

TEST_CASE("heis square integrability and cross-n orthogonality") {
  Corpus c(41);
  FuncExpr xi = c.random_func(DomainTag::Line);
  FuncExpr eta = c.random_func(DomainTag::Line);
  QuadConfig cfg;
  HrElem u;
  u.sch_terms.push_back({2, xi, eta, {1.0, 0.0}});
  double nx = norm(xi, Measure::LebesgueLine);
  double ne = norm(eta, Measure::LebesgueLine);
  complexd got = heis_l2_inner(HeisAlgebra(u), HeisAlgebra(u), cfg).value;
  CHECK(cabs(got - complexd{nx * nx * ne * ne / 2.0, 0.0}) <
        1e-8 * nx * nx * ne * ne);
  HrElem w;
  w.sch_terms.push_back({-1, eta, xi, {1.0, 0.0}});
  CHECK(cabs(heis_l2_inner(HeisAlgebra(u), HeisAlgebra(w), cfg).value) <
        1e-10);
}

TEST_CASE("heis derivation: value, lambda0 annihilation") {
  Corpus c(43);
  FuncExpr xi = c.random_func(DomainTag::Line);
  FuncExpr eta = c.random_func(DomainTag::Line);
  QuadConfig cfg;
  HrElem u;
  u.sch_terms.push_back({3, xi, eta, {1.0, 0.0}});
  double rhs = norm(xi, Measure::LebesgueLine) * norm(eta, Measure::LebesgueLine);
  rhs *= rhs;
  complexd d =
      d_flat_heis(HeisAlgebra(u), HeisAlgebra(u.conjugated()), cfg).value;
  CHECK(std::abs(cabs(d) - rhs) < 1e-8 * rhs);
  HrElem z;
  z.zero_terms.push_back({c.random_func2d(), c.random_func2d(), {1.0, 0.0}});
  CHECK(cabs(d_flat_heis(HeisAlgebra(z), HeisAlgebra(u), cfg).value) < 1e-12);
}

TEST_CASE("heis collapse agrees with windowed haar quadrature") {
  // independent oracle: integrate |<sigma_1(p,q,0) xi, eta>|^2 over a wide
  // (p, q) window by direct 3d quadrature and compare with the collapsed
  // inner product; the q-tail outside the window is tiny for these inputs
  FuncExpr xi = FuncExpr::bump(0.4, 0.7);
  FuncExpr eta = FuncExpr::bump(-0.2, 0.6);
  QuadConfig cfg;
  cfg.rel_tol = 1e-8;
  HrElem u;
  u.sch_terms.push_back({1, xi, eta, {1.0, 0.0}});
  complexd collapsed = heis_l2_inner(HeisAlgebra(u), HeisAlgebra(u), cfg).value;
  QuadConfig loose = cfg;
  loose.rel_tol = 1e-5;
  auto f = [&](double p, double q, double) {
    complexd v = sch_coeff_eval({1, xi, eta, {1.0, 0.0}}, {p, q, 0.0}, loose);
    return v * std::conj(v);
  };
  auto oracle = integrate_heis_haar(f, {-2.0, 2.0}, {-15.0, 15.0}, 1, loose);
  CHECK(cabs(collapsed - oracle.value) < 1e-3 * cabs(collapsed));
}

// ---------------------------------------------------------------------------
// SU(2)
// ---------------------------------------------------------------------------

TEST_CASE("wigner matrices are unitary homomorphisms") {
  Corpus c(47);
  SU2Element g = c.random_su2(), h = c.random_su2();
  for (int n : {1, 3}) {
    Eigen::MatrixXcd dg = wigner_d(n, g), dh = wigner_d(n, h);
    CHECK((dg * dg.adjoint() - Eigen::MatrixXcd::Identity(n + 1, n + 1))
              .norm() < 1e-12);
    CHECK((wigner_d(n, g * h) - dg * dh).norm() < 1e-12);
  }
  // diagonal phases on the rotation subgroup
  Eigen::MatrixXcd ds = wigner_d(2, SU2Element::s_phi(0.7));
  for (int k = 0; k <= 2; ++k) {
    complexd want = std::exp(complexd{0.0, (2.0 - 2.0 * k) * 0.7 / 2.0});
    CHECK(cabs(ds(k, k) - want) < 1e-13);
  }
}

TEST_CASE("rotation generator and conjugation intertwiner") {
  int n = 3;
  Eigen::MatrixXcd f = f_pi(n);
  for (int k = 0; k <= n; ++k)
    CHECK(cabs(f(k, k) - complexd{0.0, (n - 2.0 * k) / 2.0}) < 1e-15);
  Corpus c(53);
  SU2Element g = c.random_su2();
  Eigen::MatrixXcd C = conj_intertwiner(n);
  Eigen::MatrixXcd lhs = wigner_d(n, g).conjugate();
  Eigen::MatrixXcd rhs = C * wigner_d(n, g) * C.inverse();
  CHECK((lhs - rhs).norm() < 1e-12);
}

TEST_CASE("haar quadrature normalization and schur orthogonality") {
  QuadConfig cfg;
  auto one = haar_integrate_su2(
      [](const SU2Element&) { return complexd{1.0, 0.0}; }, 0, cfg);
  CHECK(cabs(one.value - complexd{1.0, 0.0}) < 1e-13);
  Corpus c(59);
  Eigen::VectorXcd xi(3), eta(3), xi2(3), eta2(3);
  for (int k = 0; k < 3; ++k) {
    xi(k) = c.unit_disk(1.0);
    eta(k) = c.unit_disk(1.0);
    xi2(k) = c.unit_disk(1.0);
    eta2(k) = c.unit_disk(1.0);
  }
  TrigPoly u = TrigPoly::coeff(2, xi, eta), w = TrigPoly::coeff(2, xi2, eta2);
  complexd got = haar_integrate_su2(
                     [&](const SU2Element& g) {
                       return u.eval(g) * std::conj(w.eval(g));
                     },
                     4, cfg)
                     .value;
  complexd want =
      (xi2.adjoint() * xi)(0, 0) * (eta.adjoint() * eta2)(0, 0) / 3.0;
  CHECK(cabs(got - want) < 1e-10);
}

TEST_CASE("su2 derivation: distinguished value and bound") {
  QuadConfig cfg;
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(3);
  e0(0) = 1.0;
  TrigPoly f = TrigPoly::coeff(2, e0, e0);
  complexd v = d_flat_su2(f, f.conjugated(), cfg).value;
  CHECK(cabs(v - complexd{0.0, 1.0 / 3.0}) < 1e-10);
  Corpus c(61);
  TrigPoly a = c.random_trig(3, 2), b = c.random_trig(3, 2);
  double prod = a_norm_su2(a) * a_norm_su2(b);
  complexd dab = d_flat_su2(a, b, cfg).value;
  complexd dba = d_flat_su2(b, a, cfg).value;
  CHECK(cabs(dab) <= 0.5 * prod * (1.0 + 1e-9));
  CHECK(cabs(dab + dba) < 1e-10 * (1.0 + prod));
}

// ---------------------------------------------------------------------------
// decompositions
// ---------------------------------------------------------------------------

TEST_CASE("half-plane transform identity at sample points") {
  Corpus c(67);
  FuncExpr eta = c.random_func(DomainTag::HalfLine);
  FuncExpr xi = c.random_func(DomainTag::HalfLine);
  std::vector<AxbElement> pts;
  for (int i = 0; i < 5; ++i) pts.push_back(c.random_axb());
  FtwResult r = ftw_identity_check(eta, xi, pts, false);
  CHECK(r.max_residual < 1e-8);
  CHECK(r.matched_sign == 1);
}

TEST_CASE("heisenberg translation formula is exact") {
  Corpus c(71);
  Func2D f = c.random_func2d();
  CHECK(heis_translation_formula_check(f, 2, c.random_heis(),
                                       c.random_heis()) < 1e-12);
}

TEST_CASE("dilation map preserves the scale-invariant norm") {
  FuncExpr fb = FuncExpr::bump(0.5, 1.0);
  FuncExpr fa = FuncExpr::bump(1.5, 0.7, DomainTag::HalfLine);
  L2GSample s;
  s.F = [fb, fa](double b, double a) { return fb.eval(b) * fa.eval(a); };
  s.b_window = {-0.5, 1.5};
  s.a_window = {0.8, 2.2};
  CHECK(w_isometry_check(s) < 1e-8);
}

// ---------------------------------------------------------------------------
// corpus, report, suites
// ---------------------------------------------------------------------------

TEST_CASE("same seed reproduces the corpus, different seed does not") {
  Corpus a(123), b(123), c(124);
  FuncExpr fa = a.random_func(DomainTag::HalfLine);
  FuncExpr fb = b.random_func(DomainTag::HalfLine);
  FuncExpr fc = c.random_func(DomainTag::HalfLine);
  CHECK(digest(fa) == digest(fb));
  CHECK(digest(fa) != digest(fc));
  CHECK(a.random_axb().b == b.random_axb().b);
  CHECK(digest(a.random_coeff_sum(3)) == digest(b.random_coeff_sum(3)));
  CHECK(digest(a.random_hr(3, 2, true)) == digest(b.random_hr(3, 2, true)));
  CHECK(digest(a.random_trig(4, 2)) == digest(b.random_trig(4, 2)));
}

TEST_CASE("fnv1a digest is the standard one") {
  CHECK(fnv1a("") == 14695981039346656037ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
  CHECK(digest_hex("").size() == 16);
}

TEST_CASE("report json carries a consistent summary") {
  Report rep;
  rep.tool_version = "t";
  Record r1;
  r1.id = "x";
  r1.pass = true;
  r1.wall_time_ms = 5.0;
  Record r2 = r1;
  r2.pass = false;
  rep.records = {r1, r2};
  auto j = rep.to_json(true);
  CHECK(j["summary"]["total"] == 2);
  CHECK(j["summary"]["passed"] == 1);
  CHECK(j["summary"]["failed"] == 1);
  CHECK(j["records"][0]["wall_time_ms"] == 0.0);
}

TEST_CASE("suite selection by id and glob") {
  CHECK(select_suites({"axb.*"}).size() == 6);
  CHECK(select_suites({"su2.schur"}).size() == 1);
  CHECK(select_suites({"*"}).size() == all_suites().size());
  // duplicates collapse
  CHECK(select_suites({"heis.*", "heis.derivation"}).size() == 4);
  CHECK_THROWS_AS(select_suites({"nosuch.*"}), ConfigError);
}

TEST_CASE("suites registry is alphabetical and populated") {
  const auto& reg = all_suites();
  CHECK(reg.size() == 18);
  for (std::size_t i = 1; i < reg.size(); ++i)
    CHECK(reg[i - 1].id < reg[i].id);
  for (const auto& s : reg) {
    CHECK(!s.description.empty());
    CHECK(s.base_tolerance > 0.0);
  }
}

TEST_CASE("a cheap suite runs deterministically") {
  SuiteContext ctx;
  auto sel = select_suites({"su2.f_pi_bound"});
  auto r1 = run_suites(sel, ctx);
  auto r2 = run_suites(sel, ctx);
  REQUIRE(r1.size() == r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].id == r2[i].id);
    CHECK(r1[i].residual == r2[i].residual);
    CHECK(r1[i].inputs_digest == r2[i].inputs_digest);
    CHECK(r1[i].pass);
  }
}
