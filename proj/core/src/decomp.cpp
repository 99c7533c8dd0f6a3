#include "harmlab/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace harmlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

double w_isometry_check(const L2GSample& s, const QuadConfig& cfg) {
  // ||F||^2 = integral db integral |F(b,a)|^2 a^-1 da over the window
  auto norm2_direct = [&] {
    auto outer = [&](double b) -> complexd {
      auto inner = [&](double a) {
        complexd v = s.F(b, a);
        return complexd{std::norm(v) / a, 0.0};
      };
      return integrate_interval(inner, s.a_window, cfg).value;
    };
    return integrate_interval(outer, s.b_window, cfg).value.real();
  };
  // ||W F||^2 with W F(b,a) = F(b, |b| a); for each b the substituted
  // integrand lives on a_window / |b|, a different grid than above.
  auto norm2_w = [&] {
    auto outer = [&](double b) -> complexd {
      double ab = std::abs(b);
      if (ab < 1e-12) return {};
      Interval win{s.a_window.lo / ab, s.a_window.hi / ab};
      auto inner = [&](double a) {
        complexd v = s.F(b, ab * a);
        return complexd{std::norm(v) / a, 0.0};
      };
      return integrate_interval(inner, win, cfg).value;
    };
    return integrate_interval(outer, s.b_window, cfg).value.real();
  };
  double nf = std::sqrt(std::max(0.0, norm2_direct()));
  double nw = std::sqrt(std::max(0.0, norm2_w()));
  if (nf == 0.0) return nw;
  return std::abs(nw - nf) / nf;
}

FtwResult ftw_identity_check(const FuncExpr& eta, const FuncExpr& xi,
                             const std::vector<AxbElement>& samples,
                             bool mirrored, const QuadConfig& cfg) {
  FtwResult out;
  FuncExpr k_eta_bar = eta.power_weight(1.0).conjugated();
  CoeffTerm rhs_term{mirrored ? RepSign::Minus : RepSign::Plus, xi, k_eta_bar,
                     {1.0, 0.0}};
  double worst_plus = 0.0, worst_minus = 0.0;
  for (const AxbElement& g : samples) {
    // (F (x) I) W (eta (x) xi)(b,a) = integral e^{-2 pi i b t} eta(t) xi(t a) dt,
    // taken over the reflected axis in the mirrored case, where the
    // substitution t -> -t flips the phase sign.
    FuncExpr prod = eta * xi.dilated(g.a);
    double phase_sign = mirrored ? 1.0 : -1.0;
    auto f = [&](double t) {
      double ph = phase_sign * kTwoPi * g.b * t;
      return prod.eval(t) * complexd{std::cos(ph), std::sin(ph)};
    };
    complexd lhs =
        integrate_intervals(f, prod.support(), cfg, std::abs(g.b)).value;
    complexd rhs = coeff_eval(rhs_term, g, cfg);
    worst_plus = std::max(worst_plus, std::abs(lhs - rhs));
    worst_minus = std::max(worst_minus, std::abs(lhs + rhs));
  }
  if (worst_minus < worst_plus) {
    out.matched_sign = -1;
    out.max_residual = worst_minus;
  } else {
    out.matched_sign = 1;
    out.max_residual = worst_plus;
  }
  return out;
}

LambdaConvResult lambda_conv_identity_check(const FuncExpr& xi,
                                            const FuncExpr& eta,
                                            const FuncExpr& xi2,
                                            const FuncExpr& eta2,
                                            const AxbElement& x,
                                            const QuadConfig& cfg) {
  LambdaConvResult out;
  // lambda(x) (xi *_+ eta) = xi *_+ (pi_+(x) eta)
  FuncExpr eta_x = rep_apply(RepSign::Plus, x, eta);
  AlgebraElem lhs(CoeffSum::coeff(RepSign::Plus, xi, eta_x));

  AlgebraElem same(CoeffSum::coeff(RepSign::Plus, xi2, eta2));
  complexd lhs_same = l2g_inner(lhs, same, cfg).value;
  FuncExpr kx = xi.power_weight(-0.5), kx2 = xi2.power_weight(-0.5);
  complexd scal = hilbert_inner(kx, kx2);
  CoeffTerm minus_coeff{RepSign::Minus, eta.conjugated(), eta2.conjugated(),
                        {1.0, 0.0}};
  complexd rhs_same = scal * coeff_eval(minus_coeff, x, cfg);
  out.same_sign_residual = std::abs(lhs_same - rhs_same);

  AlgebraElem cross(CoeffSum::coeff(RepSign::Minus, xi2, eta2));
  out.cross_sign_abs = std::abs(l2g_inner(lhs, cross, cfg).value);
  return out;
}

double heis_translation_formula_check(const Func2D& f, int n,
                                      const HeisElement& g,
                                      const HeisElement& gp) {
  auto f_chi = [&](const HeisElement& h) {
    double ph = kTwoPi * double(n) * h.theta;
    return f.eval(h.p, h.q) * complexd{std::cos(ph), std::sin(ph)};
  };
  complexd lhs = f_chi(g.inverse() * gp);
  double ph = -kTwoPi * double(n) * g.theta +
              std::numbers::pi * double(n) * (-g.p * gp.q + gp.p * g.q) +
              kTwoPi * double(n) * gp.theta;
  complexd rhs =
      f.eval(gp.p - g.p, gp.q - g.q) * complexd{std::cos(ph), std::sin(ph)};
  return std::abs(lhs - rhs);
}

}  // namespace harmlab
