#pragma once

#include <functional>

#include "harmlab/funcexpr.hpp"

namespace harmlab {

struct QuadConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int base_order = 12;        // Gauss-Legendre nodes per panel
  int max_panels = 200000;
  int osc_panels_per_period = 4;

  enum class CutoffPolicy { Fixed, Certified };
  CutoffPolicy b_cutoff_policy = CutoffPolicy::Certified;
  double fixed_cutoff = 50.0;   // Fixed policy: truncate |b| at this value
  double target_tail = 1e-9;    // Certified policy: absolute tail target
};

struct IntegralResult {
  complexd value{};
  double error_estimate = 0.0;
  double tail_bound = 0.0;  // 0 when the domain is compact
  long panels_used = 0;
};

/// Nodes/weights on [-1,1], cached per order.
const std::vector<double>& gauss_legendre_nodes(int n);
const std::vector<double>& gauss_legendre_weights(int n);

/// Adaptive bisection with an embedded lower-order rule for the local error
/// estimate.  Panel ordering and the summation tree are fixed, so results are
/// reproducible bit-for-bit.  osc_freq > 0 caps the initial panel width at
/// 1/(osc_panels_per_period * osc_freq).
IntegralResult integrate_interval(const std::function<complexd(double)>& f,
                                  Interval iv, const QuadConfig& cfg,
                                  double osc_freq = 0.0);

IntegralResult integrate_intervals(const std::function<complexd(double)>& f,
                                   const Support& support,
                                   const QuadConfig& cfg,
                                   double osc_freq = 0.0);

/// integral of |f| over its support.
double l1_norm(const FuncExpr& f, const QuadConfig& cfg);

/// C_m with |F(g)(b)| <= C_m / |b|^m for the b-dependent factor
/// g_a(t) = xi(a t) conj(eta(t)) / t of an ax+b coefficient function,
/// maximized over the a-values where the factor is nonzero
/// (C_m = sup_a ||g_a^(m)||_L1 / (2 pi)^m).
double fourier_decay_constant(const FuncExpr& xi, const FuncExpr& eta,
                              int deriv_order, const QuadConfig& cfg);

/// Rigorous bound on integral_{|b|>B} |F(g_a)(b)| db via the C^2 decay
/// |F(g)(b)| <= ||g''||_L1 / (4 pi^2 b^2); monotone decreasing in B and
/// exactly halved when B doubles.
double fourier_tail_bound(const FuncExpr& xi, const FuncExpr& eta, double B);

/// integral of F(b,a) db a^-2 da over [-b_cutoff, b_cutoff] x a_support.
/// When b_bandlimit > 0 the b-integral uses an equispaced trapezoid grid with
/// step < 1/(2*b_bandlimit); for integrands whose b-Fourier transform is
/// supported in [-b_bandlimit, b_bandlimit] the only quadrature error in b is
/// the truncation tail.  tail_bound is caller-supplied and reported verbatim.
IntegralResult integrate_axb_haar(
    const std::function<complexd(double, double)>& F, Interval a_support,
    const QuadConfig& cfg, double b_cutoff, double tail_bound = 0.0,
    double b_bandlimit = 0.0);

/// integral of F(p,q,theta) dp dq dtheta with theta in [0,1) handled by an
/// n_theta-point periodic trapezoid rule.
IntegralResult integrate_heis_haar(
    const std::function<complexd(double, double, double)>& F,
    Interval p_support, Interval q_window, int n_theta, const QuadConfig& cfg);

}  // namespace harmlab
