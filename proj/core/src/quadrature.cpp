#include "harmlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace harmlab {

namespace {

constexpr double kPi = std::numbers::pi;

struct GLRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GLRule compute_gl(int n) {
  GLRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration from the Chebyshev-based initial guess.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.nodes[n - 1 - i] = x;
    r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return r;
}

const GLRule& gl_rule(int n) {
  static std::mutex mu;
  static std::map<int, GLRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
  return it->second;
}

complexd gl_panel(const std::function<complexd(double)>& f, double lo,
                  double hi, const GLRule& rule) {
  double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  complexd acc{};
  for (size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return acc * half;
}

struct KahanC {
  complexd sum{};
  complexd comp{};
  void add(complexd x) {
    complexd y = x - comp;
    complexd t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

const std::vector<double>& gauss_legendre_nodes(int n) {
  return gl_rule(n).nodes;
}

const std::vector<double>& gauss_legendre_weights(int n) {
  return gl_rule(n).weights;
}

IntegralResult integrate_interval(const std::function<complexd(double)>& f,
                                  Interval iv, const QuadConfig& cfg,
                                  double osc_freq) {
  IntegralResult res;
  if (iv.empty()) return res;
  const GLRule& hi_rule = gl_rule(cfg.base_order);
  const GLRule& lo_rule = gl_rule(std::max(4, cfg.base_order / 2));

  const double width = iv.width();
  double cap = width;
  if (osc_freq > 0.0)
    cap = std::min(cap, 1.0 / (cfg.osc_panels_per_period * osc_freq));
  int initial = std::max(1, int(std::ceil(width / cap)));

  // Coarse estimate fixes the acceptance scale for the whole run.
  double coarse_mag = 0.0;
  {
    double h = width / initial;
    KahanC coarse;
    for (int i = 0; i < initial; ++i)
      coarse.add(gl_panel(f, iv.lo + i * h, iv.lo + (i + 1) * h, lo_rule));
    coarse_mag = std::abs(coarse.sum);
  }
  const double tol = std::max(cfg.abs_tol, cfg.rel_tol * coarse_mag);

  // LIFO stack with the right half pushed first keeps accepted panels in
  // left-to-right order, which fixes the summation tree.
  std::vector<Interval> stack;
  double h = width / initial;
  for (int i = initial; i-- > 0;)
    stack.push_back({iv.lo + i * h, iv.lo + (i + 1) * h});

  KahanC acc;
  double err_acc = 0.0;
  long panels = 0;
  while (!stack.empty()) {
    Interval p = stack.back();
    stack.pop_back();
    complexd coarse_v = gl_panel(f, p.lo, p.hi, lo_rule);
    complexd fine_v = gl_panel(f, p.lo, p.hi, hi_rule);
    double err = std::abs(fine_v - coarse_v);
    double local_tol = tol * (p.width() / width);
    bool tiny = p.width() < 1e-14 * width;
    if (err <= local_tol || tiny) {
      acc.add(fine_v);
      err_acc += err;
      ++panels;
      if (panels > cfg.max_panels)
        throw ToleranceError("panel budget exceeded", std::abs(acc.sum));
    } else {
      double mid = 0.5 * (p.lo + p.hi);
      stack.push_back({mid, p.hi});
      stack.push_back({p.lo, mid});
      if (long(stack.size()) + panels > cfg.max_panels)
        throw ToleranceError("panel budget exceeded", std::abs(acc.sum));
    }
  }
  res.value = acc.sum;
  res.error_estimate = err_acc;
  res.panels_used = panels;
  return res;
}

IntegralResult integrate_intervals(const std::function<complexd(double)>& f,
                                   const Support& support,
                                   const QuadConfig& cfg, double osc_freq) {
  IntegralResult total;
  KahanC acc;
  for (const Interval& iv : support) {
    IntegralResult r = integrate_interval(f, iv, cfg, osc_freq);
    acc.add(r.value);
    total.error_estimate += r.error_estimate;
    total.panels_used += r.panels_used;
  }
  total.value = acc.sum;
  return total;
}

double l1_norm(const FuncExpr& f, const QuadConfig& cfg) {
  if (f.is_zero()) return 0.0;
  QuadConfig c = cfg;
  c.rel_tol = std::max(c.rel_tol, 1e-8);
  IntegralResult r = integrate_intervals(
      [&](double t) { return complexd{std::abs(f.eval(t)), 0.0}; },
      f.support(), c, f.max_modulation());
  return r.value.real();
}

namespace {

Interval axb_a_range(const FuncExpr& xi, const FuncExpr& eta) {
  // a-values for which t -> xi(a t) conj(eta(t)) is not identically zero
  if (xi.is_zero() || eta.is_zero()) return {1.0, 1.0};
  double xi_lo = support_min(xi.support()), xi_hi = support_max(xi.support());
  double eta_lo = support_min(eta.support()), eta_hi = support_max(eta.support());
  return {xi_lo / eta_hi, xi_hi / eta_lo};
}

}  // namespace

double fourier_decay_constant(const FuncExpr& xi, const FuncExpr& eta,
                              int deriv_order, const QuadConfig& cfg) {
  if (xi.is_zero() || eta.is_zero()) return 0.0;
  Interval a_range = axb_a_range(xi, eta);
  const int grid = 33;
  double best = 0.0;
  FuncExpr eta_conj = eta.conjugated();
  for (int i = 0; i < grid; ++i) {
    double a = a_range.lo + (a_range.hi - a_range.lo) * i / (grid - 1);
    if (a <= 0.0) continue;
    FuncExpr g = (xi.dilated(a) * eta_conj).power_weight(-1.0);
    if (g.is_zero()) continue;
    best = std::max(best, l1_norm(g.derivative(deriv_order), cfg));
  }
  // grid supremum with a small margin
  return 1.05 * best / std::pow(2.0 * kPi, deriv_order);
}

double fourier_tail_bound(const FuncExpr& xi, const FuncExpr& eta, double B) {
  QuadConfig cfg;
  double c2 = fourier_decay_constant(xi, eta, 2, cfg);
  return 2.0 * c2 / B;  // integral_{|b|>B} C2 / b^2 db
}

IntegralResult integrate_axb_haar(
    const std::function<complexd(double, double)>& F, Interval a_support,
    const QuadConfig& cfg, double b_cutoff, double tail_bound,
    double b_bandlimit) {
  IntegralResult res;
  res.tail_bound = tail_bound;
  if (a_support.empty() || b_cutoff <= 0.0) return res;

  std::function<complexd(double)> inner_of_a;
  if (b_bandlimit > 0.0) {
    const double h = 1.0 / (2.0 * b_bandlimit + 1.0);
    const long m = long(std::ceil(b_cutoff / h));
    inner_of_a = [&, h, m](double a) -> complexd {
      KahanC acc;
      for (long j = -m; j <= m; ++j) acc.add(F(j * h, a));
      return acc.sum * h / (a * a);
    };
  } else {
    inner_of_a = [&](double a) -> complexd {
      IntegralResult rb = integrate_interval(
          [&, a](double b) { return F(b, a); }, {-b_cutoff, b_cutoff}, cfg);
      return rb.value / (a * a);
    };
  }
  IntegralResult ra = integrate_interval(inner_of_a, a_support, cfg);
  res.value = ra.value;
  res.error_estimate = ra.error_estimate;
  res.panels_used = ra.panels_used;
  return res;
}

IntegralResult integrate_heis_haar(
    const std::function<complexd(double, double, double)>& F,
    Interval p_support, Interval q_window, int n_theta, const QuadConfig& cfg) {
  IntegralResult res;
  if (p_support.empty() || q_window.empty() || n_theta < 1) return res;
  auto theta_avg = [&](double p, double q) -> complexd {
    KahanC acc;
    for (int k = 0; k < n_theta; ++k) acc.add(F(p, q, double(k) / n_theta));
    return acc.sum / double(n_theta);
  };
  IntegralResult rp = integrate_interval(
      [&](double p) {
        IntegralResult rq = integrate_interval(
            [&, p](double q) { return theta_avg(p, q); }, q_window, cfg);
        return rq.value;
      },
      p_support, cfg);
  res.value = rp.value;
  res.error_estimate = rp.error_estimate;
  res.panels_used = rp.panels_used;
  return res;
}

}  // namespace harmlab
