#include "harmlab/axb.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "gram_norm.hpp"
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace harmlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double mod_sign(RepSign s) { return s == RepSign::Plus ? -1.0 : 1.0; }

/// b-dependent factor of a coefficient function at fixed a:
/// g_a(t) = xi(a t) conj(eta(t)) / t, so that value(b) = F(g_a)(-/+ b).
FuncExpr b_factor(const FuncExpr& xi, const FuncExpr& eta, double a) {
  return (xi.dilated(a) * eta.conjugated()).power_weight(-1.0);
}

Interval a_range(const FuncExpr& xi, const FuncExpr& eta) {
  double xlo = support_min(xi.support()), xhi = support_max(xi.support());
  double elo = support_min(eta.support()), ehi = support_max(eta.support());
  return {xlo / ehi, xhi / elo};
}

Interval intersect(Interval a, Interval b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
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

complexd hilbert_inner(const FuncExpr& f, const FuncExpr& g) {
  return inner_product(f, g, Measure::HaarHalfLine);
}

double hilbert_norm(const FuncExpr& f) {
  return norm(f, Measure::HaarHalfLine);
}

FuncExpr rep_apply(RepSign sign, const AxbElement& g, const FuncExpr& xi) {
  return xi.dilated(g.a).modulated(mod_sign(sign) * g.b);
}

complexd coeff_eval(const CoeffTerm& term, const AxbElement& g,
                    const QuadConfig& cfg) {
  if (term.xi.is_zero() || term.eta.is_zero()) return {};
  FuncExpr ga = b_factor(term.xi, term.eta, g.a);
  if (ga.is_zero()) return {};
  const double s = mod_sign(term.sign);
  auto f = [&](double t) {
    double ph = s * kTwoPi * g.b * t;
    return ga.eval(t) * complexd{std::cos(ph), std::sin(ph)};
  };
  double osc = std::abs(g.b) + ga.max_modulation();
  return integrate_intervals(f, ga.support(), cfg, osc).value;
}

complexd coeff_eval_rep_path(const CoeffTerm& term, const AxbElement& g,
                             const QuadConfig& cfg) {
  (void)cfg;
  return hilbert_inner(rep_apply(term.sign, g, term.xi), term.eta);
}

CoeffSum::CoeffSum(std::vector<CoeffTerm> terms) {
  for (auto& t : terms)
    if (!t.xi.is_zero() && !t.eta.is_zero() && t.weight != complexd{})
      terms_.push_back(std::move(t));
}

CoeffSum CoeffSum::coeff(RepSign sign, FuncExpr xi, FuncExpr eta,
                         complexd weight) {
  return CoeffSum({{sign, std::move(xi), std::move(eta), weight}});
}

complexd CoeffSum::eval(const AxbElement& g, const QuadConfig& cfg) const {
  complexd acc{};
  for (const auto& t : terms_) acc += t.weight * coeff_eval(t, g, cfg);
  return acc;
}

CoeffSum CoeffSum::conjugated() const {
  std::vector<CoeffTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_)
    out.push_back({t.sign == RepSign::Plus ? RepSign::Minus : RepSign::Plus,
                   t.xi.conjugated(), t.eta.conjugated(), std::conj(t.weight)});
  return CoeffSum(std::move(out));
}

CoeffSum CoeffSum::madb() const {
  std::vector<CoeffTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    double flip = t.sign == RepSign::Plus ? 1.0 : -1.0;
    out.push_back({t.sign, t.xi.power_weight(1.0), t.eta, flip * t.weight});
  }
  return CoeffSum(std::move(out));
}

CoeffSum CoeffSum::scaled(complexd c) const {
  std::vector<CoeffTerm> out = terms_;
  for (auto& t : out) t.weight *= c;
  return CoeffSum(std::move(out));
}

CoeffSum CoeffSum::operator+(const CoeffSum& o) const {
  std::vector<CoeffTerm> out = terms_;
  out.insert(out.end(), o.terms_.begin(), o.terms_.end());
  return CoeffSum(std::move(out));
}

AlgebraElem::AlgebraElem(std::vector<AlgebraTerm> terms) {
  for (auto& t : terms) {
    if (t.weight == complexd{} || t.factors.empty()) continue;
    bool dead = false;
    for (const auto& f : t.factors)
      if (f.xi.is_zero() || f.eta.is_zero()) dead = true;
    if (!dead) terms_.push_back(std::move(t));
  }
}

AlgebraElem::AlgebraElem(const CoeffSum& sum) {
  for (const auto& t : sum.terms())
    terms_.push_back({t.weight, {{t.sign, t.xi, t.eta}}});
}

complexd AlgebraElem::eval(const AxbElement& g, const QuadConfig& cfg) const {
  complexd acc{};
  for (const auto& term : terms_) {
    complexd prod = term.weight;
    for (const auto& f : term.factors)
      prod *= coeff_eval({f.sign, f.xi, f.eta, {1.0, 0.0}}, g, cfg);
    acc += prod;
  }
  return acc;
}

AlgebraElem AlgebraElem::operator+(const AlgebraElem& o) const {
  std::vector<AlgebraTerm> out = terms_;
  out.insert(out.end(), o.terms_.begin(), o.terms_.end());
  return AlgebraElem(std::move(out));
}

AlgebraElem AlgebraElem::operator*(const AlgebraElem& o) const {
  std::vector<AlgebraTerm> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& s : terms_)
    for (const auto& t : o.terms_) {
      AlgebraTerm p{s.weight * t.weight, s.factors};
      p.factors.insert(p.factors.end(), t.factors.begin(), t.factors.end());
      out.push_back(std::move(p));
    }
  return AlgebraElem(std::move(out));
}

AlgebraElem AlgebraElem::scaled(complexd c) const {
  std::vector<AlgebraTerm> out = terms_;
  for (auto& t : out) t.weight *= c;
  return AlgebraElem(std::move(out));
}

AlgebraElem AlgebraElem::conjugated() const {
  std::vector<AlgebraTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    AlgebraTerm c{std::conj(t.weight), {}};
    c.factors.reserve(t.factors.size());
    for (const auto& f : t.factors)
      c.factors.push_back(
          {f.sign == RepSign::Plus ? RepSign::Minus : RepSign::Plus,
           f.xi.conjugated(), f.eta.conjugated()});
    out.push_back(std::move(c));
  }
  return AlgebraElem(std::move(out));
}

AlgebraElem AlgebraElem::madb() const {
  std::vector<AlgebraTerm> out;
  for (const auto& t : terms_)
    for (size_t k = 0; k < t.factors.size(); ++k) {
      const auto& fk = t.factors[k];
      double flip = fk.sign == RepSign::Plus ? 1.0 : -1.0;
      AlgebraTerm d{flip * t.weight, t.factors};
      d.factors[k].xi = fk.xi.power_weight(1.0);
      out.push_back(std::move(d));
    }
  return AlgebraElem(std::move(out));
}

namespace {

// sup_a ||g_a^(m)||_L1 / (2 pi)^m, cached by the shared expression nodes.
double decay_constant_cached(const FuncExpr& xi, const FuncExpr& eta,
                             int order, const QuadConfig& cfg) {
  using Key = std::tuple<const void*, const void*, int>;
  static std::mutex mu;
  static std::map<Key, double> cache;
  Key key{xi.node_key(), eta.node_key(), order};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  QuadConfig loose = cfg;
  loose.rel_tol = 1e-6;
  double c = fourier_decay_constant(xi, eta, order, loose);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, c);
  return c;
}

struct FactorPrep {
  RepSign sign;
  FuncExpr xi, eta;
  Interval a_iv;   // a-values where the factor can be nonzero
  Interval ft_iv;  // support of the factor's b-Fourier transform
  double c2 = 0.0, c4 = 0.0;
};

// integral of one product term over the group.  The b-integral is an
// equispaced trapezoid sum (exact for the band limit carried by the term),
// truncated at a cutoff B certified by the factors' Fourier decay constants.
IntegralResult integrate_term(const AlgebraTerm& term, const QuadConfig& cfg) {
  IntegralResult res;

  std::vector<FactorPrep> fs;
  Interval a_iv{0.0, 1e300};
  Interval ft{0.0, 0.0};  // Minkowski sum of factor FT supports
  for (const auto& f : term.factors) {
    FactorPrep p{f.sign, f.xi, f.eta, a_range(f.xi, f.eta), {}, 0.0, 0.0};
    a_iv = intersect(a_iv, p.a_iv);
    double tlo = support_min(f.eta.support()), thi = support_max(f.eta.support());
    p.ft_iv = f.sign == RepSign::Plus ? Interval{-thi, -tlo} : Interval{tlo, thi};
    ft = {ft.lo + p.ft_iv.lo, ft.hi + p.ft_iv.hi};
    fs.push_back(std::move(p));
  }
  if (a_iv.empty()) return res;
  // The b-integral over the full line is the product's b-Fourier transform
  // at 0; when 0 falls outside the (compact) transform support it vanishes
  // identically, e.g. for same-sign factor pairs.
  if (ft.lo > 0.0 || ft.hi < 0.0) return res;

  const double band = std::max(std::abs(ft.lo), std::abs(ft.hi));
  const double a_mass = 1.0 / a_iv.lo - 1.0 / a_iv.hi;
  const int M_factors = int(fs.size());

  // Choose the cutoff: per factor the decay bound is min(C2/B^2, C4/B^4).
  for (auto& p : fs) {
    p.c2 = decay_constant_cached(p.xi, p.eta, 2, cfg);
    if (cfg.b_cutoff_policy == QuadConfig::CutoffPolicy::Certified)
      p.c4 = decay_constant_cached(p.xi, p.eta, 4, cfg);
  }
  auto tail_at = [&](double B) {
    double prod = 1.0;
    int mtot = 0;
    for (const auto& p : fs) {
      double k2 = p.c2 / (B * B);
      double k4 = p.c4 > 0.0 ? p.c4 / (B * B * B * B) : 1e300;
      if (k4 < k2) {
        prod *= k4;
        mtot += 4;
      } else {
        prod *= k2;
        mtot += 2;
      }
    }
    // 1.2: margin for trapezoid-sum vs integral comparison in the tail
    return 1.2 * 2.0 * prod * B / double(mtot - 1) * a_mass * std::abs(term.weight);
  };
  double B = 20.0;
  if (cfg.b_cutoff_policy == QuadConfig::CutoffPolicy::Fixed) {
    B = cfg.fixed_cutoff;
  } else {
    for (int it = 0; it < 40 && tail_at(B) > cfg.target_tail; ++it) B *= 1.5;
  }
  res.tail_bound = tail_at(B);

  const double h = 1.0 / (2.0 * band + 1.0);
  const long m = long(std::ceil(B / h));
  const long nb = 2 * m + 1;

  // F(g_a) at the trapezoid frequencies j*h, |j| <= m, via an FFT of uniform
  // t-samples.  The t-grid oversamples the largest frequency B by kOversample,
  // so by the Poisson summation formula the sampling (aliasing) error is
  // bounded by the same C2/C4 Fourier decay that certifies the b-cutoff,
  // evaluated at distance >= (kOversample - 1) * 2B: it shrinks faster than
  // the certified tail itself as B grows.
  const double kOversample = 1.75;
  long N = 64;
  while (N < long(std::ceil(kOversample * 2.0 * B / h)) || N < 2 * m + 2)
    N *= 2;
  const double dt = 1.0 / (h * double(N));  // = (2 band + 1) / N >= t-width

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> tdata(N), freq(N);
  std::vector<std::vector<complexd>> vals(fs.size());
  auto inner = [&](double a) -> complexd {
    for (size_t i = 0; i < fs.size(); ++i) {
      FuncExpr ga = b_factor(fs[i].xi, fs[i].eta, a);
      if (ga.is_zero()) return {};
      const double s = mod_sign(fs[i].sign);
      const double t0 = support_min(ga.support());
      const double t1 = support_max(ga.support());
      std::fill(tdata.begin(), tdata.end(), std::complex<double>{});
      const long last = std::min<long>(N - 1, long(std::ceil((t1 - t0) / dt)));
      for (long l = 0; l <= last; ++l) tdata[l] = ga.eval(t0 + double(l) * dt);
      fft.fwd(freq, tdata);
      auto& v = vals[i];
      v.assign(nb, complexd{});
      // sum_l g(t_l) e^{s 2 pi i h j t_l} = e^{s 2 pi i h j t0} * X_{(-s j) mod N}
      const double w0 = s * kTwoPi * h * t0;
      for (long j = -m; j <= m; ++j) {
        long idx = (s < 0.0 ? j : -j) % N;
        if (idx < 0) idx += N;
        v[j + m] = dt * complexd{std::cos(w0 * double(j)),
                                 std::sin(w0 * double(j))} *
                   freq[idx];
      }
    }
    KahanC acc;
    for (long j = 0; j < nb; ++j) {
      complexd p = vals[0][j];
      for (size_t i = 1; i < fs.size(); ++i) p *= vals[i][j];
      acc.add(p);
    }
    return acc.sum * h / (a * a);
  };

  (void)M_factors;
  IntegralResult ra = integrate_interval(inner, a_iv, cfg);
  res.value = term.weight * ra.value;
  res.error_estimate = std::abs(term.weight) * ra.error_estimate;
  res.panels_used = ra.panels_used;
  return res;
}

// Exact collapse of the b-integral: each factor is F(g_{i,a}) evaluated at
// sigma_i b (sigma = +1 for Plus, -1 for Minus), so integrating the product
// over b in R produces a delta on sum sigma_i x_i = 0.  Eliminating the last
// variable leaves a smooth compactly supported integral with no oscillation
// and no truncation tail:
//   integral_b prod_i F(g_i)(sigma_i b) db
//     = int ... int prod_{i<k} g_i(x_i) g_k(-sigma_k sum_{i<k} sigma_i x_i) dx.
// A single factor integrates to g_a(0) = 0 (supports sit away from 0).
IntegralResult integrate_term_collapsed(const AlgebraTerm& term,
                                        const QuadConfig& cfg) {
  IntegralResult res;
  Interval a_iv{0.0, 1e300};
  Interval ft{0.0, 0.0};
  std::vector<const CoeffFactor*> fs;
  for (const auto& f : term.factors) {
    a_iv = intersect(a_iv, a_range(f.xi, f.eta));
    double tlo = support_min(f.eta.support()), thi = support_max(f.eta.support());
    ft = f.sign == RepSign::Plus ? Interval{ft.lo - thi, ft.hi - tlo}
                                 : Interval{ft.lo + tlo, ft.hi + thi};
    fs.push_back(&f);
  }
  if (a_iv.empty()) return res;
  if (ft.lo > 0.0 || ft.hi < 0.0) return res;  // delta never satisfied
  const std::size_t k = fs.size();
  if (k == 1) return res;
  auto sigma = [](RepSign s) { return s == RepSign::Plus ? 1.0 : -1.0; };
  const double sk = sigma(fs[k - 1]->sign);

  auto inner_a = [&](double a) -> complexd {
    std::vector<FuncExpr> g(k);
    std::vector<Interval> hull(k);
    for (std::size_t i = 0; i < k; ++i) {
      g[i] = b_factor(fs[i]->xi, fs[i]->eta, a);
      if (g[i].is_zero()) return {};
      hull[i] = {support_min(g[i].support()), support_max(g[i].support())};
    }
    // suffix[i] = Minkowski sum of sigma_j hull_j over j in (i, k-1]; the
    // delta constraint confines sigma_i x_i to -s - suffix[i], so every
    // integration level is clipped to the region where the remaining factors
    // can still meet the constraint.  Without the clip a narrow feasible
    // window inside a wide support can slip between quadrature nodes.
    std::vector<Interval> suffix(k - 1);
    {
      Interval r{0.0, 0.0};
      for (std::size_t i = k - 1; i-- > 0;) {
        const Interval& h = hull[i + 1];
        r = sigma(fs[i + 1]->sign) > 0.0
                ? Interval{r.lo + h.lo, r.hi + h.hi}
                : Interval{r.lo - h.hi, r.hi - h.lo};
        suffix[i] = r;
      }
    }
    std::function<complexd(std::size_t, double)> level =
        [&](std::size_t i, double s) -> complexd {
      if (i == k - 1) return g[i].eval(-sk * s);
      const double si = sigma(fs[i]->sign);
      Interval t{-s - suffix[i].hi, -s - suffix[i].lo};
      Interval allow = si > 0.0 ? t : Interval{-t.hi, -t.lo};
      Support dom = support_intersection(g[i].support(), {allow});
      if (dom.empty()) return complexd{};
      auto f = [&](double x) {
        complexd gv = g[i].eval(x);
        return gv == complexd{}
                   ? complexd{}
                   : gv * level(i + 1, s + si * x);
      };
      return integrate_intervals(f, dom, cfg).value;
    };
    return level(0, 0.0) / (a * a);
  };

  // Split the a-axis where a support endpoint of xi_i / a crosses one of
  // eta_i, so the support topology of every b-factor is constant on each
  // piece, then pre-subdivide each piece so no piece-wide panel can hide a
  // localized contribution from the quadrature error estimate.
  std::vector<double> cuts{a_iv.lo, a_iv.hi};
  for (const auto* f : fs) {
    double xe[2] = {support_min(f->xi.support()), support_max(f->xi.support())};
    double ee[2] = {support_min(f->eta.support()),
                    support_max(f->eta.support())};
    for (double x : xe)
      for (double e : ee) {
        double a = x / e;
        if (a > a_iv.lo && a < a_iv.hi) cuts.push_back(a);
      }
  }
  std::sort(cuts.begin(), cuts.end());
  Support panels;
  const int sub = std::max(
      2, int(std::ceil(24.0 / double(std::max<std::size_t>(1, cuts.size() - 1)))));
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double lo = cuts[i], hi = cuts[i + 1];
    if (hi - lo < 1e-12 * a_iv.width()) continue;
    for (int j = 0; j < sub; ++j)
      panels.push_back({lo + (hi - lo) * j / sub, lo + (hi - lo) * (j + 1) / sub});
  }
  IntegralResult ra = integrate_intervals(inner_a, panels, cfg);
  res.value = term.weight * ra.value;
  res.error_estimate = std::abs(term.weight) * ra.error_estimate;
  res.panels_used = ra.panels_used;
  return res;
}

}  // namespace

IntegralResult integrate_axb(const AlgebraElem& u, const QuadConfig& cfg) {
  IntegralResult total;
  KahanC acc;
  for (const auto& term : u.terms()) {
    IntegralResult r = integrate_term(term, cfg);
    acc.add(r.value);
    total.error_estimate += r.error_estimate;
    total.tail_bound += r.tail_bound;
    total.panels_used += r.panels_used;
  }
  total.value = acc.sum;
  return total;
}

IntegralResult l2g_inner(const AlgebraElem& u, const AlgebraElem& w,
                         const QuadConfig& cfg) {
  return integrate_axb(u * w.conjugated(), cfg);
}

IntegralResult d_flat(const AlgebraElem& f, const AlgebraElem& g,
                      const QuadConfig& cfg) {
  // the b-integral collapses exactly (see integrate_term_collapsed), so the
  // truncation tail is identically zero
  AlgebraElem prod = f.madb() * g;
  IntegralResult total;
  KahanC acc;
  for (const auto& term : prod.terms()) {
    IntegralResult r = integrate_term_collapsed(term, cfg);
    acc.add(r.value);
    total.error_estimate += r.error_estimate;
    total.panels_used += r.panels_used;
  }
  total.value = acc.sum;
  return total;
}

namespace {

double sign_block_trace_norm(const std::vector<CoeffTerm>& ts) {
  if (ts.empty()) return 0.0;
  const int n = int(ts.size());
  Eigen::MatrixXcd gx(n, n), ge(n, n);
  Eigen::VectorXcd w(n);
  for (int i = 0; i < n; ++i) {
    w[i] = ts[i].weight;
    for (int j = 0; j <= i; ++j) {
      gx(i, j) = hilbert_inner(ts[i].xi, ts[j].xi);
      gx(j, i) = std::conj(gx(i, j));
      ge(i, j) = hilbert_inner(ts[i].eta, ts[j].eta);
      ge(j, i) = std::conj(ge(i, j));
    }
  }
  return detail::gram_trace_norm(gx, ge, w);
}

}  // namespace

double a_norm(const CoeffSum& u) {
  std::vector<CoeffTerm> plus, minus;
  for (const auto& t : u.terms())
    (t.sign == RepSign::Plus ? plus : minus).push_back(t);
  return sign_block_trace_norm(plus) + sign_block_trace_norm(minus);
}

DerivationResiduals derivation_residuals(const CoeffSum& f, const CoeffSum& g,
                                         const CoeffSum& h,
                                         const QuadConfig& cfg) {
  AlgebraElem F(f), G(g), H(h);
  DerivationResiduals out;
  complexd dfg = d_flat(F, G, cfg).value;
  complexd dgf = d_flat(G, F, cfg).value;
  out.antisym = std::abs(dfg + dgf);
  out.key_margin = a_norm(f) * a_norm(g) - std::abs(dfg);
  complexd lhs = d_flat(F * G, H, cfg).value;
  complexd rhs = d_flat(G, H * F, cfg).value + d_flat(F, G * H, cfg).value;
  out.leibniz = std::abs(lhs - rhs);
  return out;
}

}  // namespace harmlab
