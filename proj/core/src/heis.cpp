#include "harmlab/heis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "gram_norm.hpp"

namespace harmlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap01(double x) {
  double y = x - std::floor(x);
  return y == 1.0 ? 0.0 : y;
}

complexd unit(double turns) {
  double ph = kTwoPi * turns;
  return {std::cos(ph), std::sin(ph)};
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

Interval intersect(Interval a, Interval b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

/// x -> xi(x - p/2) conj(eta(x + p/2)); the coefficient of sigma_n is
/// e^{2 pi i n theta} F(H_p)(n q).
FuncExpr window_product(const FuncExpr& xi, const FuncExpr& eta, double p) {
  return xi.shifted(0.5 * p) * eta.shifted(-0.5 * p).conjugated();
}

Interval sch_p_range(const FuncExpr& xi, const FuncExpr& eta) {
  double xlo = support_min(xi.support()), xhi = support_max(xi.support());
  double elo = support_min(eta.support()), ehi = support_max(eta.support());
  return {elo - xhi, ehi - xlo};
}

}  // namespace

HeisElement HeisElement::operator*(const HeisElement& o) const {
  return {p + o.p, q + o.q, wrap01(theta + o.theta + 0.5 * (p * o.q - q * o.p))};
}

HeisElement HeisElement::inverse() const {
  return {-p, -q, wrap01(-theta)};
}

FuncExpr sch_apply(int n, const HeisElement& g, const FuncExpr& xi) {
  if (n == 0) throw DomainError("sigma_n requires n != 0");
  return xi.shifted(g.p)
      .modulated(-double(n) * g.q)
      .scaled(unit(double(n) * (g.theta + 0.5 * g.q * g.p)));
}

complexd sch_coeff_eval(const SchCoeffTerm& term, const HeisElement& g,
                        const QuadConfig& cfg) {
  if (term.n == 0) throw DomainError("sigma_n requires n != 0");
  if (term.xi.is_zero() || term.eta.is_zero()) return {};
  FuncExpr H = window_product(term.xi, term.eta, g.p);
  if (H.is_zero()) return {};
  const double s = double(term.n) * g.q;
  auto f = [&](double x) {
    double ph = -kTwoPi * s * x;
    return H.eval(x) * complexd{std::cos(ph), std::sin(ph)};
  };
  double osc = std::abs(s) + H.max_modulation();
  complexd ft = integrate_intervals(f, H.support(), cfg, osc).value;
  return unit(double(term.n) * g.theta) * ft;
}

complexd sch_coeff_eval_rep_path(const SchCoeffTerm& term, const HeisElement& g,
                                 const QuadConfig& cfg) {
  (void)cfg;
  return inner_product(sch_apply(term.n, g, term.xi), term.eta,
                       Measure::LebesgueLine);
}

complexd lambda0_coeff_eval(const Lambda0CoeffTerm& term, const HeisElement& g,
                            const QuadConfig& cfg) {
  (void)cfg;
  complexd acc{};
  for (const auto& ti : term.xi.terms())
    for (const auto& tj : term.eta.terms()) {
      complexd cx = inner_product(ti.fx.shifted(g.p), tj.fx,
                                  Measure::LebesgueLine);
      if (cx == complexd{}) continue;
      complexd cy = inner_product(ti.fy.shifted(g.q), tj.fy,
                                  Measure::LebesgueLine);
      acc += cx * cy;
    }
  return acc;
}

complexd HrElem::eval(const HeisElement& g, const QuadConfig& cfg) const {
  complexd acc{};
  for (const auto& t : sch_terms) acc += t.weight * sch_coeff_eval(t, g, cfg);
  for (const auto& t : zero_terms)
    acc += t.weight * lambda0_coeff_eval(t, g, cfg);
  return acc;
}

HrElem HrElem::conjugated() const {
  HrElem out;
  for (const auto& t : sch_terms)
    out.sch_terms.push_back({-t.n, t.xi.conjugated(), t.eta.conjugated(),
                             std::conj(t.weight)});
  for (const auto& t : zero_terms)
    out.zero_terms.push_back(
        {t.xi.conjugated(), t.eta.conjugated(), std::conj(t.weight)});
  return out;
}

HrElem HrElem::dtheta() const {
  HrElem out;
  for (const auto& t : sch_terms) {
    SchCoeffTerm d = t;
    d.weight *= double(t.n);
    out.sch_terms.push_back(std::move(d));
  }
  return out;
}

HrElem HrElem::scaled(complexd c) const {
  HrElem out = *this;
  for (auto& t : out.sch_terms) t.weight *= c;
  for (auto& t : out.zero_terms) t.weight *= c;
  return out;
}

HrElem HrElem::operator+(const HrElem& o) const {
  HrElem out = *this;
  out.sch_terms.insert(out.sch_terms.end(), o.sch_terms.begin(),
                       o.sch_terms.end());
  out.zero_terms.insert(out.zero_terms.end(), o.zero_terms.begin(),
                        o.zero_terms.end());
  return out;
}

HeisAlgebra::HeisAlgebra(std::vector<HeisTerm> terms) {
  for (auto& t : terms) {
    if (t.weight == complexd{} || t.factors.empty()) continue;
    bool dead = false;
    for (const auto& f : t.factors) {
      if (f.is_sch ? (f.xi.is_zero() || f.eta.is_zero())
                   : (f.xi2.is_zero() || f.eta2.is_zero()))
        dead = true;
    }
    if (!dead) terms_.push_back(std::move(t));
  }
}

HeisAlgebra::HeisAlgebra(const HrElem& v) {
  for (const auto& t : v.sch_terms) {
    HeisFactor f;
    f.is_sch = true;
    f.n = t.n;
    f.xi = t.xi;
    f.eta = t.eta;
    if (!t.xi.is_zero() && !t.eta.is_zero() && t.weight != complexd{})
      terms_.push_back({t.weight, {std::move(f)}});
  }
  for (const auto& t : v.zero_terms) {
    HeisFactor f;
    f.is_sch = false;
    f.xi2 = t.xi;
    f.eta2 = t.eta;
    if (!t.xi.is_zero() && !t.eta.is_zero() && t.weight != complexd{})
      terms_.push_back({t.weight, {std::move(f)}});
  }
}

complexd HeisAlgebra::eval(const HeisElement& g, const QuadConfig& cfg) const {
  complexd acc{};
  for (const auto& term : terms_) {
    complexd prod = term.weight;
    for (const auto& f : term.factors)
      prod *= f.is_sch
                  ? sch_coeff_eval({f.n, f.xi, f.eta, {1.0, 0.0}}, g, cfg)
                  : lambda0_coeff_eval({f.xi2, f.eta2, {1.0, 0.0}}, g, cfg);
    acc += prod;
  }
  return acc;
}

HeisAlgebra HeisAlgebra::operator+(const HeisAlgebra& o) const {
  std::vector<HeisTerm> out = terms_;
  out.insert(out.end(), o.terms_.begin(), o.terms_.end());
  return HeisAlgebra(std::move(out));
}

HeisAlgebra HeisAlgebra::operator*(const HeisAlgebra& o) const {
  std::vector<HeisTerm> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& s : terms_)
    for (const auto& t : o.terms_) {
      HeisTerm p{s.weight * t.weight, s.factors};
      p.factors.insert(p.factors.end(), t.factors.begin(), t.factors.end());
      out.push_back(std::move(p));
    }
  return HeisAlgebra(std::move(out));
}

HeisAlgebra HeisAlgebra::scaled(complexd c) const {
  std::vector<HeisTerm> out = terms_;
  for (auto& t : out) t.weight *= c;
  return HeisAlgebra(std::move(out));
}

HeisAlgebra HeisAlgebra::conjugated() const {
  std::vector<HeisTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    HeisTerm c{std::conj(t.weight), {}};
    c.factors.reserve(t.factors.size());
    for (const auto& f : t.factors) {
      HeisFactor cf = f;
      if (f.is_sch) {
        cf.n = -f.n;
        cf.xi = f.xi.conjugated();
        cf.eta = f.eta.conjugated();
      } else {
        cf.xi2 = f.xi2.conjugated();
        cf.eta2 = f.eta2.conjugated();
      }
      c.factors.push_back(std::move(cf));
    }
    out.push_back(std::move(c));
  }
  return HeisAlgebra(std::move(out));
}

HeisAlgebra HeisAlgebra::dtheta() const {
  // Leibniz collapses: every sch factor contributes its own n times the
  // untouched product, so the term is just scaled by the net frequency.
  std::vector<HeisTerm> out;
  for (const auto& t : terms_) {
    int nu = 0;
    for (const auto& f : t.factors)
      if (f.is_sch) nu += f.n;
    if (nu == 0) continue;
    HeisTerm d = t;
    d.weight *= double(nu);
    out.push_back(std::move(d));
  }
  return HeisAlgebra(std::move(out));
}

namespace {

Interval l0_p_range(const Func2D& xi, const Func2D& eta) {
  Support sx = xi.support_x(), ex = eta.support_x();
  return {support_min(ex) - support_max(sx), support_max(ex) - support_min(sx)};
}

Interval l0_q_range(const Func2D& xi, const Func2D& eta) {
  Support sy = xi.support_y(), ey = eta.support_y();
  return {support_min(ey) - support_max(sy), support_max(ey) - support_min(sy)};
}

IntegralResult integrate_heis_term(const HeisTerm& term,
                                   const QuadConfig& cfg) {
  IntegralResult res;

  // theta-average: each sigma_n factor carries e^{2 pi i n theta}; the
  // periodic trapezoid sum of the product is the Kronecker delta on the net
  // frequency (the rule is exact on trigonometric polynomials below its
  // degree, and the sum of nontrivial roots of unity collapses).
  int nu = 0;
  for (const auto& f : term.factors)
    if (f.is_sch) nu += f.n;
  if (nu != 0) return res;

  Interval p_iv{-1e300, 1e300};
  bool has_l0 = false;
  Interval q_iv{-1e300, 1e300};
  for (const auto& f : term.factors) {
    if (f.is_sch) {
      p_iv = intersect(p_iv, sch_p_range(f.xi, f.eta));
    } else {
      has_l0 = true;
      p_iv = intersect(p_iv, l0_p_range(f.xi2, f.eta2));
      q_iv = intersect(q_iv, l0_q_range(f.xi2, f.eta2));
    }
  }
  if (p_iv.empty()) return res;

  if (has_l0) {
    if (q_iv.empty()) return res;
    double q_osc = 0.0;
    for (const auto& f : term.factors)
      if (f.is_sch) {
        Interval pr = sch_p_range(f.xi, f.eta);
        double xa = std::max(std::abs(support_min(f.eta.support())) +
                                 0.5 * std::max(std::abs(pr.lo), std::abs(pr.hi)),
                             std::abs(support_max(f.eta.support())) +
                                 0.5 * std::max(std::abs(pr.lo), std::abs(pr.hi)));
        q_osc += std::abs(double(f.n)) * xa;
      }
    HeisElement g;
    auto inner_q = [&](double p, double q) -> complexd {
      g = {p, q, 0.0};
      complexd prod{1.0, 0.0};
      for (const auto& f : term.factors) {
        prod *= f.is_sch
                    ? sch_coeff_eval({f.n, f.xi, f.eta, {1.0, 0.0}}, g, cfg)
                    : lambda0_coeff_eval({f.xi2, f.eta2, {1.0, 0.0}}, g, cfg);
        if (prod == complexd{}) break;
      }
      return prod;
    };
    IntegralResult rp = integrate_interval(
        [&](double p) {
          return integrate_interval(
                     [&, p](double q) { return inner_q(p, q); }, q_iv, cfg,
                     q_osc)
              .value;
        },
        p_iv, cfg);
    res.value = term.weight * rp.value;
    res.error_estimate = std::abs(term.weight) * rp.error_estimate;
    res.panels_used = rp.panels_used;
    return res;
  }

  // Pure Schrodinger products: each factor is the Fourier transform of its
  // compactly supported window at n_i q, so the q-integral over R collapses
  // by Plancherel to a delta on sum n_i x_i = 0.  Eliminating the last
  // variable leaves a smooth compactly supported integral with no
  // oscillation and no truncation tail:
  //   integral_q prod_i F(H_i)(n_i q) dq
  //     = (1/|n_k|) int ... int prod_{i<k} H_i(x_i)
  //                            H_k(-(sum_{i<k} n_i x_i)/n_k) dx.
  std::vector<const HeisFactor*> fs;
  for (const auto& f : term.factors) fs.push_back(&f);
  const std::size_t k = fs.size();
  const double nk = double(fs[k - 1]->n);

  auto inner_p = [&](double p) -> complexd {
    std::vector<FuncExpr> H(k);
    std::vector<Interval> hull(k);
    for (std::size_t i = 0; i < k; ++i) {
      H[i] = window_product(fs[i]->xi, fs[i]->eta, p);
      if (H[i].is_zero()) return {};
      hull[i] = {support_min(H[i].support()), support_max(H[i].support())};
    }
    // suffix[i] = Minkowski sum of n_j hull_j over j in (i, k-1]; the delta
    // constraint confines n_i x_i to -s - suffix[i].  Clipping each level to
    // that window keeps a narrow feasible region from slipping between the
    // quadrature nodes of a wide panel.
    std::vector<Interval> suffix(k - 1);
    {
      Interval r{0.0, 0.0};
      for (std::size_t i = k - 1; i-- > 0;) {
        const Interval& h = hull[i + 1];
        const double nj = double(fs[i + 1]->n);
        r = nj > 0.0 ? Interval{r.lo + nj * h.lo, r.hi + nj * h.hi}
                     : Interval{r.lo + nj * h.hi, r.hi + nj * h.lo};
        suffix[i] = r;
      }
    }
    std::function<complexd(std::size_t, double)> level =
        [&](std::size_t i, double s) -> complexd {
      if (i == k - 1) return H[i].eval(-s / nk);
      const double ni = double(fs[i]->n);
      Interval t{(-s - suffix[i].hi) / ni, (-s - suffix[i].lo) / ni};
      if (ni < 0.0) t = {t.hi, t.lo};
      Support dom = support_intersection(H[i].support(), {t});
      if (dom.empty()) return complexd{};
      auto f = [&](double x) {
        complexd hv = H[i].eval(x);
        return hv == complexd{} ? complexd{}
                                : hv * level(i + 1, s + ni * x);
      };
      return integrate_intervals(f, dom, cfg).value;
    };
    return level(0, 0.0) / std::abs(nk);
  };

  // pre-subdivide p so a localized feasible window cannot hide inside a
  // panel-wide error estimate
  Support p_panels;
  {
    const int sub = 24;
    for (int j = 0; j < sub; ++j)
      p_panels.push_back({p_iv.lo + p_iv.width() * j / sub,
                          p_iv.lo + p_iv.width() * (j + 1) / sub});
  }
  IntegralResult rp = integrate_intervals(inner_p, p_panels, cfg);
  res.value = term.weight * rp.value;
  res.error_estimate = std::abs(term.weight) * rp.error_estimate;
  res.panels_used = rp.panels_used;
  return res;
}

}  // namespace

IntegralResult integrate_heis(const HeisAlgebra& u, const QuadConfig& cfg) {
  IntegralResult total;
  KahanC acc;
  for (const auto& term : u.terms()) {
    IntegralResult r = integrate_heis_term(term, cfg);
    acc.add(r.value);
    total.error_estimate += r.error_estimate;
    total.tail_bound += r.tail_bound;
    total.panels_used += r.panels_used;
  }
  total.value = acc.sum;
  return total;
}

IntegralResult heis_l2_inner(const HeisAlgebra& u, const HeisAlgebra& w,
                             const QuadConfig& cfg) {
  return integrate_heis(u * w.conjugated(), cfg);
}

IntegralResult d_flat_heis(const HeisAlgebra& f, const HeisAlgebra& g,
                           const QuadConfig& cfg) {
  return integrate_heis(f.dtheta() * g, cfg);
}

HeisNorm a_norm_heis(const HrElem& u) {
  HeisNorm out;
  std::map<int, std::vector<const SchCoeffTerm*>> blocks;
  for (const auto& t : u.sch_terms)
    if (!t.xi.is_zero() && !t.eta.is_zero()) blocks[t.n].push_back(&t);
  for (const auto& [n, ts] : blocks) {
    (void)n;
    const int k = int(ts.size());
    Eigen::MatrixXcd gx(k, k), ge(k, k);
    Eigen::VectorXcd w(k);
    for (int i = 0; i < k; ++i) {
      w[i] = ts[i]->weight;
      for (int j = 0; j <= i; ++j) {
        gx(i, j) = inner_product(ts[i]->xi, ts[j]->xi, Measure::LebesgueLine);
        gx(j, i) = std::conj(gx(i, j));
        ge(i, j) = inner_product(ts[i]->eta, ts[j]->eta, Measure::LebesgueLine);
        ge(j, i) = std::conj(ge(i, j));
      }
    }
    out.value += detail::gram_trace_norm(gx, ge, w);
  }
  for (const auto& t : u.zero_terms) {
    if (t.xi.is_zero() || t.eta.is_zero()) continue;
    out.value += std::abs(t.weight) * norm(t.xi) * norm(t.eta);
    out.exact = false;
  }
  return out;
}

double key_estimate_heis(const HrElem& v, const HrElem& w,
                         const QuadConfig& cfg) {
  double prod = a_norm_heis(v).value * a_norm_heis(w).value;
  complexd d = d_flat_heis(HeisAlgebra(v), HeisAlgebra(w), cfg).value;
  return prod - std::abs(d);
}

}  // namespace harmlab
