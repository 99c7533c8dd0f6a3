#include "harmlab/funcexpr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <variant>

#include <nlohmann/json.hpp>

#include "harmlab/quadrature.hpp"

namespace harmlab {

using json = nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Real polynomial helpers, coefficients in increasing degree.
using RPoly = std::vector<double>;

RPoly padd(const RPoly& a, const RPoly& b) {
  RPoly r(std::max(a.size(), b.size()), 0.0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

RPoly pmul(const RPoly& a, const RPoly& b) {
  if (a.empty() || b.empty()) return {};
  RPoly r(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

RPoly pderiv(const RPoly& a) {
  if (a.size() <= 1) return {};
  RPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * double(i);
  return r;
}

RPoly pscale(const RPoly& a, double c) {
  RPoly r = a;
  for (double& x : r) x *= c;
  return r;
}

double peval(const RPoly& a, double u) {
  double v = 0.0;
  for (size_t i = a.size(); i-- > 0;) v = v * u + a[i];
  return v;
}

}  // namespace

Support merge_support(Support s) {
  std::erase_if(s, [](const Interval& iv) { return iv.empty(); });
  std::sort(s.begin(), s.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  Support out;
  for (const Interval& iv : s) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

Support support_union(const Support& a, const Support& b) {
  Support s = a;
  s.insert(s.end(), b.begin(), b.end());
  return merge_support(std::move(s));
}

Support support_intersection(const Support& a, const Support& b) {
  Support out;
  for (const Interval& x : a)
    for (const Interval& y : b) {
      Interval iv{std::max(x.lo, y.lo), std::min(x.hi, y.hi)};
      if (!iv.empty()) out.push_back(iv);
    }
  return merge_support(std::move(out));
}

double support_min(const Support& s) {
  return s.empty() ? 0.0 : s.front().lo;
}

double support_max(const Support& s) {
  return s.empty() ? 0.0 : s.back().hi;
}

double support_length(const Support& s) {
  double len = 0.0;
  for (const Interval& iv : s) len += iv.width();
  return len;
}

namespace {

struct BumpRatN {
  double c;
  double r;
  RPoly num;      // polynomial in u = (t-c)/r
  int denom_pow;  // value = exp(-1/(1-u^2)) * num(u) / (1-u^2)^denom_pow
};
struct PolyN {
  std::vector<complexd> coeffs;
  Interval window;
};
struct SumN {
  std::vector<FuncExpr> kids;
};
struct ProductN {
  std::vector<FuncExpr> kids;
};
struct ScaleN {
  complexd c;
  FuncExpr f;
};
struct ShiftN {
  double s;
  FuncExpr f;
};
struct DilateN {
  double a;
  FuncExpr f;
};
struct PowerWeightN {
  double alpha;
  FuncExpr f;
};
struct ModulateN {
  double omega;
  FuncExpr f;
};
struct ConjN {
  FuncExpr f;
};

using NodeVar = std::variant<BumpRatN, PolyN, SumN, ProductN, ScaleN, ShiftN,
                             DilateN, PowerWeightN, ModulateN, ConjN>;

}  // namespace

struct FuncExpr::Node {
  NodeVar v;
  DomainTag tag;
  Support supp;
};

namespace {

bool in_support(const Support& s, double t) {
  for (const Interval& iv : s) {
    if (t < iv.lo) return false;
    if (t <= iv.hi) return true;
  }
  return false;
}

FuncExpr make_node(NodeVar v, DomainTag tag, Support supp) {
  if (tag == DomainTag::HalfLine && !supp.empty() && support_min(supp) <= 0.0)
    throw DomainError("half-line function with support touching 0");
  auto n = std::make_shared<FuncExpr::Node>(
      FuncExpr::Node{std::move(v), tag, std::move(supp)});
  return FuncExpr(std::move(n));
}

}  // namespace

FuncExpr FuncExpr::zero(DomainTag tag) {
  return make_node(SumN{}, tag, {});
}

FuncExpr FuncExpr::bump(double center, double radius, DomainTag tag) {
  if (radius <= 0.0) throw DomainError("bump radius must be positive");
  return make_node(BumpRatN{center, radius, {1.0}, 0}, tag,
                   {{center - radius, center + radius}});
}

FuncExpr FuncExpr::poly(std::vector<complexd> coeffs, Interval window,
                        DomainTag tag) {
  if (window.empty()) return zero(tag);
  return make_node(PolyN{std::move(coeffs), window}, tag, {window});
}

FuncExpr FuncExpr::sum(std::vector<FuncExpr> terms) {
  std::erase_if(terms, [](const FuncExpr& f) { return f.is_zero(); });
  if (terms.empty()) return zero();
  if (terms.size() == 1) return terms.front();
  DomainTag tag = terms.front().domain();
  Support s;
  for (const FuncExpr& f : terms) {
    if (f.domain() != tag) throw DomainError("sum across domain tags");
    s = support_union(s, f.support());
  }
  return make_node(SumN{std::move(terms)}, tag, std::move(s));
}

FuncExpr FuncExpr::product(std::vector<FuncExpr> factors) {
  if (factors.empty()) throw DomainError("empty product");
  if (factors.size() == 1) return factors.front();
  DomainTag tag = factors.front().domain();
  Support s = factors.front().support();
  for (size_t i = 1; i < factors.size(); ++i) {
    if (factors[i].domain() != tag) throw DomainError("product across domain tags");
    s = support_intersection(s, factors[i].support());
  }
  return make_node(ProductN{std::move(factors)}, tag, std::move(s));
}

FuncExpr FuncExpr::scaled(complexd c) const {
  if (!node_ || c == complexd{}) return zero(domain());
  return make_node(ScaleN{c, *this}, node_->tag, node_->supp);
}

FuncExpr FuncExpr::shifted(double s) const {
  if (!node_) return *this;
  Support sup = node_->supp;
  for (Interval& iv : sup) {
    iv.lo += s;
    iv.hi += s;
  }
  return make_node(ShiftN{s, *this}, node_->tag, std::move(sup));
}

FuncExpr FuncExpr::dilated(double a) const {
  if (a <= 0.0) throw DomainError("dilation factor must be positive");
  if (!node_) return *this;
  Support sup = node_->supp;
  for (Interval& iv : sup) {
    iv.lo /= a;
    iv.hi /= a;
  }
  return make_node(DilateN{a, *this}, node_->tag, std::move(sup));
}

FuncExpr FuncExpr::power_weight(double alpha) const {
  if (!node_) return *this;
  bool integral = alpha == std::round(alpha);
  if ((alpha < 0.0 || !integral) &&
      (!node_->supp.empty() && support_min(node_->supp) <= 0.0))
    throw DomainError("power weight requires support bounded away from 0");
  return make_node(PowerWeightN{alpha, *this}, node_->tag, node_->supp);
}

FuncExpr FuncExpr::modulated(double omega) const {
  if (!node_) return *this;
  return make_node(ModulateN{omega, *this}, node_->tag, node_->supp);
}

FuncExpr FuncExpr::conjugated() const {
  if (!node_) return *this;
  return make_node(ConjN{*this}, node_->tag, node_->supp);
}

complexd FuncExpr::eval(double t) const {
  if (!node_ || !in_support(node_->supp, t)) return {};
  const Node& n = *node_;
  return std::visit(
      [&](const auto& node) -> complexd {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, BumpRatN>) {
          double u = (t - node.c) / node.r;
          double s = 1.0 - u * u;
          if (s <= 0.0) return {};
          double expo = -1.0 / s - double(node.denom_pow) * std::log(s);
          if (expo < -745.0) return {};
          return std::exp(expo) * peval(node.num, u);
        } else if constexpr (std::is_same_v<T, PolyN>) {
          complexd v{};
          for (size_t i = node.coeffs.size(); i-- > 0;)
            v = v * t + node.coeffs[i];
          return v;
        } else if constexpr (std::is_same_v<T, SumN>) {
          complexd v{};
          for (const FuncExpr& k : node.kids) v += k.eval(t);
          return v;
        } else if constexpr (std::is_same_v<T, ProductN>) {
          complexd v{1.0, 0.0};
          for (const FuncExpr& k : node.kids) {
            v *= k.eval(t);
            if (v == complexd{}) return v;
          }
          return v;
        } else if constexpr (std::is_same_v<T, ScaleN>) {
          return node.c * node.f.eval(t);
        } else if constexpr (std::is_same_v<T, ShiftN>) {
          return node.f.eval(t - node.s);
        } else if constexpr (std::is_same_v<T, DilateN>) {
          return node.f.eval(node.a * t);
        } else if constexpr (std::is_same_v<T, PowerWeightN>) {
          return std::pow(t, node.alpha) * node.f.eval(t);
        } else if constexpr (std::is_same_v<T, ModulateN>) {
          return std::polar(1.0, kTwoPi * node.omega * t) * node.f.eval(t);
        } else {
          static_assert(std::is_same_v<T, ConjN>);
          return std::conj(node.f.eval(t));
        }
      },
      n.v);
}

const Support& FuncExpr::support() const {
  static const Support kEmpty;
  return node_ ? node_->supp : kEmpty;
}

DomainTag FuncExpr::domain() const {
  return node_ ? node_->tag : DomainTag::Line;
}

bool FuncExpr::is_zero() const { return !node_ || node_->supp.empty(); }

double FuncExpr::max_modulation() const {
  if (!node_) return 0.0;
  return std::visit(
      [&](const auto& node) -> double {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, BumpRatN> || std::is_same_v<T, PolyN>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, SumN>) {
          double m = 0.0;
          for (const FuncExpr& k : node.kids)
            m = std::max(m, k.max_modulation());
          return m;
        } else if constexpr (std::is_same_v<T, ProductN>) {
          double m = 0.0;
          for (const FuncExpr& k : node.kids) m += k.max_modulation();
          return m;
        } else if constexpr (std::is_same_v<T, ScaleN> ||
                             std::is_same_v<T, ShiftN> ||
                             std::is_same_v<T, PowerWeightN> ||
                             std::is_same_v<T, ConjN>) {
          if constexpr (std::is_same_v<T, ScaleN> ||
                        std::is_same_v<T, PowerWeightN> ||
                        std::is_same_v<T, ConjN>)
            return node.f.max_modulation();
          else
            return node.f.max_modulation();
        } else if constexpr (std::is_same_v<T, DilateN>) {
          return node.a * node.f.max_modulation();
        } else {
          static_assert(std::is_same_v<T, ModulateN>);
          return std::abs(node.omega) + node.f.max_modulation();
        }
      },
      node_->v);
}

FuncExpr FuncExpr::derivative() const {
  if (!node_) return *this;
  const Node& n = *node_;
  DomainTag tag = n.tag;
  return std::visit(
      [&](const auto& node) -> FuncExpr {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, BumpRatN>) {
          // d/dt [exp(-1/s) N(u) s^-k] with s = 1-u^2, u = (t-c)/r:
          //   (1/r) exp(-1/s) [N'(u) s^2 + (2k u s - 2u) N(u)] s^-(k+2)
          const RPoly s{1.0, 0.0, -1.0};
          RPoly a = pmul(pderiv(node.num), pmul(s, s));
          RPoly lin = padd(pscale(pmul(RPoly{0.0, 1.0}, s),
                                  2.0 * double(node.denom_pow)),
                           RPoly{0.0, -2.0});
          RPoly num = pscale(padd(a, pmul(lin, node.num)), 1.0 / node.r);
          return make_node(BumpRatN{node.c, node.r, std::move(num),
                                    node.denom_pow + 2},
                           tag, n.supp);
        } else if constexpr (std::is_same_v<T, PolyN>) {
          // valid in the interior of the window
          std::vector<complexd> d;
          for (size_t i = 1; i < node.coeffs.size(); ++i)
            d.push_back(node.coeffs[i] * double(i));
          return FuncExpr::poly(std::move(d), node.window, tag);
        } else if constexpr (std::is_same_v<T, SumN>) {
          std::vector<FuncExpr> kids;
          kids.reserve(node.kids.size());
          for (const FuncExpr& k : node.kids) kids.push_back(k.derivative());
          return FuncExpr::sum(std::move(kids));
        } else if constexpr (std::is_same_v<T, ProductN>) {
          std::vector<FuncExpr> terms;
          for (size_t j = 0; j < node.kids.size(); ++j) {
            std::vector<FuncExpr> factors = node.kids;
            factors[j] = factors[j].derivative();
            if (factors[j].is_zero()) continue;
            terms.push_back(FuncExpr::product(std::move(factors)));
          }
          return FuncExpr::sum(std::move(terms));
        } else if constexpr (std::is_same_v<T, ScaleN>) {
          return node.f.derivative().scaled(node.c);
        } else if constexpr (std::is_same_v<T, ShiftN>) {
          return node.f.derivative().shifted(node.s);
        } else if constexpr (std::is_same_v<T, DilateN>) {
          return node.f.derivative().dilated(node.a).scaled(node.a);
        } else if constexpr (std::is_same_v<T, PowerWeightN>) {
          // (t^a f)' = a t^(a-1) f + t^a f'
          std::vector<FuncExpr> terms;
          if (node.alpha != 0.0)
            terms.push_back(
                node.f.scaled(node.alpha).power_weight(node.alpha - 1.0));
          FuncExpr df = node.f.derivative();
          if (!df.is_zero()) terms.push_back(df.power_weight(node.alpha));
          return FuncExpr::sum(std::move(terms));
        } else if constexpr (std::is_same_v<T, ModulateN>) {
          FuncExpr inner = node.f.scaled(complexd{0.0, kTwoPi * node.omega}) +
                           node.f.derivative();
          return inner.modulated(node.omega);
        } else {
          static_assert(std::is_same_v<T, ConjN>);
          return node.f.derivative().conjugated();
        }
      },
      n.v);
}

FuncExpr FuncExpr::derivative(int order) const {
  FuncExpr f = *this;
  for (int i = 0; i < order; ++i) f = f.derivative();
  return f;
}

FuncExpr operator+(const FuncExpr& a, const FuncExpr& b) {
  return FuncExpr::sum({a, b});
}

FuncExpr operator*(const FuncExpr& a, const FuncExpr& b) {
  return FuncExpr::product({a, b});
}

// ---------------------------------------------------------------------------
// JSON serialization

namespace {

json complex_to_json(complexd c) { return json::array({c.real(), c.imag()}); }

complexd complex_from_json(const json& j) {
  if (j.is_number()) return complexd{j.get<double>(), 0.0};
  return complexd{j.at(0).get<double>(), j.at(1).get<double>()};
}

const char* tag_name(DomainTag t) {
  return t == DomainTag::HalfLine ? "HalfLine" : "Line";
}

DomainTag tag_from_name(const std::string& s) {
  if (s == "HalfLine") return DomainTag::HalfLine;
  if (s == "Line") return DomainTag::Line;
  throw DomainError("unknown domain tag: " + s);
}

}  // namespace

json FuncExpr::to_json() const {
  if (!node_) return json{{"node", "Zero"}, {"domain", "Line"}};
  const Node& n = *node_;
  return std::visit(
      [&](const auto& node) -> json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, BumpRatN>) {
          if (node.num == RPoly{1.0} && node.denom_pow == 0)
            return json{{"node", "Bump"},
                        {"center", node.c},
                        {"radius", node.r},
                        {"domain", tag_name(n.tag)}};
          return json{{"node", "BumpRat"},   {"center", node.c},
                      {"radius", node.r},    {"num", node.num},
                      {"denom_pow", node.denom_pow},
                      {"domain", tag_name(n.tag)}};
        } else if constexpr (std::is_same_v<T, PolyN>) {
          json coeffs = json::array();
          for (complexd c : node.coeffs) coeffs.push_back(complex_to_json(c));
          return json{{"node", "Poly"},
                      {"coefficients", coeffs},
                      {"support", {node.window.lo, node.window.hi}},
                      {"domain", tag_name(n.tag)}};
        } else if constexpr (std::is_same_v<T, SumN>) {
          json kids = json::array();
          for (const FuncExpr& k : node.kids) kids.push_back(k.to_json());
          if (node.kids.empty())
            return json{{"node", "Zero"}, {"domain", tag_name(n.tag)}};
          return json{{"node", "Sum"}, {"terms", kids}};
        } else if constexpr (std::is_same_v<T, ProductN>) {
          json kids = json::array();
          for (const FuncExpr& k : node.kids) kids.push_back(k.to_json());
          return json{{"node", "Product"}, {"factors", kids}};
        } else if constexpr (std::is_same_v<T, ScaleN>) {
          return json{{"node", "Scale"},
                      {"c", complex_to_json(node.c)},
                      {"f", node.f.to_json()}};
        } else if constexpr (std::is_same_v<T, ShiftN>) {
          return json{{"node", "Shift"}, {"s", node.s}, {"f", node.f.to_json()}};
        } else if constexpr (std::is_same_v<T, DilateN>) {
          return json{{"node", "Dilate"}, {"a", node.a}, {"f", node.f.to_json()}};
        } else if constexpr (std::is_same_v<T, PowerWeightN>) {
          return json{{"node", "PowerWeight"},
                      {"alpha", node.alpha},
                      {"f", node.f.to_json()}};
        } else if constexpr (std::is_same_v<T, ModulateN>) {
          return json{{"node", "Modulate"},
                      {"omega", node.omega},
                      {"f", node.f.to_json()}};
        } else {
          static_assert(std::is_same_v<T, ConjN>);
          return json{{"node", "Conj"}, {"f", node.f.to_json()}};
        }
      },
      n.v);
}

FuncExpr FuncExpr::from_json(const json& j) {
  const std::string node = j.at("node").get<std::string>();
  auto tag = [&] {
    return tag_from_name(j.value("domain", std::string("Line")));
  };
  if (node == "Zero") return zero(tag());
  if (node == "Bump")
    return bump(j.at("center").get<double>(), j.at("radius").get<double>(),
                tag());
  if (node == "BumpRat") {
    FuncExpr base = bump(j.at("center").get<double>(),
                         j.at("radius").get<double>(), tag());
    auto n = std::make_shared<Node>(*base.node_);
    auto& br = std::get<BumpRatN>(n->v);
    br.num = j.at("num").get<RPoly>();
    br.denom_pow = j.at("denom_pow").get<int>();
    return FuncExpr(std::move(n));
  }
  if (node == "Poly") {
    std::vector<complexd> coeffs;
    for (const json& c : j.at("coefficients")) coeffs.push_back(complex_from_json(c));
    const json& w = j.at("support");
    return poly(std::move(coeffs), {w.at(0).get<double>(), w.at(1).get<double>()},
                tag());
  }
  if (node == "Sum") {
    std::vector<FuncExpr> kids;
    for (const json& k : j.at("terms")) kids.push_back(from_json(k));
    return sum(std::move(kids));
  }
  if (node == "Product") {
    std::vector<FuncExpr> kids;
    for (const json& k : j.at("factors")) kids.push_back(from_json(k));
    return product(std::move(kids));
  }
  if (node == "Scale")
    return from_json(j.at("f")).scaled(complex_from_json(j.at("c")));
  if (node == "Shift") return from_json(j.at("f")).shifted(j.at("s").get<double>());
  if (node == "Dilate") return from_json(j.at("f")).dilated(j.at("a").get<double>());
  if (node == "PowerWeight")
    return from_json(j.at("f")).power_weight(j.at("alpha").get<double>());
  if (node == "Modulate")
    return from_json(j.at("f")).modulated(j.at("omega").get<double>());
  if (node == "Conj") return from_json(j.at("f")).conjugated();
  if (node == "Deriv") return from_json(j.at("f")).derivative();
  throw DomainError("unknown expression node: " + node);
}

// ---------------------------------------------------------------------------
// Func2D

Func2D::Func2D(std::vector<Term> terms) {
  for (Term& t : terms) {
    if (t.fx.is_zero() || t.fy.is_zero()) continue;
    terms_.push_back(std::move(t));
  }
}

Func2D Func2D::tensor(FuncExpr fx, FuncExpr fy) {
  return Func2D({Term{std::move(fx), std::move(fy)}});
}

complexd Func2D::eval(double x, double y) const {
  complexd v{};
  for (const Term& t : terms_) v += t.fx.eval(x) * t.fy.eval(y);
  return v;
}

Func2D Func2D::conjugated() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_)
    out.push_back({t.fx.conjugated(), t.fy.conjugated()});
  return Func2D(std::move(out));
}

Func2D Func2D::scaled(complexd c) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) out.push_back({t.fx.scaled(c), t.fy});
  return Func2D(std::move(out));
}

Func2D Func2D::operator+(const Func2D& other) const {
  std::vector<Term> out = terms_;
  out.insert(out.end(), other.terms_.begin(), other.terms_.end());
  return Func2D(std::move(out));
}

Support Func2D::support_x() const {
  Support s;
  for (const Term& t : terms_) s = support_union(s, t.fx.support());
  return s;
}

Support Func2D::support_y() const {
  Support s;
  for (const Term& t : terms_) s = support_union(s, t.fy.support());
  return s;
}

json Func2D::to_json() const {
  json terms = json::array();
  for (const Term& t : terms_)
    terms.push_back(json{{"fx", t.fx.to_json()}, {"fy", t.fy.to_json()}});
  return json{{"node", "Tensor2D"}, {"terms", terms}};
}

Func2D Func2D::from_json(const json& j) {
  std::vector<Term> terms;
  for (const json& t : j.at("terms"))
    terms.push_back({FuncExpr::from_json(t.at("fx")),
                     FuncExpr::from_json(t.at("fy"))});
  return Func2D(std::move(terms));
}

// ---------------------------------------------------------------------------
// Inner products

complexd inner_product(const FuncExpr& f, const FuncExpr& g, Measure mu) {
  if (mu == Measure::LebesguePlane)
    throw DomainError("plane measure requires Func2D operands");
  Support s = support_intersection(f.support(), g.support());
  if (s.empty()) return {};
  FuncExpr integrand = f * g.conjugated();
  if (mu == Measure::HaarHalfLine) integrand = integrand.power_weight(-1.0);
  double osc = f.max_modulation() + g.max_modulation();
  QuadConfig cfg;
  IntegralResult r = integrate_intervals(
      [&](double t) { return integrand.eval(t); }, s, cfg, osc);
  return r.value;
}

complexd inner_product(const Func2D& f, const Func2D& g) {
  complexd v{};
  for (const Func2D::Term& a : f.terms())
    for (const Func2D::Term& b : g.terms())
      v += inner_product(a.fx, b.fx, Measure::LebesgueLine) *
           inner_product(a.fy, b.fy, Measure::LebesgueLine);
  return v;
}

double norm(const FuncExpr& f, Measure mu) {
  return std::sqrt(std::max(0.0, inner_product(f, f, mu).real()));
}

double norm(const Func2D& f) {
  return std::sqrt(std::max(0.0, inner_product(f, f).real()));
}

}  // namespace harmlab
