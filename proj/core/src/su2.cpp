#include "harmlab/su2.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace harmlab {

namespace {

constexpr double kPi = std::numbers::pi;

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

long double fact(int n) {
  static const auto table = [] {
    std::array<long double, 40> t{};
    t[0] = 1.0L;
    for (int i = 1; i < 40; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table[n];
}

long double binom(int n, int k) { return fact(n) / (fact(k) * fact(n - k)); }

}  // namespace

SU2Element SU2Element::s_phi(double phi) {
  return {std::cos(0.5 * phi), 0.0, 0.0, std::sin(0.5 * phi)};
}

SU2Element SU2Element::from_euler(double alpha, double beta, double gamma) {
  SU2Element ry{std::cos(0.5 * beta), 0.0, -std::sin(0.5 * beta), 0.0};
  return s_phi(alpha) * ry * s_phi(gamma);
}

Eigen::Matrix2cd SU2Element::matrix() const {
  complexd a{w, z}, b{y, x};
  Eigen::Matrix2cd u;
  u << a, b, -std::conj(b), std::conj(a);
  return u;
}

SU2Element SU2Element::from_matrix(const Eigen::Matrix2cd& u) {
  complexd a = u(0, 0), b = u(0, 1);
  return SU2Element{a.real(), b.imag(), b.real(), a.imag()}.normalized();
}

SU2Element SU2Element::operator*(const SU2Element& o) const {
  complexd a1{w, z}, b1{y, x}, a2{o.w, o.z}, b2{o.y, o.x};
  complexd a = a1 * a2 - b1 * std::conj(b2);
  complexd b = a1 * b2 + b1 * std::conj(a2);
  return {a.real(), b.imag(), b.real(), a.imag()};
}

SU2Element SU2Element::normalized() const {
  double n = std::sqrt(w * w + x * x + y * y + z * z);
  return {w / n, x / n, y / n, z / n};
}

Eigen::MatrixXcd wigner_d(int n, const SU2Element& g) {
  using CL = std::complex<long double>;
  Eigen::Matrix2cd ud = g.matrix();
  CL u00{ud(0, 0).real(), ud(0, 0).imag()};
  CL u01{ud(0, 1).real(), ud(0, 1).imag()};
  CL u10{ud(1, 0).real(), ud(1, 0).imag()};
  CL u11{ud(1, 1).real(), ud(1, 1).imag()};
  auto powc = [](CL b, int e) {
    CL r{1.0L, 0.0L};
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  };
  Eigen::MatrixXcd D(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    // pi(U) e_k: expand ((U^T z)_1)^{n-k} ((U^T z)_2)^k and collect the
    // coefficient of z1^{n-j} z2^j.
    for (int j = 0; j <= n; ++j) {
      CL acc{0.0L, 0.0L};
      for (int i = std::max(0, j - k); i <= std::min(n - k, j); ++i) {
        int l = j - i;  // z2-power contributed by the second binomial
        acc += binom(n - k, i) * binom(k, l) * powc(u00, n - k - i) *
               powc(u10, i) * powc(u01, k - l) * powc(u11, l);
      }
      long double norm =
          sqrtl(fact(n - j) * fact(j)) / sqrtl(fact(n - k) * fact(k));
      acc *= norm;
      D(j, k) = complexd{double(acc.real()), double(acc.imag())};
    }
  }
  return D;
}

Eigen::MatrixXcd f_pi(int n) {
  Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) F(k, k) = complexd{0.0, 0.5 * (n - 2 * k)};
  return F;
}

Eigen::MatrixXcd conj_intertwiner(int n) {
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  for (int j = 0; j <= n; ++j) C(j, n - j) = (j % 2 == 0) ? 1.0 : -1.0;
  return C;
}

IntegralResult haar_integrate_su2(
    const std::function<complexd(const SU2Element&)>& f, int max_n,
    const QuadConfig& cfg) {
  (void)cfg;
  const int na = 4 * max_n + 4;
  const int ng = 8 * max_n + 8;
  const int nb = 2 * max_n + 4;
  const auto& us = gauss_legendre_nodes(nb);
  const auto& ws = gauss_legendre_weights(nb);
  KahanC acc;
  for (int ia = 0; ia < na; ++ia) {
    double alpha = 2.0 * kPi * ia / na;
    for (int ib = 0; ib < nb; ++ib) {
      double beta = std::acos(us[ib]);
      for (int ig = 0; ig < ng; ++ig) {
        double gamma = 4.0 * kPi * ig / ng;
        acc.add(ws[ib] * f(SU2Element::from_euler(alpha, beta, gamma)));
      }
    }
  }
  IntegralResult res;
  res.value = acc.sum / (2.0 * double(na) * double(ng));
  res.panels_used = long(na) * ng * nb;
  return res;
}

TrigPoly::TrigPoly(std::vector<TrigTerm> terms) {
  for (auto& t : terms) {
    if (t.weight == complexd{}) continue;
    if (t.xi.size() != t.n + 1 || t.eta.size() != t.n + 1)
      throw DomainError("TrigTerm vector dimension must be n+1");
    if (t.xi.isZero(0.0) || t.eta.isZero(0.0)) continue;
    terms_.push_back(std::move(t));
  }
}

TrigPoly TrigPoly::coeff(int n, Eigen::VectorXcd xi, Eigen::VectorXcd eta,
                         complexd weight) {
  return TrigPoly({{n, std::move(xi), std::move(eta), weight}});
}

complexd TrigPoly::eval(const SU2Element& g) const {
  complexd acc{};
  for (const auto& t : terms_) {
    Eigen::MatrixXcd D = wigner_d(t.n, g);
    acc += t.weight * (t.eta.adjoint() * D * t.xi)(0, 0);
  }
  return acc;
}

TrigPoly TrigPoly::conjugated() const {
  std::vector<TrigTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Eigen::MatrixXcd Cd = conj_intertwiner(t.n).adjoint();
    out.push_back({t.n, Cd * t.xi.conjugate(), Cd * t.eta.conjugate(),
                   std::conj(t.weight)});
  }
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::partial_phi() const {
  std::vector<TrigTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_)
    out.push_back({t.n, f_pi(t.n) * t.xi, t.eta, t.weight});
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::scaled(complexd c) const {
  std::vector<TrigTerm> out = terms_;
  for (auto& t : out) t.weight *= c;
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
  std::vector<TrigTerm> out = terms_;
  out.insert(out.end(), o.terms_.begin(), o.terms_.end());
  return TrigPoly(std::move(out));
}

int TrigPoly::max_n() const {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, t.n);
  return m;
}

double a_norm_su2(const TrigPoly& f) {
  std::map<int, Eigen::MatrixXcd> blocks;
  for (const auto& t : f.terms()) {
    auto it = blocks.find(t.n);
    if (it == blocks.end())
      it = blocks.emplace(t.n, Eigen::MatrixXcd::Zero(t.n + 1, t.n + 1)).first;
    it->second += t.weight * (t.xi * t.eta.adjoint());
  }
  double total = 0.0;
  for (const auto& [n, A] : blocks) {
    (void)n;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
    total += svd.singularValues().sum();
  }
  return total;
}

IntegralResult d_flat_su2(const TrigPoly& f, const TrigPoly& g,
                          const QuadConfig& cfg) {
  TrigPoly df = f.partial_phi();
  if (df.is_zero() || g.is_zero()) return {};
  int band = df.max_n() + g.max_n();  // the product spans blocks up to the sum
  return haar_integrate_su2(
      [&](const SU2Element& u) { return df.eval(u) * g.eval(u); }, band, cfg);
}

}  // namespace harmlab
