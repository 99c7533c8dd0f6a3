#include "harmlab/corpus.hpp"

#include <algorithm>
#include <sstream>

#include "harmlab/report.hpp"

namespace harmlab {

double Corpus::uniform(double lo, double hi) {
  // uniform_real_distribution is not portable bit-for-bit; derive from the
  // raw engine output so reports are reproducible across standard libraries.
  double u = double(rng_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

complexd Corpus::unit_disk(double radius) {
  for (;;) {
    double re = uniform(-1.0, 1.0), im = uniform(-1.0, 1.0);
    if (re * re + im * im <= 1.0) return radius * complexd{re, im};
  }
}

FuncExpr Corpus::random_func(DomainTag tag) {
  int leaves = 1 + int(rng_() % 3);
  std::vector<FuncExpr> terms;
  for (int i = 0; i < leaves; ++i) {
    double center = uniform(0.5, 4.0);
    double rmax = tag == DomainTag::HalfLine ? std::min(1.0, center - 0.1) : 1.0;
    double radius = uniform(0.2, rmax);
    terms.push_back(FuncExpr::bump(center, radius, tag).scaled(unit_disk(2.0)));
  }
  return FuncExpr::sum(std::move(terms));
}

Func2D Corpus::random_func2d() {
  int n = 1 + int(rng_() % 2);
  std::vector<Func2D::Term> terms;
  for (int i = 0; i < n; ++i) {
    FuncExpr fx = random_func(DomainTag::Line);
    FuncExpr fy = random_func(DomainTag::Line);
    terms.push_back({std::move(fx), std::move(fy)});
  }
  return Func2D(std::move(terms));
}

AxbElement Corpus::random_axb(double b_range) {
  return {uniform(-b_range, b_range), uniform(0.4, 2.5)};
}

HeisElement Corpus::random_heis(double pq_range) {
  return {uniform(-pq_range, pq_range), uniform(-pq_range, pq_range),
          uniform(0.0, 1.0)};
}

SU2Element Corpus::random_su2() {
  for (;;) {
    SU2Element g{uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0),
                 uniform(-1.0, 1.0)};
    double n2 = g.w * g.w + g.x * g.x + g.y * g.y + g.z * g.z;
    if (n2 > 0.05 && n2 <= 1.0) return g.normalized();
  }
}

CoeffSum Corpus::random_coeff_sum(int max_terms) {
  int n = 1 + int(rng_() % std::uint64_t(max_terms));
  std::vector<CoeffTerm> terms;
  for (int i = 0; i < n; ++i) {
    RepSign s = (rng_() % 2 == 0) ? RepSign::Plus : RepSign::Minus;
    terms.push_back({s, random_func(DomainTag::HalfLine),
                     random_func(DomainTag::HalfLine), unit_disk(1.0)});
  }
  return CoeffSum(std::move(terms));
}

HrElem Corpus::random_hr(int max_abs_n, int max_terms, bool allow_lambda0) {
  HrElem out;
  int n_terms = 1 + int(rng_() % std::uint64_t(max_terms));
  for (int i = 0; i < n_terms; ++i) {
    if (allow_lambda0 && rng_() % 4 == 0) {
      out.zero_terms.push_back(
          {random_func2d(), random_func2d(), unit_disk(1.0)});
    } else {
      int n = 1 + int(rng_() % std::uint64_t(max_abs_n));
      if (rng_() % 2 == 0) n = -n;
      out.sch_terms.push_back({n, random_func(DomainTag::Line),
                               random_func(DomainTag::Line), unit_disk(1.0)});
    }
  }
  return out;
}

TrigPoly Corpus::random_trig(int max_n, int max_terms) {
  int n_terms = 1 + int(rng_() % std::uint64_t(max_terms));
  std::vector<TrigTerm> terms;
  for (int i = 0; i < n_terms; ++i) {
    int n = int(rng_() % std::uint64_t(max_n + 1));
    Eigen::VectorXcd xi(n + 1), eta(n + 1);
    for (int k = 0; k <= n; ++k) {
      xi[k] = unit_disk(1.0);
      eta[k] = unit_disk(1.0);
    }
    terms.push_back({n, std::move(xi), std::move(eta), unit_disk(1.0)});
  }
  return TrigPoly(std::move(terms));
}

std::string digest(const FuncExpr& f) { return digest_hex(f.to_json().dump()); }

std::string digest(const Func2D& f) { return digest_hex(f.to_json().dump()); }

std::string digest(const CoeffSum& u) {
  std::ostringstream os;
  for (const auto& t : u.terms())
    os << (t.sign == RepSign::Plus ? "+" : "-") << t.weight.real() << ","
       << t.weight.imag() << ";" << t.xi.to_json().dump() << ";"
       << t.eta.to_json().dump() << "|";
  return digest_hex(os.str());
}

std::string digest(const HrElem& u) {
  std::ostringstream os;
  for (const auto& t : u.sch_terms)
    os << "s" << t.n << ":" << t.weight.real() << "," << t.weight.imag() << ";"
       << t.xi.to_json().dump() << ";" << t.eta.to_json().dump() << "|";
  for (const auto& t : u.zero_terms)
    os << "z:" << t.weight.real() << "," << t.weight.imag() << ";"
       << t.xi.to_json().dump() << ";" << t.eta.to_json().dump() << "|";
  return digest_hex(os.str());
}

std::string digest(const TrigPoly& u) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& t : u.terms()) {
    os << "n" << t.n << ":" << t.weight.real() << "," << t.weight.imag() << ";";
    for (int k = 0; k <= t.n; ++k)
      os << t.xi[k].real() << "," << t.xi[k].imag() << ","
         << t.eta[k].real() << "," << t.eta[k].imag() << ";";
    os << "|";
  }
  return digest_hex(os.str());
}

}  // namespace harmlab
