#pragma once

#include "harmlab/quadrature.hpp"

namespace harmlab {

/// Point (p, q, e^{2 pi i theta}) of the reduced Heisenberg group;
/// theta is kept mod 1.
struct HeisElement {
  double p = 0.0;
  double q = 0.0;
  double theta = 0.0;

  static HeisElement identity() { return {}; }
  HeisElement operator*(const HeisElement& o) const;
  HeisElement inverse() const;
};

/// sigma_n(p,q,theta) xi (x) = e^{2 pi i n q(-x + p/2)} e^{2 pi i n theta} xi(x-p).
FuncExpr sch_apply(int n, const HeisElement& g, const FuncExpr& xi);

struct SchCoeffTerm {
  int n = 1;  // nonzero
  FuncExpr xi;
  FuncExpr eta;
  complexd weight{1.0, 0.0};
};

/// <sigma_n(g) xi, eta>_{L^2(R)} computed as e^{2 pi i n theta} times the
/// Fourier transform of x -> xi(x - p/2) conj(eta(x + p/2)) at n q;
/// ignores the term weight.
complexd sch_coeff_eval(const SchCoeffTerm& term, const HeisElement& g,
                        const QuadConfig& cfg = {});
/// Independent path through sch_apply and the L^2(R) inner product.
complexd sch_coeff_eval_rep_path(const SchCoeffTerm& term, const HeisElement& g,
                                 const QuadConfig& cfg = {});

/// Coefficient of the theta-independent representation lifted from the
/// regular representation of the plane: <lambda_{R^2}(p,q) xi, eta>.
struct Lambda0CoeffTerm {
  Func2D xi;
  Func2D eta;
  complexd weight{1.0, 0.0};
};

complexd lambda0_coeff_eval(const Lambda0CoeffTerm& term, const HeisElement& g,
                            const QuadConfig& cfg = {});

/// Element of the span of Schrodinger and lambda_0 coefficient functions.
struct HrElem {
  std::vector<SchCoeffTerm> sch_terms;
  std::vector<Lambda0CoeffTerm> zero_terms;

  complexd eval(const HeisElement& g, const QuadConfig& cfg = {}) const;
  HrElem conjugated() const;
  /// (1/2 pi i) d/dtheta: multiplies sigma_n weights by n, kills zero_terms.
  HrElem dtheta() const;
  HrElem scaled(complexd c) const;
  HrElem operator+(const HrElem& o) const;
  bool is_zero() const { return sch_terms.empty() && zero_terms.empty(); }
};

/// Finite sums of weighted products of the two coefficient kinds.
struct HeisFactor {
  bool is_sch = true;
  // sch factor
  int n = 1;
  FuncExpr xi;
  FuncExpr eta;
  // lambda_0 factor
  Func2D xi2;
  Func2D eta2;
};

struct HeisTerm {
  complexd weight{1.0, 0.0};
  std::vector<HeisFactor> factors;
};

class HeisAlgebra {
 public:
  HeisAlgebra() = default;
  explicit HeisAlgebra(std::vector<HeisTerm> terms);
  HeisAlgebra(const HrElem& v);  // NOLINT: deliberate lift

  complexd eval(const HeisElement& g, const QuadConfig& cfg = {}) const;
  HeisAlgebra operator+(const HeisAlgebra& o) const;
  HeisAlgebra operator*(const HeisAlgebra& o) const;
  HeisAlgebra scaled(complexd c) const;
  HeisAlgebra conjugated() const;
  HeisAlgebra dtheta() const;  // Leibniz: each term picks up its net frequency

  const std::vector<HeisTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

 private:
  std::vector<HeisTerm> terms_;
};

/// integral over the group, Haar measure dp dq dtheta.  The theta-average is
/// a periodic trapezoid sum, exact on the trigonometric theta-dependence; for
/// terms without lambda_0 factors the q-integral is a band-limited trapezoid
/// sum with a certified cutoff.
IntegralResult integrate_heis(const HeisAlgebra& u, const QuadConfig& cfg = {});

IntegralResult heis_l2_inner(const HeisAlgebra& u, const HeisAlgebra& w,
                             const QuadConfig& cfg = {});

/// D_flat(f, g) = integral (dtheta f) g dmu.
IntegralResult d_flat_heis(const HeisAlgebra& f, const HeisAlgebra& g,
                           const QuadConfig& cfg = {});

struct HeisNorm {
  double value = 0.0;
  bool exact = true;  // false when lambda_0 terms force an upper bound
};

/// Sum over n of the trace norm of the sigma_n block plus, for each lambda_0
/// term, |weight| ||xi||_2 ||eta||_2 (an upper bound when zero_terms is
/// nonempty).
HeisNorm a_norm_heis(const HrElem& u);

/// a_norm_heis(v) a_norm_heis(w) - |D_flat(v,w)|.
double key_estimate_heis(const HrElem& v, const HrElem& w,
                         const QuadConfig& cfg = {});

}  // namespace harmlab
