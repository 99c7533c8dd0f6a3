#pragma once

#include "harmlab/quadrature.hpp"

namespace harmlab {

/// Point (b,a) of the affine group of the line, a > 0; composition of the
/// maps t -> a t + b gives (b,a)(b',a') = (b + a b', a a').
struct AxbElement {
  double b = 0.0;
  double a = 1.0;

  static AxbElement identity() { return {}; }
  AxbElement operator*(const AxbElement& o) const { return {b + a * o.b, a * o.a}; }
  AxbElement inverse() const { return {-b / a, 1.0 / a}; }
};

enum class RepSign { Plus, Minus };

/// The representation space is L^2 of the positive half line with measure
/// dt/t (HaarHalfLine).
complexd hilbert_inner(const FuncExpr& f, const FuncExpr& g);
double hilbert_norm(const FuncExpr& f);

/// pi_{+/-}(b,a) xi (t) = e^{-/+ 2 pi i b t} xi(a t).
FuncExpr rep_apply(RepSign sign, const AxbElement& g, const FuncExpr& xi);

/// One coefficient function weight * <pi(g) xi, eta>.
struct CoeffTerm {
  RepSign sign = RepSign::Plus;
  FuncExpr xi;
  FuncExpr eta;
  complexd weight{1.0, 0.0};
};

/// Direct oscillatory-quadrature value of the coefficient function,
///   (xi * eta)(b,a) = integral e^{-/+ 2 pi i b t} xi(a t) conj(eta(t)) dt/t,
/// ignoring the term weight.
complexd coeff_eval(const CoeffTerm& term, const AxbElement& g,
                    const QuadConfig& cfg = {});
/// Same value as <rep_apply(sign,g,xi), eta> in the representation space;
/// an independent path used for cross-checks.
complexd coeff_eval_rep_path(const CoeffTerm& term, const AxbElement& g,
                             const QuadConfig& cfg = {});

/// Finite linear combination of coefficient functions (both signs allowed).
class CoeffSum {
 public:
  CoeffSum() = default;
  explicit CoeffSum(std::vector<CoeffTerm> terms);
  static CoeffSum coeff(RepSign sign, FuncExpr xi, FuncExpr eta,
                        complexd weight = {1.0, 0.0});

  complexd eval(const AxbElement& g, const QuadConfig& cfg = {}) const;
  CoeffSum conjugated() const;  // conj(xi *_+ eta) = conj xi *_- conj eta
  CoeffSum madb() const;        // M_a d_b termwise: (s, xi, eta, w) -> (s, K xi, eta, +/- w)
  CoeffSum scaled(complexd c) const;
  CoeffSum operator+(const CoeffSum& o) const;

  const std::vector<CoeffTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

 private:
  std::vector<CoeffTerm> terms_;
};

/// Finite sums of weighted products of coefficient functions: the algebra
/// generated by the CoeffSum elements.
struct CoeffFactor {
  RepSign sign = RepSign::Plus;
  FuncExpr xi;
  FuncExpr eta;
};

struct AlgebraTerm {
  complexd weight{1.0, 0.0};
  std::vector<CoeffFactor> factors;
};

class AlgebraElem {
 public:
  AlgebraElem() = default;
  explicit AlgebraElem(std::vector<AlgebraTerm> terms);
  AlgebraElem(const CoeffSum& sum);  // NOLINT: deliberate lift

  complexd eval(const AxbElement& g, const QuadConfig& cfg = {}) const;
  AlgebraElem operator+(const AlgebraElem& o) const;
  AlgebraElem operator*(const AlgebraElem& o) const;
  AlgebraElem scaled(complexd c) const;
  AlgebraElem conjugated() const;
  AlgebraElem madb() const;  // Leibniz rule across the factors of each term

  const std::vector<AlgebraTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

 private:
  std::vector<AlgebraTerm> terms_;
};

/// integral of u over the group, left Haar measure a^-2 da db.  Each product
/// term is band-limited in b (its b-Fourier transform is a convolution of
/// compactly supported factors), so the b-integral is an equispaced trapezoid
/// sum whose only error is the certified truncation tail.
IntegralResult integrate_axb(const AlgebraElem& u, const QuadConfig& cfg = {});

/// <u, w>_{L^2(G)} = integral u conj(w) dmu.
IntegralResult l2g_inner(const AlgebraElem& u, const AlgebraElem& w,
                         const QuadConfig& cfg = {});

/// D_flat(f, g) = integral (M_a d_b f) g dmu.
IntegralResult d_flat(const AlgebraElem& f, const AlgebraElem& g,
                      const QuadConfig& cfg = {});

/// Fourier-algebra norm of a coefficient sum: per sign, the trace norm of
/// sum_i w_i |xi_i><eta_i| assembled from Gram matrices and a dense SVD;
/// the two signs add (l^1 decomposition).
double a_norm(const CoeffSum& u);

struct DerivationResiduals {
  double leibniz = 0.0;    // |D(fg,h) - D(g,hf) - D(f,gh)|
  double antisym = 0.0;    // |D(f,g) + D(g,f)|
  double key_margin = 0.0; // a_norm(f) a_norm(g) - |D(f,g)|
};

/// f,g also enter as plain algebra elements; h only via the Leibniz triple.
DerivationResiduals derivation_residuals(const CoeffSum& f, const CoeffSum& g,
                                         const CoeffSum& h,
                                         const QuadConfig& cfg = {});

}  // namespace harmlab
