#pragma once

#include "harmlab/axb.hpp"
#include "harmlab/heis.hpp"

namespace harmlab {

/// Sample of a function on (b, a) with a declared truncation window, used to
/// test the dilation map W F(b,a) = F(b, |b| a) on the half-plane.
struct L2GSample {
  std::function<complexd(double, double)> F;
  Interval b_window;  // |F| negligible outside
  Interval a_window;  // a > 0
};

/// Relative defect | ||W F|| - ||F|| | / ||F|| where both norms are taken in
/// L^2(R x R_+*, db a^-1 da), the scale-invariant measure that makes W an
/// isometry; the two norms use genuinely different quadrature grids.
double w_isometry_check(const L2GSample& s, const QuadConfig& cfg = {});

struct FtwResult {
  double max_residual = 0.0;
  /// +1 or -1: the sign s with (F (x) I) W (eta_part (x) xi) = s * coefficient
  /// that the samples actually satisfied (the mirrored case is checked against
  /// both signs and the better one is reported).
  int matched_sign = 1;
};

/// (F (x) I) W (eta (x) xi)(b,a) = integral_0^inf e^{-2 pi i b t} eta(t) xi(t a) dt
/// against the coefficient xi *_+ conj(K eta); mirrored = true reflects eta to
/// the negative axis, pairing with xi *_- conj(K eta) instead.
FtwResult ftw_identity_check(const FuncExpr& eta, const FuncExpr& xi,
                             const std::vector<AxbElement>& samples,
                             bool mirrored, const QuadConfig& cfg = {});

struct LambdaConvResult {
  double same_sign_residual = 0.0;  // vs <K^-1/2 xi, K^-1/2 xi'> (conj eta *_- conj eta')(x)
  double cross_sign_abs = 0.0;      // |<lambda(x)(xi *_+ eta), xi' *_- eta'>|
};

LambdaConvResult lambda_conv_identity_check(const FuncExpr& xi,
                                            const FuncExpr& eta,
                                            const FuncExpr& xi2,
                                            const FuncExpr& eta2,
                                            const AxbElement& x,
                                            const QuadConfig& cfg = {});

/// | (f (x) chi_n)(g^-1 g') - e^{-2 pi i n theta} e^{pi i n(-x y' + x' y)}
///   f(-x + x', -y + y') chi_n(theta') |.
double heis_translation_formula_check(const Func2D& f, int n,
                                      const HeisElement& g,
                                      const HeisElement& gp);

}  // namespace harmlab
