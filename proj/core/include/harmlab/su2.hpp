#pragma once

#include <Eigen/Dense>

#include "harmlab/quadrature.hpp"

namespace harmlab {

/// Unit quaternion w + x i + y j + z k, identified with the matrix
///   [ w + i z   y + i x ]
///   [-y + i x   w - i z ]
/// so that s_phi = diag(e^{i phi/2}, e^{-i phi/2}) is the rotation about k.
struct SU2Element {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  static SU2Element identity() { return {}; }
  static SU2Element s_phi(double phi);
  /// z-y-z Euler product s_phi(alpha) * (rotation about j by beta) * s_phi(gamma).
  static SU2Element from_euler(double alpha, double beta, double gamma);
  static SU2Element from_matrix(const Eigen::Matrix2cd& u);

  Eigen::Matrix2cd matrix() const;
  SU2Element operator*(const SU2Element& o) const;
  SU2Element inverse() const { return {w, -x, -y, -z}; }
  SU2Element normalized() const;
};

/// Irreducible (n+1)-dimensional representation on homogeneous polynomials of
/// degree n in two variables, acting by (pi(U)f)(v) = f(U^T v) in the basis
/// e_k = z1^{n-k} z2^k / sqrt((n-k)! k!), k = 0..n.  pi(s_phi) is diagonal
/// with entries e^{i(n-2k) phi/2}.
Eigen::MatrixXcd wigner_d(int n, const SU2Element& g);

/// d/dphi pi(s_phi) at phi = 0: diag(i (n-2k)/2).
Eigen::MatrixXcd f_pi(int n);

/// C with conj(pi(g)) = C pi(g) C^{-1}: C_{j,k} = (-1)^j delta_{k, n-j}.
Eigen::MatrixXcd conj_intertwiner(int n);

/// Normalized Haar integral by Euler-angle product quadrature: periodic
/// trapezoid in alpha over [0, 2 pi) and gamma over [0, 4 pi), Gauss-Legendre
/// in cos beta; exact for products of matrix coefficients of blocks <= max_n.
IntegralResult haar_integrate_su2(
    const std::function<complexd(const SU2Element&)>& f, int max_n,
    const QuadConfig& cfg = {});

struct TrigTerm {
  int n = 0;
  Eigen::VectorXcd xi;   // dimension n+1
  Eigen::VectorXcd eta;  // dimension n+1
  complexd weight{1.0, 0.0};
};

/// Finite sums of matrix coefficients g -> weight <pi_n(g) xi, eta>.
class TrigPoly {
 public:
  TrigPoly() = default;
  explicit TrigPoly(std::vector<TrigTerm> terms);
  static TrigPoly coeff(int n, Eigen::VectorXcd xi, Eigen::VectorXcd eta,
                        complexd weight = {1.0, 0.0});

  complexd eval(const SU2Element& g) const;
  TrigPoly conjugated() const;
  TrigPoly partial_phi() const;  // each xi replaced by F_pi xi
  TrigPoly scaled(complexd c) const;
  TrigPoly operator+(const TrigPoly& o) const;

  const std::vector<TrigTerm>& terms() const { return terms_; }
  int max_n() const;
  bool is_zero() const { return terms_.empty(); }

 private:
  std::vector<TrigTerm> terms_;
};

/// Fourier-algebra norm: sum over n of the trace norm of
/// sum_i weight_i |xi_i><eta_i| restricted to that block.
double a_norm_su2(const TrigPoly& f);

/// D_flat(f, g) = Haar integral of (partial_phi f) g.
IntegralResult d_flat_su2(const TrigPoly& f, const TrigPoly& g,
                          const QuadConfig& cfg = {});

}  // namespace harmlab
