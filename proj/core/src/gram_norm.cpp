#include "gram_norm.hpp"

#include <cmath>
#include <vector>

namespace harmlab::detail {

Eigen::MatrixXcd orthonormal_factor(const Eigen::MatrixXcd& gram) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram.conjugate());
  if (es.info() != Eigen::Success)
    throw NumericalError("Gram eigendecomposition failed");
  const auto& ev = es.eigenvalues();
  double trace = ev.cwiseMax(0.0).sum();
  double floor = 1e-12 * std::max(trace, 1e-300);
  if (ev.minCoeff() < -floor)
    throw NumericalError("Gram matrix not positive semidefinite");
  std::vector<int> keep;
  for (int i = 0; i < ev.size(); ++i)
    if (ev[i] > floor) keep.push_back(i);
  Eigen::MatrixXcd P(keep.size(), gram.rows());
  for (size_t r = 0; r < keep.size(); ++r)
    P.row(r) = std::sqrt(ev[keep[r]]) * es.eigenvectors().col(keep[r]).adjoint();
  return P;
}

double gram_trace_norm(const Eigen::MatrixXcd& gx, const Eigen::MatrixXcd& ge,
                       const Eigen::VectorXcd& w) {
  Eigen::MatrixXcd P = orthonormal_factor(gx);
  Eigen::MatrixXcd Q = orthonormal_factor(ge);
  if (P.rows() == 0 || Q.rows() == 0) return 0.0;
  Eigen::MatrixXcd A = P * w.asDiagonal() * Q.adjoint();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  return svd.singularValues().sum();
}

}  // namespace harmlab::detail
