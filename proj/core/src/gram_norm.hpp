#pragma once

#include <Eigen/Dense>

#include "harmlab/errors.hpp"

namespace harmlab::detail {

/// P with P^* P = conj(gram); rows of P are coordinates of the original
/// vectors in an orthonormal basis of their span.  Eigenvalues below
/// 1e-12 * trace are dropped; ones below -1e-12 * trace raise NumericalError.
Eigen::MatrixXcd orthonormal_factor(const Eigen::MatrixXcd& gram);

/// Trace norm of sum_i w_i |x_i><e_i| given the two Gram matrices
/// gx_{ij} = <x_i, x_j>, ge_{ij} = <e_i, e_j> (conjugate-linear in the
/// second argument).
double gram_trace_norm(const Eigen::MatrixXcd& gx, const Eigen::MatrixXcd& ge,
                       const Eigen::VectorXcd& w);

}  // namespace harmlab::detail
