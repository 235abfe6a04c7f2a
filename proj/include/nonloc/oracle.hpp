#pragma once

#include <Eigen/Dense>

#include "nonloc/operator.hpp"

namespace nonloc {
namespace oracle {

/// Dense matrix of the discrete linear operator for a single control, so that
/// A u equals eval_linear(u) for every vector.
Eigen::MatrixXd assemble_dense(const Control& c, const std::shared_ptr<const Grid>& grid,
                               const QuadratureTable& q, const KernelClass& k);

struct DenseEigenResult {
    double lambda;
    Eigen::VectorXd vector; // sup-norm 1, positive
    int iterations;
};

/// Principal eigenpair of -A by plain inverse power iteration with a
/// Collatz-Wielandt stopping bracket.
DenseEigenResult dense_principal_eigen(const Eigen::MatrixXd& A, double tol,
                                       int max_iters = 50000);

/// Same integral as c_constant, evaluated by tanh-sinh quadrature with a
/// numerically located sign change; fully independent code path.
double quadrature_oracle(double beta, const KernelClass& k, ExtremalSign sign,
                         double tol = 1e-10);

} // namespace oracle
} // namespace nonloc
