#pragma once

#include "dickecool/types.hpp"

namespace dickecool {

template <typename Scalar>
using RowSparse = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Row-parallel sparse matrix-vector product y = A x.
void sparse_matvec(const RowSparse<Complex>& a, const CVector& x, CVector& y);
void sparse_matvec(const RowSparse<double>& a, const RVector& x, RVector& y);

struct KrylovOptions {
  int subspace_dim = 30;     // Arnoldi dimension m
  double tol = 1e-9;         // error budget relative to the vector norm
  double breakdown_tol = 1e-7;
  double safety = 0.9;       // step-size safety factor
  double step_slack = 1.2;   // acceptance slack on the local error
  int max_rejections = 10;
  long max_steps = 2000000;  // stall guard for unreachable tolerances
};

struct KrylovStats {
  long steps = 0;
  long matvecs = 0;
  long rejections = 0;
  double error_estimate = 0.0;  // accumulated local error estimates
};

/// Approximates w = exp(t A) v by adaptive-step Arnoldi projection with the
/// corrected-Hessenberg local error estimate; DGKS-reorthogonalized blocked
/// Gram-Schmidt. Throws NumericalError when a step cannot reach the
/// requested tolerance. Real and complex instantiations are provided.
template <typename Scalar>
DenseVector<Scalar> krylov_expv(const RowSparse<Scalar>& a, const DenseVector<Scalar>& v,
                                double t, const KrylovOptions& options = {},
                                KrylovStats* stats = nullptr);

}  // namespace dickecool
