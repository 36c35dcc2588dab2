#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace dickecool {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Sparse complex linear operator acting on vectorized-state coordinates.
/// Every Liouvillian, SU(4) generator and dissipator in this library is one.
using SparseSuperoperator = Eigen::SparseMatrix<Complex>;
using RowMajorSparse = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<Complex>;

/// Conjugation pairing of the Hermiticity symmetry: partner[i] is the
/// coordinate carrying the complex-conjugate coefficient for Hermitian
/// states (an involution).
using HermitianPairing = std::vector<std::int64_t>;

/// Invalid arguments to a builder (bad N, dimension mismatch, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical method failed to converge or produced unusable output.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Binomial coefficient as a double. Exact in integer range, smooth
/// multiplicative evaluation beyond it (safe up to N = 200).
double binomial(int n, int k);

/// Dimension of the totally symmetric 4-mode subspace: (N+1)(N+2)(N+3)/6.
std::int64_t symmetric_dimension(int n_qubits);

/// Operator-dimension cap from DICKECOOL_MAX_DIM (0 = uncapped).
std::int64_t max_dimension_cap();

/// Throws ParameterError if `dim` exceeds the configured cap.
void check_dimension_cap(std::int64_t dim, const std::string& what);

}  // namespace dickecool
