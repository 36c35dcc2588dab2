#pragma once

#include "dickecool/types.hpp"

namespace dickecool {

// Single-site operators act on the 2-dim Hilbert space ordered (|e>, |g>),
// sigma_z|e> = +|e>. The doubled (vectorized) site space is ordered by the
// four matrix units
//   mode 1: |e><e|   mode 2: |e><g|   mode 3: |g><e|   mode 4: |g><g|
// i.e. doubled index m = 2*i_ket + j_bra. Under column stacking the map
// rho -> A rho B^dagger then has matrix elements A(i,i') * conj(B(j,j')).

using Matrix2 = Eigen::Matrix2cd;

/// Dense 4x4 operator on a single site's doubled (ket (x) bra) space.
using SiteDoubledOperator = Eigen::Matrix4cd;

inline Matrix2 site_identity() { return Matrix2::Identity(); }

inline Matrix2 sigma_plus() {
  Matrix2 m = Matrix2::Zero();
  m(0, 1) = 1.0;
  return m;
}

inline Matrix2 sigma_minus() {
  Matrix2 m = Matrix2::Zero();
  m(1, 0) = 1.0;
  return m;
}

inline Matrix2 sigma_z() {
  Matrix2 m = Matrix2::Zero();
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

/// E+ = |e><e|, E- = |g><g|.
inline Matrix2 projector_e() {
  Matrix2 m = Matrix2::Zero();
  m(0, 0) = 1.0;
  return m;
}

inline Matrix2 projector_g() {
  Matrix2 m = Matrix2::Zero();
  m(1, 1) = 1.0;
  return m;
}

// Dense doubled-space builders for an arbitrary d-dim system (site d=2,
// truncated cavity, full N-qubit space). Doubled index = i_ket * d + j_bra.

/// Superoperator of rho -> A rho B^dagger.
CMatrix sandwich_super(const CMatrix& a, const CMatrix& b);

/// Superoperator of rho -> A rho.
CMatrix left_mult_super(const CMatrix& a);

/// Superoperator of rho -> rho B.
CMatrix right_mult_super(const CMatrix& b);

/// Lindblad dissipator D[L] rho = L rho L^dag - 1/2 {L^dag L, rho}.
CMatrix dissipator_super(const CMatrix& l);

/// Hamiltonian commutator superoperator rho -> -i [H, rho].
CMatrix commutator_super(const CMatrix& h);

/// Flatten a density matrix into doubled-space coordinates.
CVector vectorize_density(const CMatrix& rho);

/// Inverse of vectorize_density.
CMatrix unvectorize_density(const CVector& v);

/// Covector evaluating Tr[O rho] on doubled-space coordinates.
CVector observable_covector_dense(const CMatrix& o);

/// Covector evaluating Tr[rho].
CVector trace_covector_dense(int dim);

// 4x4 site-seed variants of the same constructions.

inline SiteDoubledOperator site_sandwich(const Matrix2& a, const Matrix2& b) {
  return sandwich_super(a, b);
}

inline SiteDoubledOperator site_left_mult(const Matrix2& a) {
  return left_mult_super(a);
}

inline SiteDoubledOperator site_right_mult(const Matrix2& b) {
  return right_mult_super(b);
}

inline SiteDoubledOperator site_dissipator(const Matrix2& l) {
  return dissipator_super(l);
}

inline SiteDoubledOperator site_commutator(const Matrix2& h) {
  return commutator_super(h);
}

/// Truncated Fock lowering operator, a|n> = sqrt(n)|n-1>.
CMatrix fock_lowering(int n_levels);

}  // namespace dickecool
