#pragma once

#include <array>
#include <vector>

#include "dickecool/site_ops.hpp"
#include "dickecool/types.hpp"

namespace dickecool {

/// Occupation multi-index (n1, n2, n3, n4) over the four doubled-site modes,
/// n1 + n2 + n3 + n4 = N.
using MultiIndex = std::array<int, 4>;

/// Enumeration of the totally symmetric 4-mode subspace for N qubits.
///
/// States are ordered lexicographically descending in (n1, n2, n3), so the
/// all-up state (N,0,0,0) is index 0 and the ground state (0,0,0,N) is the
/// last index. The basis vectors are the bosonic-normalized symmetrized
/// doubled-space states, which are orthonormal under the Hilbert-Schmidt
/// inner product.
class OccupationBasis {
 public:
  static constexpr int kMaxQubits = 200;

  static OccupationBasis build(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::int64_t size() const { return static_cast<std::int64_t>(states_.size()); }
  const MultiIndex& state(std::int64_t index) const { return states_[static_cast<size_t>(index)]; }
  const std::vector<MultiIndex>& states() const { return states_; }

  /// Closed-form rank of a multi-index in the enumeration order.
  std::int64_t index_of(const MultiIndex& n) const;

 private:
  int n_qubits_ = 0;
  std::vector<MultiIndex> states_;
};

/// Complex coefficient vector over an OccupationBasis representing a
/// vectorized ensemble density matrix. Non-owning: the basis must outlive
/// the state.
struct SymState {
  const OccupationBasis* basis = nullptr;
  CVector coeffs;
};

/// Collective superoperator sum_j O^(j) of a single-site doubled operator,
/// realized as the bosonic one-body operator sum_{ab} O_ab adag_a a_b.
SparseSuperoperator lift_one_body(const OccupationBasis& basis,
                                  const SiteDoubledOperator& site_op);

SparseSuperoperator identity_super(const OccupationBasis& basis);

/// Covector evaluating Tr[rho]: sqrt(C(N,k)) at (k, 0, 0, N-k).
CVector trace_covector(const OccupationBasis& basis);

/// Covector evaluating <Jz>: (k - N/2) sqrt(C(N,k)) at (k, 0, 0, N-k).
CVector observable_covector_jz(const OccupationBasis& basis);

SymState state_maximally_mixed(const OccupationBasis& basis);
SymState state_ground(const OccupationBasis& basis);
SymState state_all_up(const OccupationBasis& basis);

/// Tr rho^2; equals the squared Euclidean norm of the coefficients.
double purity(const SymState& state);

/// Max |c(n1,n2,n3,n4) - conj(c(n1,n3,n2,n4))|; zero for Hermitian rho.
double hermiticity_defect(const SymState& state);

/// partner[i] = index of the mode-2/3-swapped state; the conjugation pairing
/// of the Hermiticity symmetry.
std::vector<std::int64_t> hermitian_partner_indices(const OccupationBasis& basis);

}  // namespace dickecool
