#pragma once

#include <vector>

#include "dickecool/basis.hpp"
#include "dickecool/site_ops.hpp"
#include "dickecool/types.hpp"

namespace dickecool::oracle {

// Dense, unoptimized reference constructions on the full 4^N vectorized
// space. Deliberately an independent code path from the symmetric-subspace
// machinery; capped at N = 4.

constexpr int kMaxQubits = 4;

/// One term of a Lindblad generator: -i rate [op, .] or rate D[op].
struct Term {
  enum class Kind { Hamiltonian, Dissipator };
  Kind kind;
  CMatrix op;    // operator on the 2^N-dim Hilbert space
  double rate;   // prefactor (Hamiltonian terms use rate * op)
};

inline Term hamiltonian_term(CMatrix op, double rate = 1.0) {
  return {Term::Kind::Hamiltonian, std::move(op), rate};
}

inline Term dissipator_term(CMatrix op, double rate = 1.0) {
  return {Term::Kind::Dissipator, std::move(op), rate};
}

/// Embed a 2x2 operator at one site of the N-qubit Hilbert space.
CMatrix site_operator(int n_qubits, int site, const Matrix2& op);

/// sum_j op^(j).
CMatrix collective_operator(int n_qubits, const Matrix2& op);

CMatrix collective_jz(int n_qubits);
CMatrix collective_jplus(int n_qubits);
CMatrix collective_jminus(int n_qubits);

/// Dense Liouvillian on the 4^N-dim vectorized space assembled term by term.
CMatrix full_liouvillian(int n_qubits, const std::vector<Term>& terms);

/// sum_j D[op^(j)] assembled per site (independent route from
/// full_liouvillian over a precomputed collective operator).
CMatrix local_dissipator_sum(int n_qubits, const Matrix2& op, double rate = 1.0);

/// Isometry from symmetric-subspace coordinates into the full vectorized
/// space; columns are the normalized symmetrized doubled-space vectors.
CMatrix embedding(const OccupationBasis& basis);

/// Full-space covectors for Tr[rho] and <Jz>.
CVector trace_covector_full(int n_qubits);
CVector jz_covector_full(int n_qubits);

/// Full-space vectorization of the maximally mixed density matrix.
CVector maximally_mixed_full(int n_qubits);

}  // namespace dickecool::oracle
