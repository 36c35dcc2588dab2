#include "dickecool/oracle.hpp"

#include <cmath>

namespace dickecool::oracle {

namespace {

void require_small(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw ParameterError("oracle: N must be in [1, " + std::to_string(kMaxQubits) + "]");
  }
}

// Next multi-site assignment in lexicographic order; digits[j] in [0, 4).
bool next_assignment(std::vector<int>& digits) {
  for (int j = static_cast<int>(digits.size()) - 1; j >= 0; --j) {
    if (++digits[j] < 4) return true;
    digits[j] = 0;
  }
  return false;
}

}  // namespace

CMatrix site_operator(int n_qubits, int site, const Matrix2& op) {
  require_small(n_qubits);
  CMatrix result = CMatrix::Ones(1, 1);
  for (int j = 0; j < n_qubits; ++j) {
    const CMatrix factor = (j == site) ? CMatrix(op) : CMatrix(Matrix2::Identity());
    CMatrix next(result.rows() * 2, result.cols() * 2);
    for (Eigen::Index r = 0; r < result.rows(); ++r)
      for (Eigen::Index c = 0; c < result.cols(); ++c)
        next.block(r * 2, c * 2, 2, 2) = result(r, c) * factor;
    result = std::move(next);
  }
  return result;
}

CMatrix collective_operator(int n_qubits, const Matrix2& op) {
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (int j = 0; j < n_qubits; ++j) sum += site_operator(n_qubits, j, op);
  return sum;
}

CMatrix collective_jz(int n_qubits) {
  return 0.5 * collective_operator(n_qubits, sigma_z());
}

CMatrix collective_jplus(int n_qubits) {
  return collective_operator(n_qubits, sigma_plus());
}

CMatrix collective_jminus(int n_qubits) {
  return collective_operator(n_qubits, sigma_minus());
}

CMatrix full_liouvillian(int n_qubits, const std::vector<Term>& terms) {
  require_small(n_qubits);
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  CMatrix liouvillian = CMatrix::Zero(dim * dim, dim * dim);
  for (const Term& term : terms) {
    if (term.op.rows() != dim || term.op.cols() != dim) {
      throw ParameterError("full_liouvillian: term dimension mismatch");
    }
    switch (term.kind) {
      case Term::Kind::Hamiltonian:
        liouvillian += term.rate * commutator_super(term.op);
        break;
      case Term::Kind::Dissipator:
        liouvillian += term.rate * dissipator_super(term.op);
        break;
    }
  }
  return liouvillian;
}

CMatrix local_dissipator_sum(int n_qubits, const Matrix2& op, double rate) {
  require_small(n_qubits);
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  CMatrix sum = CMatrix::Zero(dim * dim, dim * dim);
  for (int j = 0; j < n_qubits; ++j) {
    sum += rate * dissipator_super(site_operator(n_qubits, j, op));
  }
  return sum;
}

CMatrix embedding(const OccupationBasis& basis) {
  const int n_qubits = basis.n_qubits();
  require_small(n_qubits);
  const Eigen::Index hilbert = Eigen::Index(1) << n_qubits;
  CMatrix isometry = CMatrix::Zero(hilbert * hilbert, basis.size());

  // Walk every assignment of one doubled-site mode per site; each
  // contributes one full-space coordinate to the column of its multi-index.
  std::vector<int> modes(static_cast<size_t>(n_qubits), 0);
  do {
    MultiIndex counts = {0, 0, 0, 0};
    Eigen::Index ket = 0, bra = 0;
    for (int j = 0; j < n_qubits; ++j) {
      const int m = modes[static_cast<size_t>(j)];
      ++counts[m];
      const int ket_bit = (m >> 1) & 1;  // mode = 2*i_ket + j_bra
      const int bra_bit = m & 1;
      ket = ket * 2 + ket_bit;
      bra = bra * 2 + bra_bit;
    }
    double norm = 1.0;  // sqrt(prod n_m! / N!) via inverse multinomial
    double multinomial = 1.0;
    {
      int placed = 0;
      for (int m = 0; m < 4; ++m) {
        for (int r = 1; r <= counts[m]; ++r) {
          ++placed;
          multinomial *= double(placed) / double(r);
        }
      }
      norm = 1.0 / std::sqrt(multinomial);
    }
    isometry(ket * hilbert + bra, basis.index_of(counts)) += norm;
  } while (next_assignment(modes));

  return isometry;
}

CVector trace_covector_full(int n_qubits) {
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  return trace_covector_dense(static_cast<int>(dim));
}

CVector jz_covector_full(int n_qubits) {
  return observable_covector_dense(collective_jz(n_qubits));
}

CVector maximally_mixed_full(int n_qubits) {
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  return vectorize_density(CMatrix::Identity(dim, dim) / double(dim));
}

}  // namespace dickecool::oracle
