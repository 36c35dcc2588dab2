#include "dickecool/basis.hpp"

#include <cmath>

namespace dickecool {

OccupationBasis OccupationBasis::build(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw ParameterError("build_basis: N must be in [1, " + std::to_string(kMaxQubits) +
                         "], got " + std::to_string(n_qubits));
  }
  check_dimension_cap(symmetric_dimension(n_qubits), "build_basis");

  OccupationBasis basis;
  basis.n_qubits_ = n_qubits;
  basis.states_.reserve(static_cast<size_t>(symmetric_dimension(n_qubits)));
  for (int n1 = n_qubits; n1 >= 0; --n1)
    for (int n2 = n_qubits - n1; n2 >= 0; --n2)
      for (int n3 = n_qubits - n1 - n2; n3 >= 0; --n3)
        basis.states_.push_back({n1, n2, n3, n_qubits - n1 - n2 - n3});
  return basis;
}

std::int64_t OccupationBasis::index_of(const MultiIndex& n) const {
  const std::int64_t q = n_qubits_ - n[0];  // remaining after n1
  const std::int64_t s = q - n[1];          // remaining after n2
  return q * (q + 1) * (q + 2) / 6 + s * (s + 1) / 2 + (s - n[2]);
}

SparseSuperoperator lift_one_body(const OccupationBasis& basis,
                                  const SiteDoubledOperator& site_op) {
  const std::int64_t dim = basis.size();
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<size_t>(dim) * 4);

  for (std::int64_t col = 0; col < dim; ++col) {
    const MultiIndex& n = basis.state(col);
    Complex diag = 0.0;
    for (int alpha = 0; alpha < 4; ++alpha) {
      for (int beta = 0; beta < 4; ++beta) {
        const Complex amp = site_op(alpha, beta);
        if (amp == Complex(0.0, 0.0)) continue;
        if (alpha == beta) {
          diag += amp * double(n[alpha]);
        } else if (n[beta] > 0) {
          MultiIndex m = n;
          --m[beta];
          ++m[alpha];
          const double factor = std::sqrt(double(n[alpha] + 1) * double(n[beta]));
          triplets.emplace_back(basis.index_of(m), col, amp * factor);
        }
      }
    }
    if (diag != Complex(0.0, 0.0)) triplets.emplace_back(col, col, diag);
  }

  SparseSuperoperator op(dim, dim);
  op.setFromTriplets(triplets.begin(), triplets.end());
  return op;
}

SparseSuperoperator identity_super(const OccupationBasis& basis) {
  SparseSuperoperator id(basis.size(), basis.size());
  id.setIdentity();
  return id;
}

CVector trace_covector(const OccupationBasis& basis) {
  const int n_qubits = basis.n_qubits();
  CVector cov = CVector::Zero(basis.size());
  for (int k = 0; k <= n_qubits; ++k) {
    const MultiIndex n = {k, 0, 0, n_qubits - k};
    cov(basis.index_of(n)) = std::sqrt(binomial(n_qubits, k));
  }
  return cov;
}

CVector observable_covector_jz(const OccupationBasis& basis) {
  const int n_qubits = basis.n_qubits();
  CVector cov = CVector::Zero(basis.size());
  for (int k = 0; k <= n_qubits; ++k) {
    const MultiIndex n = {k, 0, 0, n_qubits - k};
    cov(basis.index_of(n)) = (k - 0.5 * n_qubits) * std::sqrt(binomial(n_qubits, k));
  }
  return cov;
}

SymState state_maximally_mixed(const OccupationBasis& basis) {
  const int n_qubits = basis.n_qubits();
  SymState state{&basis, CVector::Zero(basis.size())};
  const double scale = std::pow(2.0, -double(n_qubits));
  for (int k = 0; k <= n_qubits; ++k) {
    const MultiIndex n = {k, 0, 0, n_qubits - k};
    state.coeffs(basis.index_of(n)) = scale * std::sqrt(binomial(n_qubits, k));
  }
  return state;
}

SymState state_ground(const OccupationBasis& basis) {
  SymState state{&basis, CVector::Zero(basis.size())};
  state.coeffs(basis.index_of({0, 0, 0, basis.n_qubits()})) = 1.0;
  return state;
}

SymState state_all_up(const OccupationBasis& basis) {
  SymState state{&basis, CVector::Zero(basis.size())};
  state.coeffs(basis.index_of({basis.n_qubits(), 0, 0, 0})) = 1.0;
  return state;
}

double purity(const SymState& state) { return state.coeffs.squaredNorm(); }

double hermiticity_defect(const SymState& state) {
  const OccupationBasis& basis = *state.basis;
  double worst = 0.0;
  for (std::int64_t i = 0; i < basis.size(); ++i) {
    const MultiIndex& n = basis.state(i);
    const std::int64_t j = basis.index_of({n[0], n[2], n[1], n[3]});
    worst = std::max(worst, std::abs(state.coeffs(i) - std::conj(state.coeffs(j))));
  }
  return worst;
}

std::vector<std::int64_t> hermitian_partner_indices(const OccupationBasis& basis) {
  std::vector<std::int64_t> partner(static_cast<size_t>(basis.size()));
  for (std::int64_t i = 0; i < basis.size(); ++i) {
    const MultiIndex& n = basis.state(i);
    partner[static_cast<size_t>(i)] = basis.index_of({n[0], n[2], n[1], n[3]});
  }
  return partner;
}

}  // namespace dickecool
