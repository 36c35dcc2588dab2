#include "dickecool/lindblad.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace dickecool {

namespace {

Component plus_or_minus(int sign) {
  if (sign == +1) return Component::Plus;
  if (sign == -1) return Component::Minus;
  throw ParameterError("sign must be +1 or -1");
}

}  // namespace

ModelParams ModelParams::with_lambda(int n_qubits, double gamma_cc, double lambda,
                                     double nbar) {
  ModelParams p;
  p.n_qubits = n_qubits;
  p.gamma_cc = gamma_cc;
  p.lambda = lambda;
  p.gamma_t2 = lambda * n_qubits * gamma_cc;
  p.nbar = nbar;
  p.validate();
  return p;
}

double ModelParams::cooperativity() const {
  if (gamma_t2 == 0.0) throw ParameterError("cooperativity undefined for gamma = 0");
  return gamma_cc * n_qubits / gamma_t2;
}

void ModelParams::validate() const {
  if (n_qubits < 1) throw ParameterError("ModelParams: N must be positive");
  if (gamma_cc < 0.0 || gamma_t2 < 0.0 || nbar < 0.0) {
    throw ParameterError("ModelParams: rates and nbar must be non-negative");
  }
  if (lambda && gamma_t2 != *lambda * n_qubits * gamma_cc) {
    throw ParameterError("ModelParams: gamma_t2 inconsistent with lambda sweep");
  }
}

bool CavityParams::markovian(int n_qubits) const {
  return kappa >= 10.0 * g * std::sqrt(double(n_qubits));
}

void CavityParams::validate() const {
  if (n_levels < 2) throw ParameterError("CavityParams: need at least 2 levels");
  if (g < 0.0 || kappa < 0.0 || nbar < 0.0) {
    throw ParameterError("CavityParams: rates must be non-negative");
  }
}

SparseSuperoperator collective_jump_dissipator(const GeneratorCatalog& catalog, int sign) {
  const Component same = plus_or_minus(sign);
  const Component opp = plus_or_minus(-sign);

  const SparseSuperoperator uv_s = catalog.op(Family::U, same) + catalog.op(Family::V, same);
  const SparseSuperoperator uv_o = catalog.op(Family::U, opp) + catalog.op(Family::V, opp);
  const SparseSuperoperator mn_s = catalog.op(Family::M, same) + catalog.op(Family::N, same);
  const SparseSuperoperator mn_o = catalog.op(Family::M, opp) + catalog.op(Family::N, opp);

  SparseSuperoperator d = uv_s * mn_s;
  d -= SparseSuperoperator(0.5 * (uv_o * uv_s));
  d -= SparseSuperoperator(0.5 * (mn_o * mn_s));
  d.prune(Complex(0.0), 0.0);
  return d;
}

SparseSuperoperator dissipator_cavity_cooling(const GeneratorCatalog& catalog,
                                              double gamma_cc, double nbar) {
  if (gamma_cc < 0.0 || nbar < 0.0) {
    throw ParameterError("dissipator_cavity_cooling: rates must be non-negative");
  }
  SparseSuperoperator d = gamma_cc * (1.0 + nbar) * collective_jump_dissipator(catalog, -1);
  if (nbar > 0.0) {
    d += SparseSuperoperator(gamma_cc * nbar * collective_jump_dissipator(catalog, +1));
  }
  return d;
}

SparseSuperoperator dissipator_local_dephasing(const GeneratorCatalog& catalog,
                                               double gamma_t2) {
  if (gamma_t2 < 0.0) throw ParameterError("dissipator_local_dephasing: gamma < 0");
  const double n = catalog.basis().n_qubits();
  SparseSuperoperator d = catalog.op(Family::M, Component::Three);
  d -= SparseSuperoperator(0.5 * catalog.op(Family::Q, Component::Three));
  d -= SparseSuperoperator(0.5 * catalog.op(Family::Sigma, Component::Three));
  d -= SparseSuperoperator((n / 4.0) * identity_super(catalog.basis()));
  d = gamma_t2 * d;
  d.prune(Complex(0.0), 0.0);
  return d;
}

SparseSuperoperator dissipator_local_t1(const GeneratorCatalog& catalog, int sign) {
  // sum_j D[sigma_+-] = Q_+- +- Q_3 - (N/2) I in the half-convention
  // D[L] rho = L rho L^dag - {L^dag L, rho}/2 used throughout.
  const double n = catalog.basis().n_qubits();
  SparseSuperoperator d = catalog.op(Family::Q, plus_or_minus(sign));
  if (sign > 0) {
    d += catalog.op(Family::Q, Component::Three);
  } else {
    d -= catalog.op(Family::Q, Component::Three);
  }
  d -= SparseSuperoperator((n / 2.0) * identity_super(catalog.basis()));
  d.prune(Complex(0.0), 0.0);
  return d;
}

SparseSuperoperator dissipator_collective_t2(const GeneratorCatalog& catalog) {
  const SparseSuperoperator& s3 = catalog.op(Family::Sigma, Component::Three);
  return SparseSuperoperator(-2.0 * (s3 * s3));
}

SparseSuperoperator generator_spin_master_equation(const GeneratorCatalog& catalog,
                                                   const ModelParams& params) {
  params.validate();
  if (params.n_qubits != catalog.basis().n_qubits()) {
    throw ParameterError("generator_spin_master_equation: catalog/params N mismatch");
  }
  SparseSuperoperator l = dissipator_cavity_cooling(catalog, params.gamma_cc, params.nbar);
  if (params.gamma_t2 > 0.0) {
    l += dissipator_local_dephasing(catalog, params.gamma_t2);
  }
  return l;
}

SpinCavitySystem generator_spin_cavity(const GeneratorCatalog& catalog,
                                       const CavityParams& cavity, double gamma_t2) {
  cavity.validate();
  if (gamma_t2 < 0.0) throw ParameterError("generator_spin_cavity: gamma < 0");

  const OccupationBasis& basis = catalog.basis();
  const int dc = cavity.n_levels;
  const std::int64_t cav_dim = std::int64_t(dc) * dc;
  const std::int64_t dim = basis.size() * cav_dim;
  check_dimension_cap(dim, "generator_spin_cavity");

  // Spin-side left/right multiplication superoperators of J+-.
  const SparseSuperoperator left_jp = catalog.op(Family::M, Component::Plus) +
                                      catalog.op(Family::N, Component::Plus);
  const SparseSuperoperator left_jm = catalog.op(Family::M, Component::Minus) +
                                      catalog.op(Family::N, Component::Minus);
  const SparseSuperoperator right_jp = catalog.op(Family::U, Component::Minus) +
                                       catalog.op(Family::V, Component::Minus);
  const SparseSuperoperator right_jm = catalog.op(Family::U, Component::Plus) +
                                       catalog.op(Family::V, Component::Plus);

  // Cavity-side superoperators on the doubled Fock space.
  const CMatrix a = fock_lowering(dc);
  const CMatrix ad = a.adjoint();
  auto sparse_cav = [](const CMatrix& m) { return SparseSuperoperator(m.sparseView()); };
  const SparseSuperoperator left_a = sparse_cav(left_mult_super(a));
  const SparseSuperoperator left_ad = sparse_cav(left_mult_super(ad));
  const SparseSuperoperator right_a = sparse_cav(right_mult_super(a));
  const SparseSuperoperator right_ad = sparse_cav(right_mult_super(ad));

  CMatrix cav_diss = cavity.kappa * (1.0 + cavity.nbar) * dissipator_super(a);
  if (cavity.nbar > 0.0) cav_diss += cavity.kappa * cavity.nbar * dissipator_super(ad);

  SparseSuperoperator spin_id = identity_super(basis);
  SparseSuperoperator cav_id(cav_dim, cav_dim);
  cav_id.setIdentity();

  // -i [H_TC, rho] with H_TC = g (J+ a + J- adag).
  const Complex mi(0.0, -1.0);
  SparseSuperoperator l =
      SparseSuperoperator(Eigen::kroneckerProduct(left_jp, left_a)) +
      SparseSuperoperator(Eigen::kroneckerProduct(left_jm, left_ad)) -
      SparseSuperoperator(Eigen::kroneckerProduct(right_jp, right_a)) -
      SparseSuperoperator(Eigen::kroneckerProduct(right_jm, right_ad));
  l = (mi * cavity.g) * l;

  l += SparseSuperoperator(Eigen::kroneckerProduct(spin_id, sparse_cav(cav_diss)));
  if (gamma_t2 > 0.0) {
    l += SparseSuperoperator(
        Eigen::kroneckerProduct(dissipator_local_dephasing(catalog, gamma_t2), cav_id));
  }
  l.prune(Complex(0.0), 0.0);

  SpinCavitySystem system;
  system.generator = std::move(l);
  system.dim = dim;
  system.n_levels = dc;

  const CVector spin_trace = trace_covector(basis);
  const CVector spin_jz = observable_covector_jz(basis);
  const CVector cav_trace = trace_covector_dense(dc);
  CVector top = CVector::Zero(cav_dim);
  top((std::int64_t(dc) - 1) * dc + (dc - 1)) = 1.0;

  auto kron_vec = [cav_dim](const CVector& spin, const CVector& cav) {
    CVector out(spin.size() * cav_dim);
    for (Eigen::Index s = 0; s < spin.size(); ++s)
      out.segment(s * cav_dim, cav_dim) = spin(s) * cav;
    return out;
  };
  system.trace = kron_vec(spin_trace, cav_trace);
  system.jz = kron_vec(spin_jz, cav_trace);
  system.top_level = kron_vec(spin_trace, top);

  const auto spin_pairing = hermitian_partner_indices(basis);
  system.pairing.resize(static_cast<size_t>(dim));
  for (std::int64_t s = 0; s < basis.size(); ++s) {
    for (int i = 0; i < dc; ++i) {
      for (int j = 0; j < dc; ++j) {
        system.pairing[static_cast<size_t>(s * cav_dim + i * dc + j)] =
            spin_pairing[static_cast<size_t>(s)] * cav_dim + std::int64_t(j) * dc + i;
      }
    }
  }
  return system;
}

CVector compose_spin_cavity_state(const SymState& spin, int n_levels, int fock_level) {
  if (fock_level < 0 || fock_level >= n_levels) {
    throw ParameterError("compose_spin_cavity_state: fock level out of range");
  }
  const std::int64_t cav_dim = std::int64_t(n_levels) * n_levels;
  CVector out = CVector::Zero(spin.coeffs.size() * cav_dim);
  const std::int64_t offset = std::int64_t(fock_level) * n_levels + fock_level;
  for (Eigen::Index s = 0; s < spin.coeffs.size(); ++s) {
    out(s * cav_dim + offset) = spin.coeffs(s);
  }
  return out;
}

}  // namespace dickecool
