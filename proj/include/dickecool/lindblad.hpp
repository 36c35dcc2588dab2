#pragma once

#include <optional>

#include "dickecool/su4.hpp"
#include "dickecool/types.hpp"

namespace dickecool {

/// Physical parameters of the spin master equation.
struct ModelParams {
  int n_qubits = 0;
  double gamma_cc = 0.0;   // collective cooling rate Gamma
  double gamma_t2 = 0.0;   // single-spin dephasing rate gamma
  double nbar = 0.0;       // mean thermal photon number
  std::optional<double> lambda;  // sweep parameter when gamma_t2 = lambda*N*Gamma

  /// gamma_t2 fixed through the sweep convention gamma = lambda * N * Gamma.
  static ModelParams with_lambda(int n_qubits, double gamma_cc, double lambda,
                                 double nbar = 0.0);

  /// C = Gamma N / gamma; throws on gamma = 0.
  double cooperativity() const;

  void validate() const;
};

/// Cavity side of the Tavis-Cummings model.
struct CavityParams {
  double g = 0.0;       // spin-cavity coupling
  double kappa = 0.0;   // cavity decay rate
  int n_levels = 4;     // Fock truncation
  double nbar = 0.0;    // cavity thermal occupancy

  double cooling_rate() const { return 4.0 * g * g / kappa; }
  bool markovian(int n_qubits) const;
  void validate() const;
};

/// D[J+-] expanded in SU(4) products; the building block shared by the
/// cavity-cooling dissipator and the Magnus machinery.
SparseSuperoperator collective_jump_dissipator(const GeneratorCatalog& catalog, int sign);

/// Gamma (1+nbar) D[J-] + Gamma nbar D[J+].
SparseSuperoperator dissipator_cavity_cooling(const GeneratorCatalog& catalog,
                                              double gamma_cc, double nbar);

/// gamma sum_j D[sigma_z^(j)/2]; diagonal with eigenvalue -gamma (n2+n3)/2.
SparseSuperoperator dissipator_local_dephasing(const GeneratorCatalog& catalog,
                                               double gamma_t2);

/// sum_j D[sigma_+-^(j)] = Q_+- +- Q_3 - (N/2) I.
SparseSuperoperator dissipator_local_t1(const GeneratorCatalog& catalog, int sign);

/// D[J_z] = -2 Sigma_3^2.
SparseSuperoperator dissipator_collective_t2(const GeneratorCatalog& catalog);

/// D_cc + D_T2, the spin-only master equation generator.
SparseSuperoperator generator_spin_master_equation(const GeneratorCatalog& catalog,
                                                   const ModelParams& params);

/// Composite-space generator of the full Tavis-Cummings master equation
/// with cavity dissipation and local spin dephasing, together with its
/// observable covectors. Layout: index = spin_index * n_levels^2 +
/// (cavity_ket * n_levels + cavity_bra), cavity index fastest.
struct SpinCavitySystem {
  SparseSuperoperator generator;
  CVector trace;       // Tr over spin and cavity
  CVector jz;          // <Jz> (x) cavity trace
  CVector top_level;   // population of the highest Fock level
  HermitianPairing pairing;  // joint spin/cavity conjugation pairing
  std::int64_t dim = 0;
  int n_levels = 0;
};

SpinCavitySystem generator_spin_cavity(const GeneratorCatalog& catalog,
                                       const CavityParams& cavity, double gamma_t2);

/// Joint state: spin state (x) cavity Fock level |n><n|.
CVector compose_spin_cavity_state(const SymState& spin, int n_levels, int fock_level = 0);

}  // namespace dickecool
