#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dickecool/types.hpp"

namespace dickecool::checks {

struct CheckResult {
  std::string suite;
  std::string name;
  int n_qubits = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CheckReport {
  std::vector<CheckResult> results;

  bool all_pass() const;
  void append(const CheckReport& other);
};

/// SU(4) commutation table, subalgebra, linear-dependence and adjoint checks.
CheckReport su4_algebra(int n_qubits, double tolerance = 1e-12);

/// Local/collective T1 and T2 dissipator identities against the dense
/// brute-force construction, plus trace annihilation and Hermiticity
/// preservation of every generator. Requires N <= 4.
CheckReport dissipator_identities(int n_qubits, double tolerance = 1e-12);

/// Interaction-frame machinery: A/B eigencommutators, the secular dissipator
/// product form, quadrature vs closed-form average, the nested-commutator
/// recursion, the adjoint action on |Jz>, and the commutation of the average
/// dissipator with the dephasing dissipator.
CheckReport magnus_relations(int n_qubits, double tolerance = 1e-12);

/// Symmetric-subspace vs full-space propagation of the spin master equation,
/// and the embedded-generator equality V^dag L_full V = L_sym. N <= 4.
CheckReport oracle_equivalence(int n_qubits, double generator_tol = 1e-12,
                               double propagation_tol = 1e-8);

/// Tavis-Cummings suppression quadrature (single site, 2-level cavity).
CheckReport tc_suppression(double tolerance = 1e-10);

enum class Level { Fast, Full };

/// fast: N <= 2 identities. full: adds N = 3 algebra/identities and
/// N in {2,3,4} oracle equivalence.
CheckReport run_verification(Level level);

void print_report(const CheckReport& report, std::ostream& out);
std::string report_to_json(const CheckReport& report);

}  // namespace dickecool::checks
