#include "dickecool/checks.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <random>

#include <json.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "dickecool/analytic.hpp"
#include "dickecool/basis.hpp"
#include "dickecool/lindblad.hpp"
#include "dickecool/magnus.hpp"
#include "dickecool/oracle.hpp"
#include "dickecool/propagate.hpp"
#include "dickecool/su4.hpp"

namespace dickecool::checks {

namespace {

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const SparseSuperoperator& m) {
  double worst = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseSuperoperator::InnerIterator it(m, k); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  return worst;
}

class Recorder {
 public:
  Recorder(CheckReport& report, std::string suite, int n_qubits, double tolerance)
      : report_(report), suite_(std::move(suite)), n_(n_qubits), tol_(tolerance) {}

  void operator()(const std::string& name, double deviation, double tolerance = -1.0) {
    const double tol = tolerance < 0.0 ? tol_ : tolerance;
    report_.results.push_back({suite_, name, n_, deviation, tol, deviation <= tol});
  }

 private:
  CheckReport& report_;
  std::string suite_;
  int n_;
  double tol_;
};

// Full-space spin master equation: Gamma(1+nbar) D[J-] + Gamma nbar D[J+]
// + gamma sum_j D[sigma_z/2].
CMatrix full_spin_master(int n, double gamma_cc, double nbar, double gamma_t2) {
  std::vector<oracle::Term> terms;
  terms.push_back(oracle::dissipator_term(oracle::collective_jminus(n), gamma_cc * (1.0 + nbar)));
  if (nbar > 0.0) {
    terms.push_back(oracle::dissipator_term(oracle::collective_jplus(n), gamma_cc * nbar));
  }
  CMatrix l = oracle::full_liouvillian(n, terms);
  if (gamma_t2 > 0.0) {
    l += oracle::local_dissipator_sum(n, Matrix2(0.5 * sigma_z()), gamma_t2);
  }
  return l;
}

}  // namespace

bool CheckReport::all_pass() const {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.pass; });
}

void CheckReport::append(const CheckReport& other) {
  results.insert(results.end(), other.results.begin(), other.results.end());
}

CheckReport su4_algebra(int n_qubits, double tolerance) {
  CheckReport report;
  const auto basis = OccupationBasis::build(n_qubits);
  const auto catalog = GeneratorCatalog::build(basis);
  const CommutationReport table = verify_commutation_table(catalog, tolerance);
  for (const auto& entry : table.entries) {
    report.results.push_back(
        {"su4", entry.name, n_qubits, entry.max_deviation, tolerance, entry.pass});
  }
  return report;
}

CheckReport dissipator_identities(int n_qubits, double tolerance) {
  CheckReport report;
  Recorder record(report, "identities", n_qubits, tolerance);

  const auto basis = OccupationBasis::build(n_qubits);
  const auto catalog = GeneratorCatalog::build(basis);
  const CMatrix isometry = oracle::embedding(basis);
  const auto reduce = [&](const CMatrix& full) -> CMatrix {
    return isometry.adjoint() * full * isometry;
  };

  record("embedding isometry V^dag V = I",
         max_abs(CMatrix(isometry.adjoint() * isometry -
                         CMatrix::Identity(basis.size(), basis.size()))));

  // Dissipator identities against per-site / collective brute force.
  record("local T2: M3 - Q3/2 - Sigma3/2 - N/4",
         max_abs(reduce(oracle::local_dissipator_sum(n_qubits, Matrix2(0.5 * sigma_z()))) -
                 CMatrix(dissipator_local_dephasing(catalog, 1.0))));
  record("local T1(+): Q+ + Q3 - N/2",
         max_abs(reduce(oracle::local_dissipator_sum(n_qubits, sigma_plus())) -
                 CMatrix(dissipator_local_t1(catalog, +1))));
  record("local T1(-): Q- - Q3 - N/2",
         max_abs(reduce(oracle::local_dissipator_sum(n_qubits, sigma_minus())) -
                 CMatrix(dissipator_local_t1(catalog, -1))));
  record("collective T2: D[Jz] = -2 Sigma3^2",
         max_abs(reduce(CMatrix(dissipator_super(oracle::collective_jz(n_qubits)))) -
                 CMatrix(dissipator_collective_t2(catalog))));
  record("collective T1(+): D[J+] product form",
         max_abs(reduce(CMatrix(dissipator_super(oracle::collective_jplus(n_qubits)))) -
                 CMatrix(collective_jump_dissipator(catalog, +1))));
  record("collective T1(-): D[J-] product form",
         max_abs(reduce(CMatrix(dissipator_super(oracle::collective_jminus(n_qubits)))) -
                 CMatrix(collective_jump_dissipator(catalog, -1))));

  // Trace annihilation and Hermiticity preservation for the assembled
  // generators at a representative parameter point.
  const ModelParams params = ModelParams::with_lambda(n_qubits, 1.0, 1.0, 0.5);
  const SparseSuperoperator l = generator_spin_master_equation(catalog, params);
  const CVector trace = trace_covector(basis);
  record("trace covector annihilates L", (l.transpose() * trace).cwiseAbs().maxCoeff());

  std::mt19937 rng(12345);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SymState random_state{&basis, CVector(basis.size())};
  for (Eigen::Index i = 0; i < basis.size(); ++i) {
    random_state.coeffs(i) = Complex(gauss(rng), gauss(rng));
  }
  // Symmetrize, then check L preserves the Hermiticity symmetry.
  SymState sym = random_state;
  for (Eigen::Index i = 0; i < basis.size(); ++i) {
    const MultiIndex& idx = basis.state(i);
    const Eigen::Index j = basis.index_of({idx[0], idx[2], idx[1], idx[3]});
    sym.coeffs(i) = 0.5 * (random_state.coeffs(i) + std::conj(random_state.coeffs(j)));
  }
  SymState image{&basis, l * sym.coeffs};
  record("L preserves Hermiticity symmetry", hermiticity_defect(image));

  // Ground state is a fixed point for nbar = 0.
  const ModelParams cold = ModelParams::with_lambda(n_qubits, 1.0, 1.0, 0.0);
  const SparseSuperoperator l_cold = generator_spin_master_equation(catalog, cold);
  record("ground state fixed point (nbar=0)",
         (l_cold * state_ground(basis).coeffs).cwiseAbs().maxCoeff());

  return report;
}

CheckReport magnus_relations(int n_qubits, double tolerance) {
  CheckReport report;
  Recorder record(report, "magnus", n_qubits, tolerance);

  const auto basis = OccupationBasis::build(n_qubits);
  const auto catalog = GeneratorCatalog::build(basis);
  const double gamma = 0.7;  // any positive rate; relations are exact
  const SparseSuperoperator dephasing = dissipator_local_dephasing(catalog, gamma);
  auto commutator = [](const SparseSuperoperator& x, const SparseSuperoperator& y) {
    return SparseSuperoperator(x * y - y * x);
  };

  for (int sign : {+1, -1}) {
    const std::string tag = sign > 0 ? "+" : "-";
    const ABPair ab = build_AB(catalog, sign);
    record("[D_T2, A" + tag + "] = " + tag + "gamma A" + tag,
           max_abs(SparseSuperoperator(commutator(dephasing, ab.a) -
                                       SparseSuperoperator(sign * gamma * ab.a))));
    record("[D_T2, B" + tag + "] = " + (sign > 0 ? std::string("-") : std::string("+")) +
               "gamma B" + tag,
           max_abs(SparseSuperoperator(commutator(dephasing, ab.b) +
                                       SparseSuperoperator(sign * gamma * ab.b))));
    const SparseSuperoperator dj = collective_jump_dissipator(catalog, sign);
    record("Gbar" + tag + " product form = D[J" + tag + "] - A - B",
           max_abs(SparseSuperoperator(SparseSuperoperator(dj - ab.a - ab.b) -
                                       secular_dissipator_explicit(catalog, sign))));
    const auto nested = bch_nested_commutators(catalog, sign, gamma, 2);
    record("C1 = " + tag + "gamma A -+ gamma B",
           max_abs(SparseSuperoperator(
               nested[1] - SparseSuperoperator(sign * gamma * ab.a) +
               SparseSuperoperator(sign * gamma * ab.b))));
    record("C2 = gamma^2 (A + B)",
           max_abs(SparseSuperoperator(nested[2] -
                                       SparseSuperoperator(gamma * gamma * (ab.a + ab.b)))));
  }

  for (const double nbar : {0.0, 0.5}) {
    const ModelParams params = ModelParams::with_lambda(n_qubits, 1.0, 1.0, nbar);
    const SparseSuperoperator averaged = average_dissipator_first_order(catalog, params);
    const FrameGenerator frame(catalog, params);
    const std::string tag = " (nbar=" + std::to_string(nbar).substr(0, 3) + ")";

    record("G(0) = D_cc" + tag,
           max_abs(SparseSuperoperator(
               frame.evaluate(0.0) -
               dissipator_cavity_cooling(catalog, params.gamma_cc, params.nbar))));
    record("G periodic: G(T) = G(0)" + tag,
           max_abs(SparseSuperoperator(frame.evaluate(frame.period()) - frame.evaluate(0.0))));
    record("quadrature average = closed form" + tag,
           max_abs(SparseSuperoperator(frame.average_by_quadrature(64) - averaged)), 1e-10);
    record("[D_T2, Dbar1] = 0" + tag,
           max_abs(commutator(dissipator_local_dephasing(catalog, params.gamma_t2), averaged)));

    // Adjoint action: Dbar1^dag |Jz> = -Gamma(1+2nbar) (|Jz> + N/(2+4nbar) |1>).
    const CVector jz = observable_covector_jz(basis);
    const CVector unit = trace_covector(basis);
    const CVector lhs = SparseSuperoperator(averaged.adjoint()) * jz;
    const CVector rhs = -params.gamma_cc * (1.0 + 2.0 * nbar) *
                        (jz + (n_qubits / (2.0 + 4.0 * nbar)) * unit);
    record("Dbar1^dag |Jz> closed form" + tag, (lhs - rhs).cwiseAbs().maxCoeff());
  }

  return report;
}

CheckReport oracle_equivalence(int n_qubits, double generator_tol, double propagation_tol) {
  CheckReport report;
  Recorder record(report, "oracle", n_qubits, generator_tol);

  const auto basis = OccupationBasis::build(n_qubits);
  const auto catalog = GeneratorCatalog::build(basis);
  const CMatrix isometry = oracle::embedding(basis);

  for (const double nbar : {0.0, 0.5}) {
    for (const double lambda : {0.1, 1.0, 10.0}) {
      const ModelParams params = ModelParams::with_lambda(n_qubits, 1.0, lambda, nbar);
      const SparseSuperoperator l_sym = generator_spin_master_equation(catalog, params);
      const CMatrix l_full =
          full_spin_master(n_qubits, params.gamma_cc, params.nbar, params.gamma_t2);
      const std::string tag =
          " (nbar=" + std::to_string(nbar).substr(0, 3) +
          ", lambda=" + std::to_string(lambda).substr(0, 4) + ")";
      record("V^dag L_full V = L_sym" + tag,
             max_abs(CMatrix(isometry.adjoint() * l_full * isometry - CMatrix(l_sym))));

      // <Jz(t)> agreement between the reduced and full propagation.
      PropagationSpec spec;
      spec.t_grid = PropagationSpec::linear_grid(5.0, 26);
      spec.method = Method::DenseExpm;
      const Observables sym_obs{trace_covector(basis), observable_covector_jz(basis), {}};
      const TimeSeries sym_series =
          evolve(l_sym, state_maximally_mixed(basis).coeffs, spec, sym_obs);

      const Observables full_obs{oracle::trace_covector_full(n_qubits),
                                 oracle::jz_covector_full(n_qubits),
                                 {}};
      const TimeSeries full_series =
          evolve(SparseSuperoperator(l_full.sparseView()),
                 oracle::maximally_mixed_full(n_qubits), spec, full_obs);

      double worst = 0.0;
      for (size_t i = 0; i < sym_series.jz.size(); ++i) {
        worst = std::max(worst, std::abs(sym_series.jz[i] - full_series.jz[i]));
      }
      record("<Jz(t)> sym vs full" + tag, worst, propagation_tol);

      // Full-space propagation must stay inside the symmetric subspace.
      const CMatrix projector =
          CMatrix::Identity(isometry.rows(), isometry.rows()) - isometry * isometry.adjoint();
      const CMatrix propagator = (5.0 * l_full).exp();
      const CVector rho_t = propagator * oracle::maximally_mixed_full(n_qubits);
      record("full evolution stays symmetric" + tag, (projector * rho_t).norm(), 1e-9);
    }
  }
  return report;
}

CheckReport tc_suppression(double tolerance) {
  CheckReport report;
  const TcSuppressionReport tc = check_tc_suppression(1.3, 1.0, 2, tolerance);
  for (const auto& entry : tc.entries) {
    report.results.push_back({"tc-suppression", entry.name, 1, entry.max_deviation,
                              tolerance, entry.pass});
  }
  return report;
}

CheckReport run_verification(Level level) {
  CheckReport report;
  for (int n : {1, 2}) report.append(su4_algebra(n));
  report.append(dissipator_identities(2));
  report.append(magnus_relations(2));
  report.append(tc_suppression());
  if (level == Level::Full) {
    report.append(su4_algebra(3));
    report.append(dissipator_identities(3));
    report.append(magnus_relations(3));
    for (int n : {2, 3, 4}) report.append(oracle_equivalence(n));
  }
  return report;
}

void print_report(const CheckReport& report, std::ostream& out) {
  size_t pass = 0;
  for (const auto& r : report.results) pass += r.pass ? 1 : 0;
  out << std::left << std::setw(16) << "suite" << std::setw(52) << "check"
      << std::setw(4) << "N" << std::setw(12) << "deviation" << std::setw(12)
      << "tolerance" << "status\n";
  for (const auto& r : report.results) {
    out << std::left << std::setw(16) << r.suite << std::setw(52) << r.name
        << std::setw(4) << r.n_qubits << std::setw(12) << std::scientific
        << std::setprecision(2) << r.max_deviation << std::setw(12) << r.tolerance
        << (r.pass ? "pass" : "FAIL") << "\n";
  }
  out << pass << "/" << report.results.size() << " checks passed\n";
}

std::string report_to_json(const CheckReport& report) {
  nlohmann::json out;
  out["checks"] = nlohmann::json::array();
  for (const auto& r : report.results) {
    out["checks"].push_back({{"suite", r.suite},
                             {"name", r.name},
                             {"n_qubits", r.n_qubits},
                             {"max_deviation", r.max_deviation},
                             {"tolerance", r.tolerance},
                             {"pass", r.pass}});
  }
  out["all_pass"] = report.all_pass();
  return out.dump(2);
}

}  // namespace dickecool::checks
