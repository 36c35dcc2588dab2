#include <doctest.h>

#include "dickecool/analytic.hpp"
#include "dickecool/basis.hpp"
#include "dickecool/lindblad.hpp"
#include "dickecool/magnus.hpp"
#include "dickecool/propagate.hpp"
#include "dickecool/su4.hpp"

using namespace dickecool;

namespace {

double max_abs(const SparseSuperoperator& m) {
  double worst = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseSuperoperator::InnerIterator it(m, k); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  return worst;
}

SparseSuperoperator commutator(const SparseSuperoperator& a, const SparseSuperoperator& b) {
  return SparseSuperoperator(a * b - b * a);
}

}  // namespace

TEST_SUITE("magnus") {

TEST_CASE("A and B are eigenoperators of the dephasing commutator") {
  const auto basis = OccupationBasis::build(2);
  const auto catalog = GeneratorCatalog::build(basis);
  const double gamma = 1.9;
  const SparseSuperoperator dephasing = dissipator_local_dephasing(catalog, gamma);
  for (int sign : {+1, -1}) {
    const ABPair ab = build_AB(catalog, sign);
    CHECK(max_abs(SparseSuperoperator(commutator(dephasing, ab.a) -
                                      SparseSuperoperator(sign * gamma * ab.a))) < 1e-12);
    CHECK(max_abs(SparseSuperoperator(commutator(dephasing, ab.b) +
                                      SparseSuperoperator(sign * gamma * ab.b))) < 1e-12);
  }
}

TEST_CASE("secular dissipator: D[J] - A - B equals the explicit product form") {
  const auto basis = OccupationBasis::build(3);
  const auto catalog = GeneratorCatalog::build(basis);
  for (int sign : {+1, -1}) {
    const ABPair ab = build_AB(catalog, sign);
    const SparseSuperoperator direct(collective_jump_dissipator(catalog, sign) - ab.a -
                                     ab.b);
    CHECK(max_abs(SparseSuperoperator(direct - secular_dissipator_explicit(catalog, sign))) <
          1e-12);
  }
}

TEST_CASE("frame generator") {
  const auto basis = OccupationBasis::build(3);
  const auto catalog = GeneratorCatalog::build(basis);
  const ModelParams params = ModelParams::with_lambda(3, 1.0, 1.5, 0.4);
  const FrameGenerator frame(catalog, params);

  SUBCASE("tau = 0 reproduces the cavity cooling dissipator") {
    CHECK(max_abs(SparseSuperoperator(
              frame.evaluate(0.0) -
              dissipator_cavity_cooling(catalog, params.gamma_cc, params.nbar))) < 1e-13);
  }
  SUBCASE("periodic with period 2 pi / gamma") {
    CHECK(frame.period() == doctest::Approx(2.0 * M_PI / params.gamma_t2));
    const double tau = 0.37;
    CHECK(max_abs(SparseSuperoperator(frame.evaluate(tau + frame.period()) -
                                      frame.evaluate(tau))) < 1e-12);
  }
  SUBCASE("trapezoid average equals the closed-form first-order dissipator") {
    CHECK(max_abs(SparseSuperoperator(frame.average_by_quadrature(64) -
                                      average_dissipator_first_order(catalog, params))) <
          1e-10);
  }
  SUBCASE("dG/dtau at 0 is i [D_T2, D_cc] (fixes the phase handedness)") {
    const double eps = 1e-5;
    const SparseSuperoperator derivative(
        (frame.evaluate(eps) - frame.evaluate(-eps)) / (2.0 * eps));
    const SparseSuperoperator dephasing =
        dissipator_local_dephasing(catalog, params.gamma_t2);
    const SparseSuperoperator cooling =
        dissipator_cavity_cooling(catalog, params.gamma_cc, params.nbar);
    const SparseSuperoperator expected(Complex(0.0, 1.0) *
                                       SparseSuperoperator(dephasing * cooling -
                                                           cooling * dephasing));
    CHECK(max_abs(SparseSuperoperator(derivative - expected)) < 1e-7);
  }
  SUBCASE("gamma = 0 leaves the frame undefined") {
    ModelParams no_dephasing;
    no_dephasing.n_qubits = 3;
    no_dephasing.gamma_cc = 1.0;
    CHECK_THROWS_AS(FrameGenerator(catalog, no_dephasing), ParameterError);
  }
}

TEST_CASE("first-order average dissipator") {
  const auto basis = OccupationBasis::build(3);
  const auto catalog = GeneratorCatalog::build(basis);
  const ModelParams params = ModelParams::with_lambda(3, 1.0, 2.0, 0.25);
  const SparseSuperoperator averaged = average_dissipator_first_order(catalog, params);

  SUBCASE("commutes with the dephasing dissipator (secularity)") {
    CHECK(max_abs(commutator(dissipator_local_dephasing(catalog, params.gamma_t2),
                             averaged)) < 1e-12);
  }
  SUBCASE("trace-annihilated and ground-state fixed point at nbar = 0") {
    const ModelParams cold = ModelParams::with_lambda(3, 1.0, 2.0, 0.0);
    const SparseSuperoperator averaged_cold =
        average_dissipator_first_order(catalog, cold);
    CHECK((averaged_cold.transpose() * trace_covector(basis)).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK((averaged_cold * state_ground(basis).coeffs).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("adjoint action on the Jz covector, N=4") {
  const auto basis = OccupationBasis::build(4);
  const auto catalog = GeneratorCatalog::build(basis);
  for (const double nbar : {0.0, 0.5}) {
    const ModelParams params = ModelParams::with_lambda(4, 1.3, 1.0, nbar);
    const SparseSuperoperator averaged = average_dissipator_first_order(catalog, params);
    const CVector jz = observable_covector_jz(basis);
    const CVector unit = trace_covector(basis);
    const CVector lhs = SparseSuperoperator(averaged.adjoint()) * jz;
    const CVector rhs =
        -params.gamma_cc * (1.0 + 2.0 * nbar) * (jz + (4.0 / (2.0 + 4.0 * nbar)) * unit);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("nested commutator recursion") {
  const auto basis = OccupationBasis::build(2);
  const auto catalog = GeneratorCatalog::build(basis);
  const double gamma = 0.8;
  for (int sign : {+1, -1}) {
    const auto nested = bch_nested_commutators(catalog, sign, gamma, 3);
    const ABPair ab = build_AB(catalog, sign);
    REQUIRE(nested.size() == 4);
    CHECK(max_abs(SparseSuperoperator(nested[0] -
                                      collective_jump_dissipator(catalog, sign))) == 0.0);
    CHECK(max_abs(SparseSuperoperator(nested[1] - SparseSuperoperator(sign * gamma * ab.a) +
                                      SparseSuperoperator(sign * gamma * ab.b))) < 1e-12);
    CHECK(max_abs(SparseSuperoperator(
              nested[2] - SparseSuperoperator(gamma * gamma * (ab.a + ab.b)))) < 1e-12);
    CHECK(max_abs(SparseSuperoperator(nested[3] -
                                      SparseSuperoperator(sign * gamma * gamma * gamma *
                                                          (ab.a - ab.b)))) < 1e-12);
  }
}

TEST_CASE("propagation under the average dissipator follows the relaxation law") {
  for (const double nbar : {0.0, 0.5}) {
    const auto basis = OccupationBasis::build(6);
    const auto catalog = GeneratorCatalog::build(basis);
    const ModelParams params = ModelParams::with_lambda(6, 1.0, 1.0, nbar);
    const SparseSuperoperator averaged = average_dissipator_first_order(catalog, params);

    PropagationSpec spec;
    spec.t_grid = PropagationSpec::linear_grid(4.0, 17);
    const Observables obs{trace_covector(basis), observable_covector_jz(basis), {}};
    for (const SymState& initial :
         {state_maximally_mixed(basis), state_all_up(basis)}) {
      const TimeSeries series = evolve(averaged, initial.coeffs, spec, obs);
      analytic::AnalyticParams law{6, params.gamma_cc, nbar, series.jz.front()};
      for (size_t i = 0; i < series.times.size(); ++i) {
        CHECK(std::abs(series.jz[i] - analytic::jz_of_t(law, series.times[i])) < 1e-8);
      }
    }
  }
}

TEST_CASE("second-order quadrature hook is trace-annihilated") {
  const auto basis = OccupationBasis::build(2);
  const auto catalog = GeneratorCatalog::build(basis);
  const ModelParams params = ModelParams::with_lambda(2, 1.0, 3.0, 0.0);
  const FrameGenerator frame(catalog, params);
  const SparseSuperoperator second = frame.second_order_by_quadrature(48);
  CHECK((second.transpose() * trace_covector(basis)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("secular-form check is sensitive to a corrupted sign in A") {
  // Sanity check on the check itself: flipping the sign of A in
  // D[J+] - A - B must blow the deviation up, not pass silently. (The
  // eigencommutator relations alone cannot see an overall rescaling of A.)
  const auto basis = OccupationBasis::build(2);
  const auto catalog = GeneratorCatalog::build(basis);
  const ABPair ab = build_AB(catalog, +1);
  const SparseSuperoperator corrupted(collective_jump_dissipator(catalog, +1) + ab.a -
                                      ab.b);
  const SparseSuperoperator residual(corrupted - secular_dissipator_explicit(catalog, +1));
  CHECK(max_abs(residual) > 0.1);
  // The BCH first-order term misfires as well.
  const auto nested = bch_nested_commutators(catalog, +1, 1.0, 1);
  const SparseSuperoperator bad_c1(nested[1] + SparseSuperoperator(1.0 * ab.a) +
                                   SparseSuperoperator(1.0 * ab.b));
  CHECK(max_abs(bad_c1) > 0.1);
}

TEST_CASE("Tavis-Cummings exchange is suppressed in the dephasing frame") {
  const TcSuppressionReport report = check_tc_suppression(2.7, 1.0, 2, 1e-10);
  CHECK(report.all_pass);
  CHECK(report.average_norm <= 1e-10);
  REQUIRE(report.entries.size() >= 10);
}

}  // TEST_SUITE
