#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "dickecool/basis.hpp"
#include "dickecool/lindblad.hpp"
#include "dickecool/oracle.hpp"
#include "dickecool/su4.hpp"

using namespace dickecool;

namespace {
double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("single-qubit amplitude damping has the textbook matrix") {
  const CMatrix l = oracle::full_liouvillian(1, {oracle::dissipator_term(
                                                    CMatrix(sigma_minus()), 1.0)});
  CMatrix expected = CMatrix::Zero(4, 4);
  // mode order (ee, eg, ge, gg): decay -1 on ee, -1/2 on coherences,
  // feed gg <- ee.
  expected(0, 0) = -1.0;
  expected(1, 1) = -0.5;
  expected(2, 2) = -0.5;
  expected(3, 0) = 1.0;
  CHECK(max_abs(l - expected) == 0.0);
}

TEST_CASE("two independent assembly orders agree for D[J-]") {
  const int n = 2;
  const Eigen::Index dim = 4;
  const CMatrix jm = oracle::collective_jminus(n);
  const CMatrix route_a = oracle::full_liouvillian(n, {oracle::dissipator_term(jm)});

  // Route B: expand the sandwich over site pairs and the anticommutator from
  // the precomputed J+ J-.
  CMatrix route_b = CMatrix::Zero(dim * dim, dim * dim);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      route_b += sandwich_super(oracle::site_operator(n, j, sigma_minus()),
                                oracle::site_operator(n, k, sigma_minus()));
    }
  }
  const CMatrix jpjm = oracle::collective_jplus(n) * jm;
  route_b -= 0.5 * (left_mult_super(jpjm) + right_mult_super(jpjm));
  CHECK(max_abs(route_a - route_b) < 1e-13);
}

TEST_CASE("embedding is an isometry") {
  for (int n : {1, 2, 3}) {
    const auto basis = OccupationBasis::build(n);
    const CMatrix v = oracle::embedding(basis);
    CHECK(max_abs(CMatrix(v.adjoint() * v -
                          CMatrix::Identity(basis.size(), basis.size()))) < 1e-13);
  }
  SUBCASE("N=1 is the identity map") {
    const auto basis = OccupationBasis::build(1);
    CHECK(max_abs(oracle::embedding(basis) - CMatrix::Identity(4, 4)) == 0.0);
  }
}

TEST_CASE("embedded local dephasing equals the symmetric-subspace build") {
  for (int n : {2, 3}) {
    const auto basis = OccupationBasis::build(n);
    const auto catalog = GeneratorCatalog::build(basis);
    const CMatrix v = oracle::embedding(basis);
    const CMatrix reduced =
        v.adjoint() * oracle::local_dissipator_sum(n, Matrix2(0.5 * sigma_z()), 0.9) * v;
    CHECK(max_abs(reduced - CMatrix(dissipator_local_dephasing(catalog, 0.9))) < 1e-12);
  }
}

TEST_CASE("trace covector annihilates every assembled Liouvillian") {
  const int n = 3;
  const CMatrix l = oracle::full_liouvillian(
      n, {oracle::dissipator_term(oracle::collective_jminus(n), 1.3),
          oracle::dissipator_term(oracle::collective_jz(n), 0.4),
          oracle::hamiltonian_term(oracle::collective_jz(n), 2.0)});
  const CVector residual = l.transpose() * oracle::trace_covector_full(n);
  CHECK(residual.cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("symmetric initial states stay in the symmetric subspace") {
  const int n = 3;
  const auto basis = OccupationBasis::build(n);
  const CMatrix v = oracle::embedding(basis);
  const CMatrix l = oracle::full_liouvillian(
                        n, {oracle::dissipator_term(oracle::collective_jminus(n), 1.0)}) +
                    oracle::local_dissipator_sum(n, Matrix2(0.5 * sigma_z()), 3.0);
  const CMatrix projector = CMatrix::Identity(v.rows(), v.rows()) - v * v.adjoint();
  CVector rho = oracle::maximally_mixed_full(n);
  const CMatrix step = (0.5 * l).exp();
  for (int i = 0; i < 10; ++i) {
    rho = step * rho;
    CHECK((projector * rho).norm() < 1e-9);
  }
}

TEST_CASE("oracle refuses N beyond the cap") {
  CHECK_THROWS_AS(oracle::full_liouvillian(5, {}), ParameterError);
  CHECK_THROWS_AS(oracle::site_operator(5, 0, sigma_z()), ParameterError);
}

}  // TEST_SUITE
