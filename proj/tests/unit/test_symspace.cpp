#include <doctest.h>

#include <random>

#include "dickecool/basis.hpp"
#include "dickecool/oracle.hpp"
#include "dickecool/su4.hpp"

using namespace dickecool;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

SiteDoubledOperator random_site_op(std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  SiteDoubledOperator op;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) op(i, j) = Complex(gauss(rng), gauss(rng));
  return op;
}

// Independent route: embed the site operator into the full doubled space and
// compress with the symmetric-subspace isometry.
CMatrix lift_via_embedding(const OccupationBasis& basis, const SiteDoubledOperator& seed) {
  const int n = basis.n_qubits();
  const Eigen::Index dim = Eigen::Index(1) << n;
  CMatrix full = CMatrix::Zero(dim * dim, dim * dim);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int ip = 0; ip < 2; ++ip)
        for (int jp = 0; jp < 2; ++jp) {
          const Complex c = seed(2 * i + j, 2 * ip + jp);
          if (c == Complex(0, 0)) continue;
          Matrix2 a = Matrix2::Zero();
          a(i, ip) = 1.0;
          Matrix2 b = Matrix2::Zero();
          b(j, jp) = 1.0;
          for (int site = 0; site < n; ++site) {
            full += c * sandwich_super(oracle::site_operator(n, site, a),
                                       oracle::site_operator(n, site, b));
          }
        }
  const CMatrix v = oracle::embedding(basis);
  return v.adjoint() * full * v;
}

}  // namespace

TEST_SUITE("symspace") {

TEST_CASE("basis dimension follows the stars-and-bars count") {
  CHECK(OccupationBasis::build(1).size() == 4);
  CHECK(OccupationBasis::build(10).size() == 286);
  CHECK(OccupationBasis::build(100).size() == 176851);
  for (int n = 1; n <= 30; ++n) {
    CHECK(OccupationBasis::build(n).size() == (n + 1) * (n + 2) * (n + 3) / 6);
  }
}

TEST_CASE("enumeration is lexicographic descending with closed-form ranks") {
  const auto basis = OccupationBasis::build(7);
  CHECK(basis.state(0) == MultiIndex{7, 0, 0, 0});
  CHECK(basis.state(basis.size() - 1) == MultiIndex{0, 0, 0, 7});
  for (std::int64_t i = 0; i < basis.size(); ++i) {
    CHECK(basis.index_of(basis.state(i)) == i);
    if (i > 0) {
      // strictly descending in (n1, n2, n3)
      const auto& prev = basis.state(i - 1);
      const auto& cur = basis.state(i);
      CHECK(std::lexicographical_compare(cur.begin(), cur.end() - 1, prev.begin(),
                                         prev.end() - 1));
    }
  }
}

TEST_CASE("build_basis rejects out-of-range N") {
  CHECK_THROWS_AS(OccupationBasis::build(0), ParameterError);
  CHECK_THROWS_AS(OccupationBasis::build(201), ParameterError);
}

TEST_CASE("lifting the identity gives N times the identity") {
  const auto basis = OccupationBasis::build(5);
  const CMatrix lifted(lift_one_body(basis, SiteDoubledOperator::Identity()));
  CHECK(max_abs(lifted - 5.0 * CMatrix::Identity(basis.size(), basis.size())) == 0.0);
}

TEST_CASE("lifting a mode projector counts that mode's occupation") {
  const auto basis = OccupationBasis::build(6);
  SiteDoubledOperator number_seed = SiteDoubledOperator::Zero();
  number_seed(0, 0) = 1.0;  // |e><e| x |e><e| matrix unit = mode-1 projector
  const SparseSuperoperator lifted = lift_one_body(basis, number_seed);
  for (std::int64_t k = 0; k < basis.size(); ++k) {
    CVector e = CVector::Zero(basis.size());
    e(k) = 1.0;
    const CVector image = lifted * e;
    CHECK(std::abs(image(k) - double(basis.state(k)[0])) == 0.0);
  }
}

TEST_CASE("lift_one_body is linear in the site operator") {
  const auto basis = OccupationBasis::build(3);
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 5; ++trial) {
    const SiteDoubledOperator a = random_site_op(rng);
    const SiteDoubledOperator b = random_site_op(rng);
    const Complex alpha(0.7, -0.3), beta(-1.1, 0.4);
    const CMatrix combined(lift_one_body(basis, alpha * a + beta * b));
    const CMatrix separate(alpha * CMatrix(lift_one_body(basis, a)) +
                           beta * CMatrix(lift_one_body(basis, b)));
    CHECK(max_abs(combined - separate) < 1e-12);
  }
}

TEST_CASE("lift agrees with the brute-force symmetric embedding") {
  for (int n : {2, 3, 4}) {
    const auto basis = OccupationBasis::build(n);
    const auto catalog = GeneratorCatalog::build(basis);
    for (const auto id : GeneratorCatalog::all_ids()) {
      const CMatrix reduced = lift_via_embedding(basis, catalog.seed(id));
      CHECK(max_abs(reduced - CMatrix(catalog.op(id))) < 1e-12);
    }
  }
}

TEST_CASE("trace covector closed form") {
  SUBCASE("N=1 on the four matrix units") {
    const auto basis = OccupationBasis::build(1);
    const CVector t = trace_covector(basis);
    CHECK(t(basis.index_of({1, 0, 0, 0})) == Complex(1.0));
    CHECK(t(basis.index_of({0, 1, 0, 0})) == Complex(0.0));
    CHECK(t(basis.index_of({0, 0, 1, 0})) == Complex(0.0));
    CHECK(t(basis.index_of({0, 0, 0, 1})) == Complex(1.0));
  }
  SUBCASE("N=2 carries the sqrt-binomial weights") {
    const auto basis = OccupationBasis::build(2);
    const CVector t = trace_covector(basis);
    CHECK(std::abs(t(basis.index_of({2, 0, 0, 0})) - 1.0) < 1e-15);
    CHECK(std::abs(t(basis.index_of({1, 0, 0, 1})) - std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(t(basis.index_of({0, 0, 0, 2})) - 1.0) < 1e-15);
    CHECK(std::abs(t.cwiseAbs().sum() - (2.0 + std::sqrt(2.0))) < 1e-15);
  }
  SUBCASE("matches the embedded vectorized identity") {
    for (int n : {2, 3}) {
      const auto basis = OccupationBasis::build(n);
      const CMatrix v = oracle::embedding(basis);
      const CVector expected = v.transpose() * oracle::trace_covector_full(n);
      CHECK((trace_covector(basis) - expected).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
  SUBCASE("maximally mixed state has unit trace") {
    for (int n : {1, 5, 40, 100}) {
      const auto basis = OccupationBasis::build(n);
      const Complex tr =
          trace_covector(basis).cwiseProduct(state_maximally_mixed(basis).coeffs).sum();
      CHECK(std::abs(tr - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("Jz covector closed form") {
  const auto basis = OccupationBasis::build(3);
  const CVector jz = observable_covector_jz(basis);
  CHECK(std::abs(jz.cwiseProduct(state_ground(basis).coeffs).sum() - (-1.5)) < 1e-15);
  CHECK(std::abs(jz.cwiseProduct(state_all_up(basis).coeffs).sum() - 1.5) < 1e-15);
  CHECK(std::abs(jz.cwiseProduct(state_maximally_mixed(basis).coeffs).sum()) < 1e-15);
  SUBCASE("matches the embedded full-space covector") {
    const CMatrix v = oracle::embedding(basis);
    const CVector expected = v.transpose() * oracle::jz_covector_full(3);
    CHECK((jz - expected).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("initial states") {
  SUBCASE("N=1 maximally mixed is (1/2, 0, 0, 1/2)") {
    const auto basis = OccupationBasis::build(1);
    const SymState mm = state_maximally_mixed(basis);
    CHECK(mm.coeffs(basis.index_of({1, 0, 0, 0})) == Complex(0.5));
    CHECK(mm.coeffs(basis.index_of({0, 0, 0, 1})) == Complex(0.5));
    CHECK(mm.coeffs.cwiseAbs().sum() == 1.0);
  }
  SUBCASE("N=2 maximally mixed matches the embedded I/4") {
    const auto basis = OccupationBasis::build(2);
    const SymState mm = state_maximally_mixed(basis);
    CHECK(std::abs(mm.coeffs(basis.index_of({2, 0, 0, 0})) - 0.25) < 1e-15);
    CHECK(std::abs(mm.coeffs(basis.index_of({1, 0, 0, 1})) - std::sqrt(2.0) / 4.0) < 1e-15);
    CHECK(std::abs(mm.coeffs(basis.index_of({0, 0, 0, 2})) - 0.25) < 1e-15);
    const CMatrix v = oracle::embedding(basis);
    const CVector embedded = v.adjoint() * oracle::maximally_mixed_full(2);
    CHECK((mm.coeffs - embedded).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("ground state has purity one for any N") {
    for (int n : {1, 7, 63}) {
      const auto basis = OccupationBasis::build(n);
      CHECK(purity(state_ground(basis)) == 1.0);
    }
  }
}

TEST_CASE("purity equals Tr rho^2 through the embedding") {
  const auto basis = OccupationBasis::build(3);
  const CMatrix v = oracle::embedding(basis);
  std::mt19937 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 4; ++trial) {
    SymState state{&basis, CVector(basis.size())};
    for (Eigen::Index i = 0; i < basis.size(); ++i) {
      state.coeffs(i) = Complex(gauss(rng), gauss(rng));
    }
    const CVector full = v * state.coeffs;
    const CMatrix rho = unvectorize_density(full);
    const double trace_rho_sq = std::real((rho * rho).trace());
    // Tr rho^2 equals |coeffs|^2 only for Hermitian rho; use rho rho^dag which
    // the Euclidean norm always equals.
    const double hs_norm = std::real((rho * rho.adjoint()).trace());
    CHECK(purity(state) == doctest::Approx(hs_norm).epsilon(1e-12));
    // And for a Hermitian-symmetrized state the two coincide.
    SymState herm{&basis, CVector(basis.size())};
    for (Eigen::Index i = 0; i < basis.size(); ++i) {
      const MultiIndex& idx = basis.state(i);
      const Eigen::Index j = basis.index_of({idx[0], idx[2], idx[1], idx[3]});
      herm.coeffs(i) = 0.5 * (state.coeffs(i) + std::conj(state.coeffs(j)));
    }
    const CMatrix rho_h = unvectorize_density(CVector(v * herm.coeffs));
    CHECK(purity(herm) ==
          doctest::Approx(std::real((rho_h * rho_h).trace())).epsilon(1e-12));
    (void)trace_rho_sq;
  }
  SUBCASE("maximally mixed purity is 2^-N") {
    const auto b2 = OccupationBasis::build(2);
    CHECK(purity(state_maximally_mixed(b2)) == doctest::Approx(0.25).epsilon(1e-14));
  }
}

TEST_CASE("hermiticity bookkeeping") {
  const auto basis = OccupationBasis::build(4);
  CHECK(hermiticity_defect(state_maximally_mixed(basis)) == 0.0);
  const auto pairing = hermitian_partner_indices(basis);
  for (std::int64_t i = 0; i < basis.size(); ++i) {
    CHECK(pairing[size_t(pairing[size_t(i)])] == i);  // involution
    const auto& n = basis.state(i);
    const auto& p = basis.state(pairing[size_t(i)]);
    CHECK(p == MultiIndex{n[0], n[2], n[1], n[3]});
  }
}

}  // TEST_SUITE
