#include <doctest.h>

#include "dickecool/basis.hpp"
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

TEST_SUITE("su4") {

TEST_CASE("Q+ moves mode-4 occupation to mode 1 at N=1") {
  const auto basis = OccupationBasis::build(1);
  const auto catalog = GeneratorCatalog::build(basis);
  const CVector image =
      catalog.op(Family::Q, Component::Plus) * state_ground(basis).coeffs;
  CHECK(std::abs(image(basis.index_of({1, 0, 0, 0})) - 1.0) == 0.0);
  CHECK(image.cwiseAbs().sum() == 1.0);
}

TEST_CASE("SU(2) subalgebra relations hold as matrices") {
  const auto basis = OccupationBasis::build(3);
  const auto catalog = GeneratorCatalog::build(basis);
  const auto& qp = catalog.op(Family::Q, Component::Plus);
  const auto& qm = catalog.op(Family::Q, Component::Minus);
  const auto& q3 = catalog.op(Family::Q, Component::Three);
  CHECK(max_abs(SparseSuperoperator(commutator(qp, qm) - 2.0 * q3)) < 1e-12);
  CHECK(max_abs(SparseSuperoperator(commutator(q3, qp) - qp)) < 1e-12);
}

TEST_CASE("linear dependence of the three redundant labels") {
  const auto basis = OccupationBasis::build(2);
  const auto catalog = GeneratorCatalog::build(basis);
  const auto g = [&](Family f) { return catalog.op(f, Component::Three); };
  CHECK(max_abs(SparseSuperoperator(g(Family::N) - g(Family::Q) - g(Family::Sigma) +
                                    g(Family::M))) < 1e-13);
  CHECK(max_abs(SparseSuperoperator(g(Family::U) - g(Family::M) + g(Family::Sigma))) <
        1e-13);
  CHECK(max_abs(SparseSuperoperator(g(Family::V) - g(Family::Q) + g(Family::M))) < 1e-13);
}

TEST_CASE("specific table entries") {
  const auto basis2 = OccupationBasis::build(2);
  const auto cat2 = GeneratorCatalog::build(basis2);
  SUBCASE("[Q+, M-] = -V+") {
    CHECK(max_abs(SparseSuperoperator(
              commutator(cat2.op(Family::Q, Component::Plus),
                         cat2.op(Family::M, Component::Minus)) +
              cat2.op(Family::V, Component::Plus))) < 1e-13);
  }
  SUBCASE("[M+, V+] = Q+ against the product-rule commutator") {
    const SparseSuperoperator lhs = commutator(cat2.op(Family::M, Component::Plus),
                                               cat2.op(Family::V, Component::Plus));
    CHECK(max_abs(SparseSuperoperator(lhs - cat2.op(Family::Q, Component::Plus))) < 1e-13);
  }
  SUBCASE("[Q3, M+] = M+/2 at N=3") {
    const auto basis3 = OccupationBasis::build(3);
    const auto cat3 = GeneratorCatalog::build(basis3);
    CHECK(max_abs(SparseSuperoperator(
              commutator(cat3.op(Family::Q, Component::Three),
                         cat3.op(Family::M, Component::Plus)) -
              SparseSuperoperator(0.5 * cat3.op(Family::M, Component::Plus)))) < 1e-13);
  }
}

TEST_CASE("full commutation table verifies at 1e-12 for N in 1..3") {
  for (int n : {1, 2, 3}) {
    const auto basis = OccupationBasis::build(n);
    const auto catalog = GeneratorCatalog::build(basis);
    const CommutationReport report = verify_commutation_table(catalog, 1e-12);
    CHECK(report.all_pass);
    CHECK(report.worst_deviation < 1e-12);
    CHECK(report.entries.size() >= 162);
  }
}

TEST_CASE("raising and lowering generators are mutually adjoint") {
  const auto basis = OccupationBasis::build(3);
  const auto catalog = GeneratorCatalog::build(basis);
  for (Family f : {Family::M, Family::N, Family::U, Family::V}) {
    const SparseSuperoperator adj = catalog.op(f, Component::Plus).adjoint();
    CHECK(max_abs(SparseSuperoperator(adj - catalog.op(f, Component::Minus))) < 1e-13);
  }
}

}  // TEST_SUITE
