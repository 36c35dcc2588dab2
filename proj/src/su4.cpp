#include "dickecool/su4.hpp"

#include <optional>

namespace dickecool {

namespace {

constexpr Family kFamilies[6] = {Family::Q, Family::Sigma, Family::M,
                                 Family::N, Family::U, Family::V};
constexpr Component kComponents[3] = {Component::Plus, Component::Minus, Component::Three};

const char* family_name(Family f) {
  switch (f) {
    case Family::Q: return "Q";
    case Family::Sigma: return "Sigma";
    case Family::M: return "M";
    case Family::N: return "N";
    case Family::U: return "U";
    case Family::V: return "V";
  }
  return "?";
}

const char* component_name(Component c) {
  switch (c) {
    case Component::Plus: return "+";
    case Component::Minus: return "-";
    case Component::Three: return "3";
  }
  return "?";
}

SiteDoubledOperator kron2(const Matrix2& ket_factor, const Matrix2& bra_factor) {
  SiteDoubledOperator out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int ip = 0; ip < 2; ++ip)
        for (int jp = 0; jp < 2; ++jp)
          out(2 * i + j, 2 * ip + jp) = ket_factor(i, ip) * bra_factor(j, jp);
  return out;
}

double max_abs(const SparseSuperoperator& m) {
  double worst = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseSuperoperator::InnerIterator it(m, k); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  return worst;
}

}  // namespace

std::string to_string(GeneratorId id) {
  return std::string(family_name(id.family)) + component_name(id.component);
}

const std::array<GeneratorId, 18>& GeneratorCatalog::all_ids() {
  static const std::array<GeneratorId, 18> ids = [] {
    std::array<GeneratorId, 18> out{};
    size_t k = 0;
    for (Family f : kFamilies)
      for (Component c : kComponents) out[k++] = {f, c};
    return out;
  }();
  return ids;
}

GeneratorCatalog GeneratorCatalog::build(const OccupationBasis& basis) {
  GeneratorCatalog catalog;
  catalog.basis_ = &basis;

  const Matrix2 sp = sigma_plus();
  const Matrix2 sm = sigma_minus();
  const Matrix2 sz = sigma_z();
  const Matrix2 id = site_identity();
  const Matrix2 ep = projector_e();
  const Matrix2 em = projector_g();

  // Site seeds in the doubled-space mode basis. The collective definitions
  // are written bra-factor-first (B* (x) A for rho -> A rho B^dagger), so a
  // definition "X (x) Y" becomes kron2(Y, X) here.
  auto set = [&](Family f, Component c, const SiteDoubledOperator& seed) {
    const size_t k = slot({f, c});
    catalog.seeds_[k] = seed;
    catalog.ops_[k] = lift_one_body(basis, seed);
  };

  set(Family::Q, Component::Plus, kron2(sp, sp));
  set(Family::Q, Component::Minus, kron2(sm, sm));
  set(Family::Q, Component::Three, 0.25 * (kron2(sz, id) + kron2(id, sz)));

  set(Family::Sigma, Component::Plus, kron2(sp, sm));
  set(Family::Sigma, Component::Minus, kron2(sm, sp));
  set(Family::Sigma, Component::Three, 0.25 * (kron2(sz, id) - kron2(id, sz)));

  set(Family::M, Component::Plus, kron2(sp, ep));
  set(Family::M, Component::Minus, kron2(sm, ep));
  set(Family::M, Component::Three, 0.5 * kron2(sz, ep));

  set(Family::N, Component::Plus, kron2(sp, em));
  set(Family::N, Component::Minus, kron2(sm, em));
  set(Family::N, Component::Three, 0.5 * kron2(sz, em));

  set(Family::U, Component::Plus, kron2(ep, sp));
  set(Family::U, Component::Minus, kron2(ep, sm));
  set(Family::U, Component::Three, 0.5 * kron2(ep, sz));

  set(Family::V, Component::Plus, kron2(em, sp));
  set(Family::V, Component::Minus, kron2(em, sm));
  set(Family::V, Component::Three, 0.5 * kron2(em, sz));

  return catalog;
}

namespace {

struct TableEntry {
  GeneratorId row;
  GeneratorId col;
  double coeff;                        // 0 when the commutator vanishes
  std::optional<GeneratorId> result;   // absent when coeff == 0
};

// The three sub-tables of SU(4) commutators, [row, col] = coeff * result.
const std::vector<TableEntry>& commutation_table() {
  using F = Family;
  using C = Component;
  auto g = [](F f, C c) { return GeneratorId{f, c}; };
  static const std::vector<TableEntry> table = {
      // rows Q, Sigma x cols M, N
      {g(F::Q, C::Plus), g(F::M, C::Plus), 0.0, {}},
      {g(F::Q, C::Plus), g(F::M, C::Minus), -1.0, g(F::V, C::Plus)},
      {g(F::Q, C::Plus), g(F::M, C::Three), -0.5, g(F::Q, C::Plus)},
      {g(F::Q, C::Plus), g(F::N, C::Plus), 0.0, {}},
      {g(F::Q, C::Plus), g(F::N, C::Minus), 1.0, g(F::U, C::Plus)},
      {g(F::Q, C::Plus), g(F::N, C::Three), -0.5, g(F::Q, C::Plus)},
      {g(F::Q, C::Minus), g(F::M, C::Plus), 1.0, g(F::V, C::Minus)},
      {g(F::Q, C::Minus), g(F::M, C::Minus), 0.0, {}},
      {g(F::Q, C::Minus), g(F::M, C::Three), 0.5, g(F::Q, C::Minus)},
      {g(F::Q, C::Minus), g(F::N, C::Plus), -1.0, g(F::U, C::Minus)},
      {g(F::Q, C::Minus), g(F::N, C::Minus), 0.0, {}},
      {g(F::Q, C::Minus), g(F::N, C::Three), 0.5, g(F::Q, C::Minus)},
      {g(F::Q, C::Three), g(F::M, C::Plus), 0.5, g(F::M, C::Plus)},
      {g(F::Q, C::Three), g(F::M, C::Minus), -0.5, g(F::M, C::Minus)},
      {g(F::Q, C::Three), g(F::M, C::Three), 0.0, {}},
      {g(F::Q, C::Three), g(F::N, C::Plus), 0.5, g(F::N, C::Plus)},
      {g(F::Q, C::Three), g(F::N, C::Minus), -0.5, g(F::N, C::Minus)},
      {g(F::Q, C::Three), g(F::N, C::Three), 0.0, {}},
      {g(F::Sigma, C::Plus), g(F::M, C::Plus), 0.0, {}},
      {g(F::Sigma, C::Plus), g(F::M, C::Minus), 1.0, g(F::U, C::Minus)},
      {g(F::Sigma, C::Plus), g(F::M, C::Three), -0.5, g(F::Sigma, C::Plus)},
      {g(F::Sigma, C::Plus), g(F::N, C::Plus), 0.0, {}},
      {g(F::Sigma, C::Plus), g(F::N, C::Minus), -1.0, g(F::V, C::Minus)},
      {g(F::Sigma, C::Plus), g(F::N, C::Three), -0.5, g(F::Sigma, C::Plus)},
      {g(F::Sigma, C::Minus), g(F::M, C::Plus), -1.0, g(F::U, C::Plus)},
      {g(F::Sigma, C::Minus), g(F::M, C::Minus), 0.0, {}},
      {g(F::Sigma, C::Minus), g(F::M, C::Three), 0.5, g(F::Sigma, C::Minus)},
      {g(F::Sigma, C::Minus), g(F::N, C::Plus), 1.0, g(F::V, C::Plus)},
      {g(F::Sigma, C::Minus), g(F::N, C::Minus), 0.0, {}},
      {g(F::Sigma, C::Minus), g(F::N, C::Three), 0.5, g(F::Sigma, C::Minus)},
      {g(F::Sigma, C::Three), g(F::M, C::Plus), 0.5, g(F::M, C::Plus)},
      {g(F::Sigma, C::Three), g(F::M, C::Minus), -0.5, g(F::M, C::Minus)},
      {g(F::Sigma, C::Three), g(F::M, C::Three), 0.0, {}},
      {g(F::Sigma, C::Three), g(F::N, C::Plus), 0.5, g(F::N, C::Plus)},
      {g(F::Sigma, C::Three), g(F::N, C::Minus), -0.5, g(F::N, C::Minus)},
      {g(F::Sigma, C::Three), g(F::N, C::Three), 0.0, {}},
      // rows Q, Sigma x cols U, V
      {g(F::Q, C::Plus), g(F::U, C::Plus), 0.0, {}},
      {g(F::Q, C::Plus), g(F::U, C::Minus), -1.0, g(F::N, C::Plus)},
      {g(F::Q, C::Plus), g(F::U, C::Three), -0.5, g(F::Q, C::Plus)},
      {g(F::Q, C::Plus), g(F::V, C::Plus), 0.0, {}},
      {g(F::Q, C::Plus), g(F::V, C::Minus), 1.0, g(F::M, C::Plus)},
      {g(F::Q, C::Plus), g(F::V, C::Three), -0.5, g(F::Q, C::Plus)},
      {g(F::Q, C::Minus), g(F::U, C::Plus), 1.0, g(F::N, C::Minus)},
      {g(F::Q, C::Minus), g(F::U, C::Minus), 0.0, {}},
      {g(F::Q, C::Minus), g(F::U, C::Three), 0.5, g(F::Q, C::Minus)},
      {g(F::Q, C::Minus), g(F::V, C::Plus), -1.0, g(F::M, C::Minus)},
      {g(F::Q, C::Minus), g(F::V, C::Minus), 0.0, {}},
      {g(F::Q, C::Minus), g(F::V, C::Three), 0.5, g(F::Q, C::Minus)},
      {g(F::Q, C::Three), g(F::U, C::Plus), 0.5, g(F::U, C::Plus)},
      {g(F::Q, C::Three), g(F::U, C::Minus), -0.5, g(F::U, C::Minus)},
      {g(F::Q, C::Three), g(F::U, C::Three), 0.0, {}},
      {g(F::Q, C::Three), g(F::V, C::Plus), 0.5, g(F::V, C::Plus)},
      {g(F::Q, C::Three), g(F::V, C::Minus), -0.5, g(F::V, C::Minus)},
      {g(F::Q, C::Three), g(F::V, C::Three), 0.0, {}},
      {g(F::Sigma, C::Plus), g(F::U, C::Plus), -1.0, g(F::M, C::Plus)},
      {g(F::Sigma, C::Plus), g(F::U, C::Minus), 0.0, {}},
      {g(F::Sigma, C::Plus), g(F::U, C::Three), 0.5, g(F::Sigma, C::Plus)},
      {g(F::Sigma, C::Plus), g(F::V, C::Plus), 1.0, g(F::N, C::Plus)},
      {g(F::Sigma, C::Plus), g(F::V, C::Minus), 0.0, {}},
      {g(F::Sigma, C::Plus), g(F::V, C::Three), 0.5, g(F::Sigma, C::Plus)},
      {g(F::Sigma, C::Minus), g(F::U, C::Plus), 0.0, {}},
      {g(F::Sigma, C::Minus), g(F::U, C::Minus), 1.0, g(F::M, C::Minus)},
      {g(F::Sigma, C::Minus), g(F::U, C::Three), -0.5, g(F::Sigma, C::Minus)},
      {g(F::Sigma, C::Minus), g(F::V, C::Plus), 0.0, {}},
      {g(F::Sigma, C::Minus), g(F::V, C::Minus), -1.0, g(F::N, C::Minus)},
      {g(F::Sigma, C::Minus), g(F::V, C::Three), -0.5, g(F::Sigma, C::Minus)},
      {g(F::Sigma, C::Three), g(F::U, C::Plus), -0.5, g(F::U, C::Plus)},
      {g(F::Sigma, C::Three), g(F::U, C::Minus), 0.5, g(F::U, C::Minus)},
      {g(F::Sigma, C::Three), g(F::U, C::Three), 0.0, {}},
      {g(F::Sigma, C::Three), g(F::V, C::Plus), -0.5, g(F::V, C::Plus)},
      {g(F::Sigma, C::Three), g(F::V, C::Minus), 0.5, g(F::V, C::Minus)},
      {g(F::Sigma, C::Three), g(F::V, C::Three), 0.0, {}},
      // rows M, N x cols U, V
      {g(F::M, C::Plus), g(F::U, C::Plus), 0.0, {}},
      {g(F::M, C::Plus), g(F::U, C::Minus), -1.0, g(F::Sigma, C::Plus)},
      {g(F::M, C::Plus), g(F::U, C::Three), -0.5, g(F::M, C::Plus)},
      {g(F::M, C::Plus), g(F::V, C::Plus), 1.0, g(F::Q, C::Plus)},
      {g(F::M, C::Plus), g(F::V, C::Minus), 0.0, {}},
      {g(F::M, C::Plus), g(F::V, C::Three), 0.5, g(F::M, C::Plus)},
      {g(F::M, C::Minus), g(F::U, C::Plus), 1.0, g(F::Sigma, C::Minus)},
      {g(F::M, C::Minus), g(F::U, C::Minus), 0.0, {}},
      {g(F::M, C::Minus), g(F::U, C::Three), 0.5, g(F::M, C::Minus)},
      {g(F::M, C::Minus), g(F::V, C::Plus), 0.0, {}},
      {g(F::M, C::Minus), g(F::V, C::Minus), -1.0, g(F::Q, C::Minus)},
      {g(F::M, C::Minus), g(F::V, C::Three), -0.5, g(F::M, C::Minus)},
      {g(F::M, C::Three), g(F::U, C::Plus), 0.5, g(F::U, C::Plus)},
      {g(F::M, C::Three), g(F::U, C::Minus), -0.5, g(F::U, C::Minus)},
      {g(F::M, C::Three), g(F::U, C::Three), 0.0, {}},
      {g(F::M, C::Three), g(F::V, C::Plus), -0.5, g(F::V, C::Plus)},
      {g(F::M, C::Three), g(F::V, C::Minus), 0.5, g(F::V, C::Minus)},
      {g(F::M, C::Three), g(F::V, C::Three), 0.0, {}},
      {g(F::N, C::Plus), g(F::U, C::Plus), -1.0, g(F::Q, C::Plus)},
      {g(F::N, C::Plus), g(F::U, C::Minus), 0.0, {}},
      {g(F::N, C::Plus), g(F::U, C::Three), 0.5, g(F::N, C::Plus)},
      {g(F::N, C::Plus), g(F::V, C::Plus), 0.0, {}},
      {g(F::N, C::Plus), g(F::V, C::Minus), 1.0, g(F::Sigma, C::Plus)},
      {g(F::N, C::Plus), g(F::V, C::Three), -0.5, g(F::N, C::Plus)},
      {g(F::N, C::Minus), g(F::U, C::Plus), 0.0, {}},
      {g(F::N, C::Minus), g(F::U, C::Minus), 1.0, g(F::Q, C::Minus)},
      {g(F::N, C::Minus), g(F::U, C::Three), -0.5, g(F::N, C::Minus)},
      {g(F::N, C::Minus), g(F::V, C::Plus), -1.0, g(F::Sigma, C::Minus)},
      {g(F::N, C::Minus), g(F::V, C::Minus), 0.0, {}},
      {g(F::N, C::Minus), g(F::V, C::Three), 0.5, g(F::N, C::Minus)},
      {g(F::N, C::Three), g(F::U, C::Plus), -0.5, g(F::U, C::Plus)},
      {g(F::N, C::Three), g(F::U, C::Minus), 0.5, g(F::U, C::Minus)},
      {g(F::N, C::Three), g(F::U, C::Three), 0.0, {}},
      {g(F::N, C::Three), g(F::V, C::Plus), 0.5, g(F::V, C::Plus)},
      {g(F::N, C::Three), g(F::V, C::Minus), -0.5, g(F::V, C::Minus)},
      {g(F::N, C::Three), g(F::V, C::Three), 0.0, {}},
  };
  return table;
}

}  // namespace

CommutationReport verify_commutation_table(const GeneratorCatalog& catalog,
                                           double tolerance) {
  CommutationReport report;
  report.tolerance = tolerance;

  auto record = [&](std::string name, double deviation) {
    const bool pass = deviation <= tolerance;
    report.entries.push_back({std::move(name), deviation, pass});
    report.worst_deviation = std::max(report.worst_deviation, deviation);
    report.all_pass = report.all_pass && pass;
  };
  auto commutator = [](const SparseSuperoperator& a, const SparseSuperoperator& b) {
    return SparseSuperoperator((a * b - b * a).pruned());
  };

  // Table entries [row, col] = coeff * result.
  for (const TableEntry& entry : commutation_table()) {
    SparseSuperoperator lhs = commutator(catalog.op(entry.row), catalog.op(entry.col));
    if (entry.result) lhs -= SparseSuperoperator(entry.coeff * catalog.op(*entry.result));
    record("[" + to_string(entry.row) + "," + to_string(entry.col) + "]", max_abs(lhs));
  }

  // SU(2) subalgebra relations within each family.
  for (Family f : kFamilies) {
    const auto& plus = catalog.op(f, Component::Plus);
    const auto& minus = catalog.op(f, Component::Minus);
    const auto& three = catalog.op(f, Component::Three);
    record("[" + std::string(family_name(f)) + "+," + family_name(f) + "-]=2*" +
               family_name(f) + "3",
           max_abs(SparseSuperoperator(commutator(plus, minus) - 2.0 * three)));
    record("[" + std::string(family_name(f)) + "3," + family_name(f) + "+]",
           max_abs(SparseSuperoperator(commutator(three, plus) - plus)));
    record("[" + std::string(family_name(f)) + "3," + family_name(f) + "-]",
           max_abs(SparseSuperoperator(commutator(three, minus) + minus)));
  }

  // Commuting pairs (Q, Sigma), (M, N), (U, V).
  const std::pair<Family, Family> pairs[3] = {
      {Family::Q, Family::Sigma}, {Family::M, Family::N}, {Family::U, Family::V}};
  for (const auto& [fa, fb] : pairs) {
    for (Component ca : kComponents) {
      for (Component cb : kComponents) {
        record("[" + to_string({fa, ca}) + "," + to_string({fb, cb}) + "]=0",
               max_abs(commutator(catalog.op(fa, ca), catalog.op(fb, cb))));
      }
    }
  }

  // Linear dependence relations among the 18 labels.
  record("N3=Q3+Sigma3-M3",
         max_abs(SparseSuperoperator(catalog.op(Family::N, Component::Three) -
                                     catalog.op(Family::Q, Component::Three) -
                                     catalog.op(Family::Sigma, Component::Three) +
                                     catalog.op(Family::M, Component::Three))));
  record("U3=M3-Sigma3",
         max_abs(SparseSuperoperator(catalog.op(Family::U, Component::Three) -
                                     catalog.op(Family::M, Component::Three) +
                                     catalog.op(Family::Sigma, Component::Three))));
  record("V3=Q3-M3",
         max_abs(SparseSuperoperator(catalog.op(Family::V, Component::Three) -
                                     catalog.op(Family::Q, Component::Three) +
                                     catalog.op(Family::M, Component::Three))));

  // Adjoint pairings X+^dag = X-.
  for (Family f : kFamilies) {
    record(std::string(family_name(f)) + "+^dag=" + family_name(f) + "-",
           max_abs(SparseSuperoperator(
               SparseSuperoperator(catalog.op(f, Component::Plus).adjoint()) -
               catalog.op(f, Component::Minus))));
  }

  return report;
}

}  // namespace dickecool
