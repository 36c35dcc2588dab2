#pragma once

#include <array>
#include <string>
#include <vector>

#include "dickecool/basis.hpp"
#include "dickecool/types.hpp"

namespace dickecool {

enum class Family : int { Q = 0, Sigma, M, N, U, V };
enum class Component : int { Plus = 0, Minus, Three };

/// One of the 18 labeled collective superoperators (15 independent).
struct GeneratorId {
  Family family;
  Component component;
};

std::string to_string(GeneratorId id);

/// The SU(4) generators lifted onto an occupation basis, plus their 4x4
/// site seeds. Immutable after build; safe for shared concurrent reads.
class GeneratorCatalog {
 public:
  static GeneratorCatalog build(const OccupationBasis& basis);

  const OccupationBasis& basis() const { return *basis_; }

  const SparseSuperoperator& op(GeneratorId id) const { return ops_[slot(id)]; }
  const SparseSuperoperator& op(Family f, Component c) const { return op({f, c}); }
  const SiteDoubledOperator& seed(GeneratorId id) const { return seeds_[slot(id)]; }

  static const std::array<GeneratorId, 18>& all_ids();

 private:
  static size_t slot(GeneratorId id) {
    return static_cast<size_t>(id.family) * 3 + static_cast<size_t>(id.component);
  }

  const OccupationBasis* basis_ = nullptr;
  std::array<SparseSuperoperator, 18> ops_;
  std::array<SiteDoubledOperator, 18> seeds_;
};

/// One evaluated commutation identity.
struct CommutationEntry {
  std::string name;
  double max_deviation = 0.0;
  bool pass = false;
};

struct CommutationReport {
  std::vector<CommutationEntry> entries;
  double tolerance = 0.0;
  double worst_deviation = 0.0;
  bool all_pass = true;
};

/// Evaluates every entry of the SU(4) commutation table, the SU(2)
/// subalgebra relations, the commuting-pair relations, the three linear
/// dependence relations, and the adjoint pairings, as matrix identities.
CommutationReport verify_commutation_table(const GeneratorCatalog& catalog,
                                           double tolerance = 1e-12);

}  // namespace dickecool
