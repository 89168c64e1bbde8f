#pragma once

#include <optional>
#include <string>
#include <vector>

#include "posetab/derived.hpp"
#include "posetab/diagram.hpp"

namespace posetab {

/// Element of a direct sum, split by summand, in ambient coordinates.
struct Witness {
  std::vector<std::string> objects;
  std::vector<Vector> components;
};

struct PseudoCheck {
  std::size_t object = 0;
  int d = 0;
  bool holds = true;
  /// Objects of the degree-d family, sorted by id.
  std::vector<std::size_t> family;
  std::optional<Witness> witness;
};

/// Degree-d objects below i0 and the summed map Φ; holds iff ker Φ lies in
/// the sum of the Im_F(i_j).
PseudoCheck is_pseudo_projective_at(const Diagram& f, std::size_t i0, int d);
PseudoCheck is_pseudo_projective_at(const Diagram& f, const std::string& i0, int d);

/// Degree-d objects above i0 and the tupled map Ψ; holds iff the sum of the
/// ker_F(i_j) lies in Im Ψ.
PseudoCheck is_pseudo_injective_at(const Diagram& f, std::size_t i0, int d);
PseudoCheck is_pseudo_injective_at(const Diagram& f, const std::string& i0, int d);

/// Same conditions restricted to a sub-family of the degree-d objects.
bool pseudo_projective_on_family(const Diagram& f, std::size_t i0, const std::vector<std::size_t>& family);
bool pseudo_injective_on_family(const Diagram& f, std::size_t i0, const std::vector<std::size_t>& family);

struct PseudoVerdict {
  bool holds = true;
  /// First failure in (object id order, d) order.
  std::optional<PseudoCheck> failure;
  std::vector<PseudoCheck> checks;
};

PseudoVerdict is_pseudo_projective(const Diagram& f);
PseudoVerdict is_pseudo_injective(const Diagram& f);

struct StructureVerdict {
  bool holds = true;
  std::string reason;
  std::optional<std::size_t> object;
  std::optional<PseudoCheck> pseudo_failure;
};

/// All Coker_F(i) free and F pseudo-projective.
StructureVerdict is_projective(const Diagram& f);
/// All ker_F(i) injective in Ab (for f.g. groups: trivial) and F pseudo-injective.
StructureVerdict is_injective(const Diagram& f);

struct ObjectReport {
  std::string id;
  int degree = 0;
  GroupInvariants group;
  GroupInvariants image;
  GroupInvariants cokernel;
  GroupInvariants kernel;
  GroupInvariants coimage;
};

struct OracleVerdict {
  bool pseudo_projective = false;
  bool colim_acyclic = false;
  bool pseudo_injective = false;
  bool lim_acyclic = false;
  bool consistent() const {
    return (!pseudo_projective || colim_acyclic) && (!pseudo_injective || lim_acyclic);
  }
};

struct ClassificationReport {
  std::vector<ObjectReport> objects;
  PseudoVerdict pseudo_projective;
  PseudoVerdict pseudo_injective;
  StructureVerdict projective;
  StructureVerdict injective;
  AcyclicityResult colim;
  AcyclicityResult lim;
  /// projective ⇒ pseudo-projective with free cokernels, dually for injective.
  bool structure_consistent = true;
  OracleVerdict oracle;
};

ClassificationReport classify(const Diagram& f);

/// Evaluates both acyclicity implications; throws OracleViolation when one
/// fails, since that can only mean a bug in one of the two code paths.
OracleVerdict oracle_acyclicity(const Diagram& f);

}  // namespace posetab
