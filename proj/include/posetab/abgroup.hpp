#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "posetab/integer_matrix.hpp"
#include "posetab/lattice.hpp"

namespace posetab {

/// Z^free_rank + Z/d1 + ... + Z/dk with d1 | d2 | ... and every di >= 2.
struct GroupInvariants {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_free() const { return torsion.empty(); }
  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_finite() const { return free_rank == 0; }
  /// Group order; only meaningful when finite.
  Integer order() const;

  friend bool operator==(const GroupInvariants&, const GroupInvariants&) = default;
};

std::string to_string(const GroupInvariants& inv);

/// Finitely generated abelian group Z^g / (column span of the relation matrix).
class FgAbGroup {
 public:
  FgAbGroup() : FgAbGroup(0) {}
  explicit FgAbGroup(std::size_t ambient_rank);
  FgAbGroup(std::size_t ambient_rank, Matrix relations);

  static FgAbGroup free(std::size_t rank) { return FgAbGroup(rank); }
  static FgAbGroup cyclic(const Integer& n);
  static FgAbGroup trivial() { return FgAbGroup(0); }
  /// Z^free_rank + Z/t1 + ... in diagonal presentation.
  static FgAbGroup from_invariants(std::size_t free_rank, const std::vector<Integer>& torsion);

  std::size_t ambient_rank() const noexcept { return rank_; }
  const Matrix& relations() const noexcept { return relations_; }

  /// Relation lattice in Z^g (computed once).
  const Lattice& relation_lattice() const;
  const GroupInvariants& invariants() const;

  bool is_zero(std::span<const Integer> element) const;
  bool equal(std::span<const Integer> a, std::span<const Integer> b) const;

  /// Equal presentation objects (same rank, same relation matrix).
  bool same_presentation(const FgAbGroup& other) const {
    return rank_ == other.rank_ && relations_ == other.relations_;
  }

 private:
  struct Cache {
    std::once_flag lattice_once;
    std::once_flag invariants_once;
    Lattice lattice;
    GroupInvariants invariants;
  };

  std::size_t rank_ = 0;
  Matrix relations_;
  std::shared_ptr<Cache> cache_;
};

bool isomorphic(const FgAbGroup& a, const FgAbGroup& b);

struct GroupClassification {
  std::size_t free_rank = 0;
  std::vector<Integer> invariant_factors;
  bool is_free = false;
  bool is_trivial = false;
  /// A finitely generated group is divisible, hence injective in Ab, only
  /// when it is trivial.
  bool is_injective_in_ab = false;
};

GroupClassification classify_group(const FgAbGroup& g);

/// Homomorphism given by an integer matrix on ambient generators
/// (target_rank × source_rank); checked to respect the relations.
class AbHom {
 public:
  AbHom() = default;
  AbHom(FgAbGroup source, FgAbGroup target, Matrix matrix);

  static AbHom identity(const FgAbGroup& g);
  static AbHom zero(const FgAbGroup& source, const FgAbGroup& target);
  /// Multiplication by n on a presentation.
  static AbHom scalar(const FgAbGroup& g, const Integer& n);

  const FgAbGroup& source() const noexcept { return source_; }
  const FgAbGroup& target() const noexcept { return target_; }
  const Matrix& matrix() const noexcept { return matrix_; }

  Vector apply(std::span<const Integer> x) const { return matrix_ * x; }
  bool is_zero() const;
  /// Injectivity on the group (not on the ambient lattice).
  bool is_injective() const;
  bool is_surjective() const;

 private:
  FgAbGroup source_;
  FgAbGroup target_;
  Matrix matrix_;
};

/// Equality as homomorphisms: matrices differ by target relations columnwise.
bool equal(const AbHom& a, const AbHom& b);

/// h2 ∘ h1; throws MismatchError unless h1.target and h2.source are the same presentation.
AbHom compose(const AbHom& h2, const AbHom& h1);

/// Subgroup of an ambient group generated by the columns of `generators`.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(FgAbGroup ambient, Matrix generators);

  static Subgroup whole(const FgAbGroup& g);
  static Subgroup trivial(const FgAbGroup& g);

  const FgAbGroup& ambient() const noexcept { return ambient_; }
  const Matrix& generators() const noexcept { return generators_; }
  /// Preimage lattice in Z^g: generators plus ambient relations.
  const Lattice& lattice() const { return lattice_; }

  bool contains(std::span<const Integer> element) const { return lattice_.contains(element); }
  /// The subgroup as an abstract group (generated by a lattice basis).
  FgAbGroup as_group() const;

 private:
  FgAbGroup ambient_;
  Matrix generators_;
  Lattice lattice_;
};

/// Subgroup whose preimage lattice is `lattice` (must contain the relations).
Subgroup subgroup_from_lattice(const FgAbGroup& ambient, const Lattice& lattice);

Subgroup intersect(const Subgroup& a, const Subgroup& b);
Subgroup sum(const Subgroup& a, const Subgroup& b);

struct ContainmentResult {
  bool contained = false;
  /// A generator of the candidate subgroup outside the container, on failure.
  std::optional<Vector> witness;
};

/// Is `inner` a subset of `outer`?
ContainmentResult contains(const Subgroup& outer, const Subgroup& inner);
/// Mutual containment.
bool same_subgroup(const Subgroup& a, const Subgroup& b);

struct KernelResult {
  Subgroup subgroup;   // as a subgroup of the source
  FgAbGroup group;     // abstract kernel
  AbHom embedding;     // group -> source
};

KernelResult kernel(const AbHom& h);
Subgroup image(const AbHom& h);

struct QuotientResult {
  FgAbGroup group;
  AbHom projection;
};

QuotientResult quotient(const FgAbGroup& g, const Subgroup& s);

struct DirectSum {
  FgAbGroup group;
  std::vector<AbHom> inclusions;
  std::vector<AbHom> projections;
  std::vector<std::size_t> offsets;
};

DirectSum direct_sum(const std::vector<FgAbGroup>& groups);

/// Lattice subquotient numerator / denominator with denominator inside the
/// numerator. The group is presented on a basis of the numerator, whose
/// vectors are returned as representatives in the ambient coordinates.
struct Subquotient {
  FgAbGroup group;
  Matrix representatives;
};

Subquotient subquotient(const Lattice& numerator, const Lattice& denominator);

/// Homology at the middle of in: A -> B, out: B -> C (out ∘ in must be zero).
Subquotient homology(const AbHom& in, const AbHom& out);

}  // namespace posetab
