#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "posetab/abgroup.hpp"
#include "posetab/poset.hpp"

namespace posetab {

using CoverKey = std::pair<std::size_t, std::size_t>;

/// A functor P -> Ab given on covers. Immutable once validated; every
/// composite F(p -> q) is computed and cached at validation time.
class Diagram {
 public:
  Diagram() = default;

  /// Groups are indexed like poset objects; `cover_maps` must have exactly
  /// one entry per cover. Throws MissingDataError, MismatchError or
  /// DiamondError.
  static Diagram validate(GradedPoset poset, std::vector<FgAbGroup> groups, std::map<CoverKey, AbHom> cover_maps);

  const GradedPoset& poset() const noexcept { return poset_; }
  std::size_t size() const noexcept { return groups_.size(); }

  const FgAbGroup& group(std::size_t i) const { return groups_[i]; }
  const FgAbGroup& group(const std::string& id) const { return groups_[poset_.index(id)]; }
  const std::vector<FgAbGroup>& groups() const noexcept { return groups_; }

  const AbHom& cover_map(std::size_t p, std::size_t q) const;
  const std::map<CoverKey, AbHom>& cover_maps() const noexcept { return cover_maps_; }

  /// F(p -> q); throws NoArrowError unless p <= q.
  const AbHom& eval(std::size_t p, std::size_t q) const;

  friend bool operator==(const Diagram& a, const Diagram& b);

 private:
  GradedPoset poset_;
  std::vector<FgAbGroup> groups_;
  std::map<CoverKey, AbHom> cover_maps_;
  std::vector<std::optional<AbHom>> composites_;  // n*n, set where leq
};

/// Id-keyed front end to Diagram::validate.
Diagram validate_functor(const GradedPoset& poset, const std::map<std::string, FgAbGroup>& groups,
                         const std::map<IdPair, AbHom>& cover_maps);

const AbHom& eval_hom(const Diagram& f, const std::string& p, const std::string& q);

/// Family of components F(i) => G(i) commuting with every cover map.
class NatTransformation {
 public:
  NatTransformation() = default;
  /// Throws MismatchError on shape problems, NotNaturalError on a failing square.
  NatTransformation(Diagram source, Diagram target, std::vector<AbHom> components);

  const Diagram& source() const noexcept { return source_; }
  const Diagram& target() const noexcept { return target_; }
  const AbHom& component(std::size_t i) const { return components_[i]; }
  const std::vector<AbHom>& components() const noexcept { return components_; }

 private:
  Diagram source_;
  Diagram target_;
  std::vector<AbHom> components_;
};

/// Sum of the images of the cover maps into i0.
Subgroup im_at(const Diagram& f, std::size_t i0);
/// Same subgroup, summed over every non-identity arrow (reference version).
Subgroup im_at_all_arrows(const Diagram& f, std::size_t i0);

QuotientResult coker_at(const Diagram& f, std::size_t i0);

/// Intersection of the kernels of every non-identity arrow out of i0.
Subgroup ker_at(const Diagram& f, std::size_t i0);
/// Intersection over covers out of i0 only.
Subgroup ker_at_covers(const Diagram& f, std::size_t i0);

QuotientResult coim_at(const Diagram& f, std::size_t i0);

struct CokerFunctor {
  Diagram diagram;
  NatTransformation sigma;  // F => Coker_F
};

CokerFunctor coker_functor(const Diagram& f);

/// Coker'_F(i0) = sum over objects i <= i0 of Coker_F(i); summands are keyed
/// by the source object and ordered by id.
struct CokerPrimeFunctor {
  Diagram diagram;
  NatTransformation pi;  // Coker'_F => Coker_F
  /// summand_sources[i0] lists the sources i of the summands of Coker'_F(i0).
  std::vector<std::vector<std::size_t>> summand_sources;
};

CokerPrimeFunctor coker_prime_functor(const Diagram& f);

Diagram representable(const GradedPoset& poset, std::size_t c);
Diagram skyscraper(const GradedPoset& poset, std::size_t i0, const FgAbGroup& a);
Diagram constant(const GradedPoset& poset, const FgAbGroup& a);

enum class StandardKind { Representable, Skyscraper, Constant };

/// `object` is ignored for Constant, `group` for Representable.
Diagram build_standard_diagram(StandardKind kind, const GradedPoset& poset, const std::string& object = {},
                               const FgAbGroup& group = FgAbGroup::free(1));

/// Objectwise direct sum of diagrams over one poset.
Diagram direct_sum(const std::vector<Diagram>& parts);

/// Same poset, new presentations: F'(i) = u_i F(i), with maps conjugated.
/// `u[i]` must be unimodular and `u_inv[i]` its inverse.
Diagram change_presentation(const Diagram& f, const std::vector<Matrix>& u, const std::vector<Matrix>& u_inv);

/// The transformation F => skyscraper(i0, A) with component h ∘ projection at i0.
NatTransformation check_adjunction_instance(const Diagram& f, std::size_t i0, const FgAbGroup& a, const AbHom& h);

/// Inverse direction: a transformation F => skyscraper(i0, A) kills Im_F(i0);
/// returns the induced Coker_F(i0) -> A. Throws NotNaturalError otherwise.
AbHom factor_through_coker(const NatTransformation& eta, std::size_t i0);

/// F*(i) = Hom(F(i), Z) over opposite(P), with F*(q -> p) = precomposition
/// with F(p -> q). Presented on a basis of the left kernel of each
/// relation matrix, so torsion is dropped.
Diagram dual_diagram(const Diagram& f);

}  // namespace posetab
