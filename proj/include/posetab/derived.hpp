#pragma once

#include <optional>
#include <vector>

#include "posetab/abgroup.hpp"
#include "posetab/diagram.hpp"

namespace posetab {

enum class ComplexKind { Chain, Cochain };

/// colim_* (left derived) or lim^* (right derived).
enum class LimitKind { Colim, Lim };

LimitKind limit_kind_of(ComplexKind k);
ComplexKind complex_kind_of(LimitKind k);
std::string to_string(LimitKind k);

/// One summand of a term of the nerve complex: F(object) placed on `chain`,
/// occupying ambient coordinates [offset, offset + rank).
struct Block {
  Chain chain;
  std::size_t object = 0;
  std::size_t offset = 0;
  std::size_t rank = 0;
};

struct ComplexTerm {
  FgAbGroup group;
  std::vector<Block> blocks;
};

/// Bounded complex C_0 .. C_top. Chain complexes have d: C_n -> C_{n-1},
/// cochain complexes d: C^n -> C^{n+1}; terms outside the range are zero.
class ChainComplex {
 public:
  ChainComplex() = default;
  /// `differentials[n]` is the matrix of d on C_n. Throws std::logic_error
  /// if some d is not well defined or d∘d != 0.
  ChainComplex(ComplexKind kind, std::vector<ComplexTerm> terms, std::vector<Matrix> differentials);

  ComplexKind kind() const noexcept { return kind_; }
  /// -1 for chain complexes, +1 for cochain complexes.
  int step() const noexcept { return kind_ == ComplexKind::Chain ? -1 : 1; }
  /// Number of terms; degrees run over 0 .. length()-1.
  std::size_t length() const noexcept { return terms_.size(); }
  bool in_range(long n) const noexcept { return n >= 0 && n < static_cast<long>(terms_.size()); }

  /// Zero term outside the range.
  const ComplexTerm& term(long n) const;
  const FgAbGroup& group(long n) const { return term(n).group; }
  /// d on C_n, with the correct (possibly zero) shape even at the ends.
  Matrix differential(long n) const;

 private:
  ComplexKind kind_ = ComplexKind::Chain;
  std::vector<ComplexTerm> terms_;
  std::vector<Matrix> d_;
  ComplexTerm zero_;
};

/// Normalized complex over nondegenerate chains.
ChainComplex chain_complex(const Diagram& f);
ChainComplex cochain_complex(const Diagram& f);
ChainComplex nerve_complex(const Diagram& f, ComplexKind kind);

/// Complex over all weakly ascending chains, truncated after degree `top`.
/// Its homology is meaningful in degrees below `top`.
ChainComplex unnormalized_complex(const Diagram& f, ComplexKind kind, std::size_t top);

/// H_n (or H^n) as cycles / boundaries, with cycle representatives.
Subquotient homology_at(const ChainComplex& x, long n);

FgAbGroup derived_functor(const Diagram& f, LimitKind kind, long i);
/// The groups for i = 0 .. max_degree.
std::vector<GroupInvariants> derived_table(const Diagram& f, LimitKind kind, long max_degree);

struct AcyclicityResult {
  bool acyclic = true;
  /// First degree >= 1 with a nonzero group, on failure.
  std::optional<long> degree;
  GroupInvariants group;
};

AcyclicityResult is_acyclic(const Diagram& f, LimitKind kind);

/// Coequalizer of all arrows: (sum of F(i)) / (x - F(α)x).
FgAbGroup colimit_direct(const Diagram& f);
/// Compatible families (x_i) with F(α)x_p = x_q.
FgAbGroup limit_direct(const Diagram& f);

}  // namespace posetab
