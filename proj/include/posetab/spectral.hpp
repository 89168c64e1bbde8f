#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "posetab/derived.hpp"

namespace posetab {

enum class SSType { Homological, Cohomological };
enum class FilterVertex { First, Last };  // σ_0 or σ_n
enum class Comparison { AtLeast, AtMost };

std::string to_string(SSType t);

/// Blocks whose chosen vertex has declared degree >= p (or <= p) form the
/// p-th filtration piece.
struct Filtration {
  FilterVertex vertex = FilterVertex::Last;
  Comparison comparison = Comparison::AtMost;
};

/// Filtrations by >= give cohomological spectral sequences, by <= homological.
SSType type_of(Comparison c);

/// One row of the table of filtered complexes: complex, degree direction,
/// first (outer) and second (inner) filtration.
struct Variant {
  int number = 0;
  ComplexKind complex = ComplexKind::Chain;
  Direction direction = Direction::Increasing;
  Filtration first;
  Filtration second;
};

/// Rows 1..8; throws ValidationError otherwise.
const Variant& table_variant(int number);
std::string describe(const Variant& v);

/// (Δp, Δq) of d_r.
std::pair<int, int> bidegree(SSType type, int r);

/// A bounded complex with a filtration level p on every block. Internally
/// levels are turned into a decreasing filtration by t = p (for >=) or
/// t = -p (for <=).
class FilteredComplex {
 public:
  FilteredComplex() = default;
  /// Throws std::logic_error if d does not respect the filtration.
  FilteredComplex(ChainComplex base, std::vector<std::vector<int>> levels, Comparison comparison);

  const ChainComplex& base() const noexcept { return base_; }
  Comparison comparison() const noexcept { return comparison_; }
  SSType type() const noexcept { return type_of(comparison_); }
  /// Declared filtration level of block b in degree n.
  int level(long n, std::size_t b) const { return levels_[n][b]; }
  const std::vector<std::vector<int>>& levels() const noexcept { return levels_; }

  int internal(int p) const { return comparison_ == Comparison::AtLeast ? p : -p; }
  int declared(int t) const { return comparison_ == Comparison::AtLeast ? t : -t; }
  /// Internal level range (empty complex: min > max).
  int min_internal() const noexcept { return t_min_; }
  int max_internal() const noexcept { return t_max_; }
  /// Width of the filtration: max level - min level.
  int span() const noexcept { return t_max_ >= t_min_ ? t_max_ - t_min_ : 0; }

  /// q = s·n - p, s = +1 when the complex and spectral sequence point the
  /// same way (chain/homological or cochain/cohomological), else -1.
  int q_of(long n, int p) const;
  long n_of(int p, int q) const;

  /// Subcomplex of blocks at one declared level with the induced differential.
  ChainComplex graded_piece(int p) const;

 private:
  ChainComplex base_;
  std::vector<std::vector<int>> levels_;
  Comparison comparison_ = Comparison::AtMost;
  int t_min_ = 0;
  int t_max_ = -1;
};

/// Throws VariantMismatchError when the variant's degree direction differs
/// from the poset's declared one.
FilteredComplex build_filtered(const Diagram& f, int variant);
FilteredComplex build_filtered(const Diagram& f, ComplexKind complex, Filtration filtration);

struct SSEntry {
  int p = 0;
  int q = 0;
  long n = 0;
  /// Presented on a basis of the numerator lattice (ambient coordinates of C_n).
  FgAbGroup group;
  Matrix representatives;
};

struct SSDifferential {
  std::pair<int, int> from;
  std::pair<int, int> to;
  AbHom map;
};

struct SSPage {
  int r = 0;
  SSType type = SSType::Homological;
  std::vector<SSEntry> entries;  // sorted by (p, q)
  std::vector<SSDifferential> differentials;

  const SSEntry* find(int p, int q) const;
  GroupInvariants invariants(int p, int q) const;
  /// (p, q) positions with a nonzero group.
  std::vector<std::pair<int, int>> support() const;
};

/// Pages of one filtered complex, computed from the filtered lattices and cached.
class SpectralSequence {
 public:
  explicit SpectralSequence(FilteredComplex x);
  ~SpectralSequence();
  SpectralSequence(SpectralSequence&&) noexcept;
  SpectralSequence& operator=(SpectralSequence&&) noexcept;

  const FilteredComplex& complex() const;

  /// Page r >= 0 with its differentials d_r.
  const SSPage& page(int r);
  /// Page span + 2, after checking it equals the next one (ConvergenceViolation otherwise).
  const SSPage& e_infinity();
  int stable_page() const;

  /// Page r+1 equals the homology of (page r, d_r) entrywise, and d_r∘d_r = 0.
  bool recurrence_holds(int r, std::string* detail = nullptr);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

SSPage page(const FilteredComplex& x, int r);
SSPage e_infinity(const FilteredComplex& x);

struct InnerSpectralSequence {
  int p = 0;
  FilteredComplex complex;
  std::vector<SSPage> pages;  // 0 .. stable page
};

/// Second filtration on the p-th graded piece of the outer filtration.
InnerSpectralSequence inner_column_ss(const Diagram& f, int p, int variant);

struct DegreeConvergence {
  long n = 0;
  std::size_t e_infinity_rank = 0;
  GroupInvariants target;
  bool orders_checked = false;
};

struct ConvergenceReport {
  int variant = 0;
  int stable_page = 0;
  std::vector<DegreeConvergence> degrees;
};

/// Rank additivity (and order equality for finite total degrees) of E_∞
/// against colim_n or lim^n. Throws ConvergenceViolation.
ConvergenceReport convergence_check(const Diagram& f, int variant);
/// Against the homology of the filtered complex itself.
ConvergenceReport convergence_check(SpectralSequence& ss);

/// Inner E_∞ versus the outer E_1 column at p, by ranks and finite orders.
void check_inner_against_outer(const Diagram& f, int p, int variant);

}  // namespace posetab
