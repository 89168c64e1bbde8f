#pragma once

#include <optional>
#include <vector>

#include "posetab/integer_matrix.hpp"

namespace posetab {

/// Column Hermite form M·V = H. The first `rank` columns of H are the
/// lattice basis (pivot rows strictly increasing, pivots positive, entries
/// left of a pivot reduced modulo it); the remaining columns are zero.
struct ColumnEchelon {
  Matrix hermite;
  Matrix transform;  // V, unimodular; empty when not requested
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
};

ColumnEchelon column_echelon(const Matrix& m, bool with_transform);

/// Basis (as columns) of {x : m·x = 0}.
Matrix integer_kernel(const Matrix& m);

/// Some x with m·x = b, or nullopt if the system has no integer solution.
std::optional<Vector> solve_integer(const Matrix& m, std::span<const Integer> b);

struct SmithForm {
  Matrix left;      // U
  Matrix diagonal;  // D = U·M·V
  Matrix right;     // V
};

/// Smith normal form with unimodular certificates: U·M·V = D, diagonal
/// entries nonnegative with d1 | d2 | ... .
SmithForm smith_normal_form(const Matrix& m);

/// Nonzero diagonal entries of the Smith form (units included), without
/// building the transforms.
std::vector<Integer> smith_diagonal(const Matrix& m);

/// A sublattice of Z^n held by a column Hermite basis.
class Lattice {
 public:
  explicit Lattice(std::size_t dim = 0) : dim_(dim), basis_(dim, 0) {}

  static Lattice from_generators(const Matrix& generators);
  static Lattice full(std::size_t dim);
  /// Coordinate sublattice spanned by the listed unit vectors.
  static Lattice coordinate(std::size_t dim, std::span<const std::size_t> axes);

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return basis_.cols(); }
  const Matrix& basis() const noexcept { return basis_; }

  bool contains(std::span<const Integer> v) const;
  bool contains(const Lattice& other) const;
  /// Coordinates of v in the basis, when v lies in the lattice.
  std::optional<Vector> coordinates(std::span<const Integer> v) const;

  Lattice operator+(const Lattice& other) const;
  Lattice intersect(const Lattice& other) const;

  /// {x in Z^m : a·x in target}, for an n×m matrix a.
  static Lattice preimage(const Matrix& a, const Lattice& target);
  /// a·L + extra (extra may be the zero lattice of the right dimension).
  static Lattice image(const Matrix& a, const Lattice& source);

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.basis_ == b.basis_; }

 private:
  std::size_t dim_ = 0;
  Matrix basis_;
};

}  // namespace posetab
