#include "posetab/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace posetab {
namespace {

int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Row/column operations applied simultaneously to the working matrix and to
// the optional left (rows) and right (columns) transforms.
struct SmithWork {
  Matrix d;
  Matrix* left = nullptr;
  Matrix* right = nullptr;

  void swap_rows(std::size_t a, std::size_t b) {
    d.swap_rows(a, b);
    if (left) left->swap_rows(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    d.swap_columns(a, b);
    if (right) right->swap_columns(a, b);
  }
  void add_row(std::size_t target, std::size_t source, const Integer& f) {
    d.add_row_multiple(target, source, f);
    if (left) left->add_row_multiple(target, source, f);
  }
  void add_col(std::size_t target, std::size_t source, const Integer& f) {
    d.add_column_multiple(target, source, f);
    if (right) right->add_column_multiple(target, source, f);
  }
  void negate_row(std::size_t r) {
    d.negate_row(r);
    if (left) left->negate_row(r);
  }

  void run() {
    const std::size_t m = d.rows(), n = d.cols();
    const std::size_t steps = std::min(m, n);
    for (std::size_t t = 0; t < steps; ++t) {
      if (!move_smallest_to(t, t, t)) return;
      while (true) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (d(i, t) == 0) continue;
          add_row(i, t, -floor_div(d(i, t), d(t, t)));
          if (d(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (d(t, j) == 0) continue;
          add_col(j, t, -floor_div(d(t, j), d(t, t)));
          if (d(t, j) != 0) clean = false;
        }
        if (!clean) {
          move_smallest_cross(t);
          continue;
        }
        // Row and column t are clear; enforce divisibility of the rest.
        bool divisible = true;
        for (std::size_t i = t + 1; i < m && divisible; ++i) {
          for (std::size_t j = t + 1; j < n; ++j) {
            if (d(i, j) != 0 && !mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
              add_row(t, i, 1);
              divisible = false;
              break;
            }
          }
        }
        if (divisible) break;
      }
      if (d(t, t) < 0) negate_row(t);
    }
  }

  // Moves the entry of least absolute value in the lower-right block
  // starting at (r0, c0) to position (t, t). Returns false if the block is zero.
  bool move_smallest_to(std::size_t t, std::size_t r0, std::size_t c0) {
    std::size_t best_r = 0, best_c = 0;
    bool found = false;
    for (std::size_t j = c0; j < d.cols(); ++j) {
      for (std::size_t i = r0; i < d.rows(); ++i) {
        if (d(i, j) == 0) continue;
        if (!found || cmpabs(d(i, j), d(best_r, best_c)) < 0) {
          best_r = i;
          best_c = j;
          found = true;
        }
      }
    }
    if (!found) return false;
    swap_rows(t, best_r);
    swap_cols(t, best_c);
    return true;
  }

  // Among the remaining entries of row t and column t, bring the smallest to
  // the pivot position.
  void move_smallest_cross(std::size_t t) {
    std::size_t best_r = t, best_c = t;
    for (std::size_t i = t + 1; i < d.rows(); ++i)
      if (d(i, t) != 0 && cmpabs(d(i, t), d(best_r, best_c)) < 0) {
        best_r = i;
        best_c = t;
      }
    for (std::size_t j = t + 1; j < d.cols(); ++j)
      if (d(t, j) != 0 && cmpabs(d(t, j), d(best_r, best_c)) < 0) {
        best_r = t;
        best_c = j;
      }
    swap_rows(t, best_r);
    swap_cols(t, best_c);
  }
};

}  // namespace

ColumnEchelon column_echelon(const Matrix& m, bool with_transform) {
  ColumnEchelon out;
  out.hermite = m;
  Matrix& h = out.hermite;
  const std::size_t rows = m.rows(), n = m.cols();
  if (with_transform) out.transform = Matrix::identity(n);
  Matrix* v = with_transform ? &out.transform : nullptr;

  auto add_col = [&](std::size_t target, std::size_t source, const Integer& f) {
    h.add_column_multiple(target, source, f);
    if (v) v->add_column_multiple(target, source, f);
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    h.swap_columns(a, b);
    if (v) v->swap_columns(a, b);
  };

  std::size_t r = 0;
  for (std::size_t i = 0; i < rows && r < n; ++i) {
    while (true) {
      std::size_t best = n;
      for (std::size_t c = r; c < n; ++c)
        if (h(i, c) != 0 && (best == n || cmpabs(h(i, c), h(i, best)) < 0)) best = c;
      if (best == n) break;
      swap_cols(r, best);
      bool done = true;
      for (std::size_t c = r + 1; c < n; ++c) {
        if (h(i, c) == 0) continue;
        add_col(c, r, -floor_div(h(i, c), h(i, r)));
        if (h(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (r >= n || h(i, r) == 0) continue;
    if (h(i, r) < 0) {
      h.negate_column(r);
      if (v) v->negate_column(r);
    }
    for (std::size_t j = 0; j < r; ++j)
      if (h(i, j) != 0) add_col(j, r, -floor_div(h(i, j), h(i, r)));
    out.pivot_rows.push_back(i);
    ++r;
  }
  out.rank = r;
  return out;
}

Matrix integer_kernel(const Matrix& m) {
  auto ech = column_echelon(m, true);
  const std::size_t n = m.cols();
  Matrix k(n, n - ech.rank);
  for (std::size_t c = ech.rank; c < n; ++c) k.set_column(c - ech.rank, ech.transform.column(c));
  return k;
}

namespace {

// Back-substitution against a column Hermite basis.
std::optional<Vector> hermite_coordinates(const Matrix& basis, const std::vector<std::size_t>& pivots,
                                          std::span<const Integer> target) {
  Vector rest(target.begin(), target.end());
  Vector coeffs(basis.cols());
  for (std::size_t k = 0; k < basis.cols(); ++k) {
    const std::size_t p = pivots[k];
    // Rows strictly between earlier pivots and p are untouched by later columns.
    const std::size_t lo = k == 0 ? 0 : pivots[k - 1] + 1;
    for (std::size_t row = lo; row < p; ++row)
      if (rest[row] != 0) return std::nullopt;
    if (rest[p] == 0) continue;
    if (!mpz_divisible_p(rest[p].get_mpz_t(), basis(p, k).get_mpz_t())) return std::nullopt;
    Integer c;
    mpz_divexact(c.get_mpz_t(), rest[p].get_mpz_t(), basis(p, k).get_mpz_t());
    auto col = basis.column(k);
    for (std::size_t row = p; row < rest.size(); ++row)
      if (col[row] != 0) rest[row] -= c * col[row];
    coeffs[k] = std::move(c);
  }
  if (!is_zero(rest)) return std::nullopt;
  return coeffs;
}

}  // namespace

std::optional<Vector> solve_integer(const Matrix& m, std::span<const Integer> b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_integer: right-hand side length mismatch");
  auto ech = column_echelon(m, true);
  Matrix basis = ech.hermite.block(0, 0, m.rows(), ech.rank);
  auto c = hermite_coordinates(basis, ech.pivot_rows, b);
  if (!c) return std::nullopt;
  Vector x(m.cols());
  for (std::size_t k = 0; k < ech.rank; ++k) {
    if ((*c)[k] == 0) continue;
    auto col = ech.transform.column(k);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += col[i] * (*c)[k];
  }
  return x;
}

SmithForm smith_normal_form(const Matrix& m) {
  SmithForm out;
  out.left = Matrix::identity(m.rows());
  out.right = Matrix::identity(m.cols());
  SmithWork work{m, &out.left, &out.right};
  work.run();
  out.diagonal = std::move(work.d);
  return out;
}

std::vector<Integer> smith_diagonal(const Matrix& m) {
  // Two Hermite passes compress M to a square triangular matrix with the
  // same Smith form, then the transform-free elimination finishes it.
  auto first = column_echelon(m, false);
  Matrix basis = first.hermite.block(0, 0, m.rows(), first.rank);
  auto second = column_echelon(basis.transpose(), false);
  SmithWork work{second.hermite.block(0, 0, first.rank, second.rank)};
  work.run();
  std::vector<Integer> diag;
  for (std::size_t i = 0; i < std::min(work.d.rows(), work.d.cols()); ++i)
    if (work.d(i, i) != 0) diag.push_back(work.d(i, i));
  return diag;
}

Lattice Lattice::from_generators(const Matrix& generators) {
  auto ech = column_echelon(generators, false);
  Lattice out(generators.rows());
  out.basis_ = ech.hermite.block(0, 0, generators.rows(), ech.rank);
  return out;
}

Lattice Lattice::full(std::size_t dim) {
  Lattice out(dim);
  out.basis_ = Matrix::identity(dim);
  return out;
}

Lattice Lattice::coordinate(std::size_t dim, std::span<const std::size_t> axes) {
  std::vector<std::size_t> sorted(axes.begin(), axes.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Lattice out(dim);
  out.basis_ = Matrix(dim, sorted.size());
  for (std::size_t k = 0; k < sorted.size(); ++k) out.basis_(sorted[k], k) = 1;
  return out;
}

namespace {

std::vector<std::size_t> pivots_of(const Matrix& basis) {
  std::vector<std::size_t> pivots(basis.cols());
  for (std::size_t k = 0; k < basis.cols(); ++k) {
    auto col = basis.column(k);
    std::size_t p = 0;
    while (col[p] == 0) ++p;
    pivots[k] = p;
  }
  return pivots;
}

}  // namespace

std::optional<Vector> Lattice::coordinates(std::span<const Integer> v) const {
  if (v.size() != dim_) throw std::invalid_argument("lattice membership: dimension mismatch");
  return hermite_coordinates(basis_, pivots_of(basis_), v);
}

bool Lattice::contains(std::span<const Integer> v) const { return coordinates(v).has_value(); }

bool Lattice::contains(const Lattice& other) const {
  if (other.dim_ != dim_) throw std::invalid_argument("lattice containment: dimension mismatch");
  if (other.rank() > rank()) return false;
  auto pivots = pivots_of(basis_);
  for (std::size_t c = 0; c < other.rank(); ++c)
    if (!hermite_coordinates(basis_, pivots, other.basis_.column(c))) return false;
  return true;
}

Lattice Lattice::operator+(const Lattice& other) const {
  if (other.dim_ != dim_) throw std::invalid_argument("lattice sum: dimension mismatch");
  if (rank() == 0) return other;
  if (other.rank() == 0) return *this;
  return from_generators(hcat(basis_, other.basis_));
}

Lattice Lattice::intersect(const Lattice& other) const {
  if (other.dim_ != dim_) throw std::invalid_argument("lattice intersection: dimension mismatch");
  if (rank() == 0 || other.rank() == 0) return Lattice(dim_);
  if (rank() == dim_ && basis_ == Matrix::identity(dim_)) return other;
  if (other.rank() == dim_ && other.basis_ == Matrix::identity(dim_)) return *this;
  Matrix k = integer_kernel(hcat(basis_, -other.basis_));
  Matrix top = k.block(0, 0, rank(), k.cols());
  return from_generators(basis_ * top);
}

Lattice Lattice::preimage(const Matrix& a, const Lattice& target) {
  if (a.rows() != target.dim_) throw std::invalid_argument("lattice preimage: dimension mismatch");
  const std::size_t m = a.cols();
  if (target.rank() == target.dim_ && target.basis_ == Matrix::identity(target.dim_)) return full(m);
  Matrix k = integer_kernel(hcat(a, -target.basis_));
  return from_generators(k.block(0, 0, m, k.cols()));
}

Lattice Lattice::image(const Matrix& a, const Lattice& source) {
  if (a.cols() != source.dim_) throw std::invalid_argument("lattice image: dimension mismatch");
  return from_generators(a * source.basis_);
}

}  // namespace posetab
