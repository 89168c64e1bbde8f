#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace posetab {

using Integer = mpz_class;
using Vector = std::vector<Integer>;

/// Dense integer matrix, stored column-major since almost every lattice
/// algorithm here works with column operations.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  /// Row-major nested initializer, e.g. Matrix{{1, 2}, {3, 4}}.
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns);
  static Matrix from_row_major(std::size_t rows, std::size_t cols, std::span<const Integer> data);
  static Matrix scalar(std::size_t n, const Integer& value);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

  std::span<Integer> column(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
  std::span<const Integer> column(std::size_t c) const { return {data_.data() + c * rows_, rows_}; }
  Vector column_vector(std::size_t c) const;

  void set_column(std::size_t c, std::span<const Integer> values);
  void append_column(std::span<const Integer> values);

  /// col(target) += factor * col(source)
  void add_column_multiple(std::size_t target, std::size_t source, const Integer& factor);
  /// row(target) += factor * row(source)
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void swap_columns(std::size_t a, std::size_t b);
  void swap_rows(std::size_t a, std::size_t b);
  void negate_column(std::size_t c);
  void negate_row(std::size_t r);

  Matrix transpose() const;
  Matrix select_columns(std::span<const std::size_t> cols) const;
  Matrix select_rows(std::span<const std::size_t> rows) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& m);

  bool is_zero() const;
  std::vector<Integer> row_major() const;

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const Integer> v);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a);

/// [a | b]; row counts must agree.
Matrix hcat(const Matrix& a, const Matrix& b);
/// [a ; b]; column counts must agree.
Matrix vcat(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const std::vector<Matrix>& blocks);

/// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const Matrix& m);

bool is_zero(std::span<const Integer> v);

std::ostream& operator<<(std::ostream& os, const Matrix& m);
std::string to_string(const Matrix& m);

}  // namespace posetab
