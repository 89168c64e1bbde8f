#include "posetab/integer_matrix.hpp"

#include <cassert>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "posetab/error.hpp"

namespace posetab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Cycle: return "CycleError";
    case ErrorKind::Degree: return "DegreeError";
    case ErrorKind::DuplicateId: return "DuplicateIdError";
    case ErrorKind::UnknownId: return "UnknownIdError";
    case ErrorKind::NoArrow: return "NoArrowError";
    case ErrorKind::EmptyPoset: return "EmptyPosetError";
    case ErrorKind::Mismatch: return "MismatchError";
    case ErrorKind::AmbientMismatch: return "AmbientMismatchError";
    case ErrorKind::NotWellDefined: return "NotWellDefinedError";
    case ErrorKind::Diamond: return "DiamondError";
    case ErrorKind::MissingData: return "MissingDataError";
    case ErrorKind::NotNatural: return "NotNaturalError";
    case ErrorKind::VariantMismatch: return "VariantMismatchError";
    case ErrorKind::FamilyMismatch: return "FamilyMismatchError";
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::ConvergenceViolation: return "ConvergenceViolation";
    case ErrorKind::OracleViolation: return "OracleViolation";
  }
  return "Error";
}

Matrix::Matrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.resize(rows_ * cols_);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
    std::size_t c = 0;
    for (long v : row) (*this)(r, c++) = v;
    ++r;
  }
}

Matrix Matrix::identity(std::size_t n) { return scalar(n, 1); }

Matrix Matrix::scalar(std::size_t n, const Integer& value) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = value;
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vector>& columns) {
  Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

Matrix Matrix::from_row_major(std::size_t rows, std::size_t cols, std::span<const Integer> data) {
  if (data.size() != rows * cols) throw std::invalid_argument("row-major data size mismatch");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = data[r * cols + c];
  return m;
}

Vector Matrix::column_vector(std::size_t c) const {
  auto col = column(c);
  return Vector(col.begin(), col.end());
}

void Matrix::set_column(std::size_t c, std::span<const Integer> values) {
  assert(values.size() == rows_);
  auto col = column(c);
  for (std::size_t r = 0; r < rows_; ++r) col[r] = values[r];
}

void Matrix::append_column(std::span<const Integer> values) {
  if (values.size() != rows_) throw std::invalid_argument("column length mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++cols_;
}

void Matrix::add_column_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  Integer* t = data_.data() + target * rows_;
  const Integer* s = data_.data() + source * rows_;
  for (std::size_t r = 0; r < rows_; ++r)
    if (s[r] != 0) t[r] += factor * s[r];
}

void Matrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) {
    const Integer& s = (*this)(source, c);
    if (s != 0) (*this)(target, c) += factor * s;
  }
}

void Matrix::swap_columns(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) swap((*this)(r, a), (*this)(r, b));
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) swap((*this)(a, c), (*this)(b, c));
}

void Matrix::negate_column(std::size_t c) {
  for (auto& v : column(c)) v = -v;
}

void Matrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  Matrix m(rows_, cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) m.set_column(i, column(cols[i]));
  return m;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix m(rows.size(), cols_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (std::size_t i = 0; i < rows.size(); ++i) m(i, c) = (*this)(rows[i], c);
  return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const {
  assert(r0 + nrows <= rows_ && c0 + ncols <= cols_);
  Matrix m(nrows, ncols);
  for (std::size_t c = 0; c < ncols; ++c)
    for (std::size_t r = 0; r < nrows; ++r) m(r, c) = (*this)(r0 + r, c0 + c);
  return m;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  assert(r0 + m.rows() <= rows_ && c0 + m.cols() <= cols_);
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) (*this)(r0 + r, c0 + c) = m(r, c);
}

bool Matrix::is_zero() const { return posetab::is_zero(data_); }

std::vector<Integer> Matrix::row_major() const {
  std::vector<Integer> out;
  out.reserve(rows_ * cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.push_back((*this)(r, c));
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    auto oc = out.column(c);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& f = b(k, c);
      if (f == 0) continue;
      auto ac = a.column(k);
      for (std::size_t r = 0; r < a.rows(); ++r)
        if (ac[r] != 0) oc[r] += ac[r] * f;
    }
  }
  return out;
}

Vector operator*(const Matrix& a, std::span<const Integer> v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
  Vector out(a.rows());
  for (std::size_t k = 0; k < a.cols(); ++k) {
    if (v[k] == 0) continue;
    auto ac = a.column(k);
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (ac[r] != 0) out[r] += ac[r] * v[k];
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum dimension mismatch");
  Matrix out = a;
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (std::size_t r = 0; r < a.rows(); ++r) out(r, c) += b(r, c);
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

Matrix operator-(const Matrix& a) {
  Matrix out = a;
  for (std::size_t c = 0; c < a.cols(); ++c) out.negate_column(c);
  return out;
}

Matrix hcat(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat row mismatch");
  Matrix out(a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

Matrix vcat(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vcat column mismatch");
  Matrix out(a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix out(rows, cols);
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    out.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return out;
}

Integer determinant(const Matrix& input) {
  if (input.rows() != input.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  Matrix m = input;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && m(swap_with, k) == 0) ++swap_with;
      if (swap_with == n) return 0;
      m.swap_rows(k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

bool is_zero(std::span<const Integer> v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << ", ";
    os << '[';
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ", ";
      os << m(r, c);
    }
    os << ']';
  }
  return os << ']';
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

}  // namespace posetab
