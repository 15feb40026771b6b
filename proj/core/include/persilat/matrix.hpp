#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "persilat/field.hpp"

namespace persilat {

using Vector = std::vector<Residue>;

// Dense row-major matrix over GF(p). rows index the codomain basis and cols
// the domain basis. 0 x n and n x 0 matrices are ordinary values and stand
// for maps to and from the zero space.
class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

  static Matrix identity(Field field, std::size_t n);
  // Entries are reduced mod p, so negative inputs are accepted.
  static Matrix from_rows(Field field, std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static Matrix from_rows(Field field, std::size_t rows, std::size_t cols,
                          const std::vector<std::vector<std::int64_t>>& entries);
  static Matrix from_columns(Field field, std::size_t rows, const std::vector<Vector>& columns);
  static Matrix column_vector(Field field, const Vector& v);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Residue operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Residue& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t v) { at(r, c) = field_.reduce(v); }

  std::span<const Residue> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  Vector column(std::size_t c) const;
  std::span<const Residue> entries() const { return entries_; }

  Matrix transpose() const;
  Matrix negated() const;
  bool is_zero() const;
  // Sub-matrix of nr rows and nc cols starting at (r0, c0).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Matrix select_columns(std::span<const std::size_t> cols) const;

  // Concatenation; all parts must share the field and the stacked dimension.
  static Matrix hstack(Field field, std::size_t rows, std::span<const Matrix> parts);
  static Matrix vstack(Field field, std::size_t cols, std::span<const Matrix> parts);

  std::string to_string() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> entries_;
};

// Matrix product reduced mod p. Throws ShapeError on a.cols != b.rows and
// FieldError when the operands live over different fields.
Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Vector apply(const Matrix& a, const Vector& x);

}  // namespace persilat
