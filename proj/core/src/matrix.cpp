#include "persilat/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "persilat/error.hpp"

namespace persilat {

namespace {

void require_same_field(const Field& a, const Field& b) {
  if (a != b) {
    throw FieldError("matrices over GF(" + std::to_string(a.modulus()) + ") and GF(" +
                     std::to_string(b.modulus()) + ") cannot be combined");
  }
}

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1 % field.modulus();
  return m;
}

Matrix Matrix::from_rows(Field field,
                         std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::vector<std::vector<std::int64_t>> entries;
  for (const auto& r : rows) entries.emplace_back(r);
  std::size_t cols = entries.empty() ? 0 : entries.front().size();
  return from_rows(field, entries.size(), cols, entries);
}

Matrix Matrix::from_rows(Field field, std::size_t rows, std::size_t cols,
                         const std::vector<std::vector<std::int64_t>>& entries) {
  if (entries.size() != rows) {
    throw ShapeError("expected " + std::to_string(rows) + " rows, got " +
                     std::to_string(entries.size()));
  }
  Matrix m(field, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (entries[r].size() != cols) {
      throw ShapeError("row " + std::to_string(r) + " has " + std::to_string(entries[r].size()) +
                       " entries, expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, entries[r][c]);
  }
  return m;
}

Matrix Matrix::from_columns(Field field, std::size_t rows, const std::vector<Vector>& columns) {
  Matrix m(field, rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw ShapeError("column length does not match row count");
    for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = columns[c][r] % field.modulus();
  }
  return m;
}

Matrix Matrix::column_vector(Field field, const Vector& v) {
  return from_columns(field, v.size(), {v});
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::negated() const {
  Matrix n = *this;
  for (auto& e : n.entries_) e = field_.neg(e);
  return n;
}

bool Matrix::is_zero() const {
  for (auto e : entries_)
    if (e != 0) return false;
  return true;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw ShapeError("block out of range of " + shape(*this));
  }
  Matrix b(field_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b.at(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  Matrix s(field_, rows_, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= cols_) throw ShapeError("column index out of range");
    for (std::size_t r = 0; r < rows_; ++r) s.at(r, j) = (*this)(r, cols[j]);
  }
  return s;
}

Matrix Matrix::hstack(Field field, std::size_t rows, std::span<const Matrix> parts) {
  std::size_t cols = 0;
  for (const auto& p : parts) {
    require_same_field(field, p.field());
    if (p.rows() != rows) throw ShapeError("hstack: part has " + shape(p) + ", expected " +
                                           std::to_string(rows) + " rows");
    cols += p.cols();
  }
  Matrix m(field, rows, cols);
  std::size_t offset = 0;
  for (const auto& p : parts) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < p.cols(); ++c) m.at(r, offset + c) = p(r, c);
    offset += p.cols();
  }
  return m;
}

Matrix Matrix::vstack(Field field, std::size_t cols, std::span<const Matrix> parts) {
  std::size_t rows = 0;
  for (const auto& p : parts) {
    require_same_field(field, p.field());
    if (p.cols() != cols) throw ShapeError("vstack: part has " + shape(p) + ", expected " +
                                           std::to_string(cols) + " cols");
    rows += p.rows();
  }
  Matrix m(field, rows, cols);
  std::size_t offset = 0;
  for (const auto& p : parts) {
    for (std::size_t r = 0; r < p.rows(); ++r)
      for (std::size_t c = 0; c < cols; ++c) m.at(offset + r, c) = p(r, c);
    offset += p.rows();
  }
  return m;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ',';
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ',';
      os << (*this)(r, c);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  if (a.cols() != b.rows()) {
    throw ShapeError("cannot multiply " + shape(a) + " by " + shape(b));
  }
  const Field& f = a.field();
  const std::uint64_t p = f.modulus();
  Matrix out(f, a.rows(), b.cols());
  std::vector<std::uint64_t> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      std::uint64_t aik = a(i, k);
      if (aik == 0) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) acc[j] = (acc[j] + aik * brow[j]) % p;
    }
    for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, j) = static_cast<Residue>(acc[j]);
  }
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("cannot add " + shape(a) + " and " + shape(b));
  Matrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out.at(r, c) = a.field().add(a(r, c), b(r, c));
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + b.negated(); }

Vector apply(const Matrix& a, const Vector& x) {
  if (x.size() != a.cols()) throw ShapeError("vector length does not match matrix columns");
  const Field& f = a.field();
  Vector y(a.rows(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Residue s = 0;
    for (std::size_t c = 0; c < a.cols(); ++c) s = f.add(s, f.mul(a(r, c), x[c]));
    y[r] = s;
  }
  return y;
}

}  // namespace persilat
