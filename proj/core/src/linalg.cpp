#include "persilat/linalg.hpp"

#include <array>

#include "persilat/error.hpp"

namespace persilat {

Echelon row_reduce(Matrix a) {
  const Field f = a.field();
  std::vector<std::size_t> pivots;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < a.cols() && pivot_row < a.rows(); ++c) {
    std::size_t r = pivot_row;
    while (r < a.rows() && a(r, c) == 0) ++r;
    if (r == a.rows()) continue;
    if (r != pivot_row) {
      for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a.at(r, k), a.at(pivot_row, k));
    }
    const Residue scale = f.inv(a(pivot_row, c));
    for (std::size_t k = c; k < a.cols(); ++k) a.at(pivot_row, k) = f.mul(a(pivot_row, k), scale);
    for (std::size_t other = 0; other < a.rows(); ++other) {
      if (other == pivot_row) continue;
      const Residue factor = a(other, c);
      if (factor == 0) continue;
      for (std::size_t k = c; k < a.cols(); ++k) {
        a.at(other, k) = f.sub(a(other, k), f.mul(factor, a(pivot_row, k)));
      }
    }
    pivots.push_back(c);
    ++pivot_row;
  }
  return {std::move(a), std::move(pivots)};
}

SubspaceBasis SubspaceBasis::span(const Matrix& generators) {
  Echelon e = row_reduce(generators.transpose());
  const std::size_t k = e.pivots.size();
  Matrix basis(generators.field(), generators.rows(), k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t r = 0; r < generators.rows(); ++r) basis.at(r, i) = e.reduced(i, r);
  return SubspaceBasis(std::move(basis), std::move(e.pivots));
}

SubspaceBasis SubspaceBasis::zero(Field field, std::size_t ambient_dim) {
  return SubspaceBasis(Matrix(field, ambient_dim, 0), {});
}

SubspaceBasis SubspaceBasis::full(Field field, std::size_t ambient_dim) {
  std::vector<std::size_t> pivots(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) pivots[i] = i;
  return SubspaceBasis(Matrix::identity(field, ambient_dim), std::move(pivots));
}

bool SubspaceBasis::contains(const Vector& v) const {
  if (v.size() != ambient_dim()) throw ShapeError("vector length does not match ambient dimension");
  const Field& f = field();
  Vector residual = v;
  for (std::size_t i = 0; i < dim(); ++i) {
    const Residue coeff = residual[pivots_[i]];
    if (coeff == 0) continue;
    for (std::size_t r = 0; r < ambient_dim(); ++r) {
      residual[r] = f.sub(residual[r], f.mul(coeff, basis_(r, i)));
    }
  }
  for (auto x : residual)
    if (x != 0) return false;
  return true;
}

bool SubspaceBasis::contains(const SubspaceBasis& other) const {
  if (other.ambient_dim() != ambient_dim()) throw ShapeError("ambient dimension mismatch");
  for (std::size_t c = 0; c < other.dim(); ++c)
    if (!contains(other.basis().column(c))) return false;
  return true;
}

std::size_t rank(const Matrix& a) {
  if (a.empty()) return 0;
  return row_reduce(a).pivots.size();
}

SubspaceBasis kernel_basis(const Matrix& a) {
  const Field f = a.field();
  const std::size_t n = a.cols();
  if (a.rows() == 0) return SubspaceBasis::full(f, n);
  Echelon e = row_reduce(a);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> vectors;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector x(n, 0);
    x[free] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = f.neg(e.reduced(i, free));
    vectors.push_back(std::move(x));
  }
  return SubspaceBasis::span(Matrix::from_columns(f, n, vectors));
}

SubspaceBasis image_basis(const Matrix& a) { return SubspaceBasis::span(a); }

Matrix quotient_map(std::size_t ambient_dim, const SubspaceBasis& w) {
  if (w.ambient_dim() != ambient_dim) {
    throw ShapeError("quotient: subspace lives in dimension " + std::to_string(w.ambient_dim()) +
                     ", expected " + std::to_string(ambient_dim));
  }
  const Field& f = w.field();
  std::vector<bool> is_pivot(ambient_dim, false);
  for (auto p : w.pivots()) is_pivot[p] = true;
  Matrix q(f, ambient_dim - w.dim(), ambient_dim);
  std::size_t row = 0;
  for (std::size_t j = 0; j < ambient_dim; ++j) {
    if (is_pivot[j]) continue;
    q.at(row, j) = 1;
    for (std::size_t i = 0; i < w.dim(); ++i) {
      const Residue coeff = w.basis()(j, i);
      if (coeff != 0) q.at(row, w.pivots()[i]) = f.sub(q(row, w.pivots()[i]), coeff);
    }
    ++row;
  }
  return q;
}

SubspaceBasis subspace_sum(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw ShapeError("subspace sum: ambient mismatch");
  std::array<Matrix, 2> parts{a.basis(), b.basis()};
  return SubspaceBasis::span(Matrix::hstack(a.field(), a.ambient_dim(), parts));
}

SubspaceBasis intersection(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw ShapeError("intersection: ambient mismatch");
  // a c1 = b c2  <=>  [A | -B] (c1, c2) = 0; the intersection is A c1.
  std::array<Matrix, 2> parts{a.basis(), b.basis().negated()};
  const SubspaceBasis coeffs =
      kernel_basis(Matrix::hstack(a.field(), a.ambient_dim(), parts));
  const Matrix c1 = coeffs.basis().block(0, 0, a.dim(), coeffs.dim());
  return SubspaceBasis::span(a.basis() * c1);
}

bool solve_membership(const SubspaceBasis& w, const Vector& v) { return w.contains(v); }

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw ShapeError("solve: right-hand side length mismatch");
  const Field f = a.field();
  std::array<Matrix, 2> parts{a, Matrix::column_vector(f, b)};
  Echelon e = row_reduce(Matrix::hstack(f, a.rows(), parts));
  Vector x(a.cols(), 0);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == a.cols()) return std::nullopt;
    x[e.pivots[i]] = e.reduced(i, a.cols());
  }
  return x;
}

}  // namespace persilat
