#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "persilat/matrix.hpp"

namespace persilat {

// Reduced row echelon form together with its pivot columns.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

Echelon row_reduce(Matrix a);

// A subspace of GF(p)^ambient_dim held in canonical form: the columns of
// basis() are the reduced column echelon basis, pivots normalized to 1 and
// cleared in every other basis vector. Equal subspaces compare bit-equal.
class SubspaceBasis {
 public:
  // Canonical span of the columns of `generators`.
  static SubspaceBasis span(const Matrix& generators);
  static SubspaceBasis zero(Field field, std::size_t ambient_dim);
  static SubspaceBasis full(Field field, std::size_t ambient_dim);

  const Field& field() const noexcept { return basis_.field(); }
  std::size_t ambient_dim() const noexcept { return basis_.rows(); }
  std::size_t dim() const noexcept { return basis_.cols(); }
  // ambient_dim x dim, independent columns.
  const Matrix& basis() const noexcept { return basis_; }
  // Coordinate of the leading entry of each basis vector, increasing.
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(const Vector& v) const;
  bool contains(const SubspaceBasis& other) const;

  friend bool operator==(const SubspaceBasis&, const SubspaceBasis&) = default;

 private:
  SubspaceBasis(Matrix basis, std::vector<std::size_t> pivots)
      : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

std::size_t rank(const Matrix& a);

// {x : a x = 0}, of dimension a.cols() - rank(a).
SubspaceBasis kernel_basis(const Matrix& a);

// Column span of a, of dimension rank(a).
SubspaceBasis image_basis(const Matrix& a);

// Surjection GF(p)^ambient_dim -> GF(p)^(ambient_dim - dim w) whose kernel is
// exactly w. Row j maps x to its coordinate along the j-th non-pivot unit
// vector once the w-component has been removed.
Matrix quotient_map(std::size_t ambient_dim, const SubspaceBasis& w);

SubspaceBasis subspace_sum(const SubspaceBasis& a, const SubspaceBasis& b);

SubspaceBasis intersection(const SubspaceBasis& a, const SubspaceBasis& b);

// True iff v lies in span(w).
bool solve_membership(const SubspaceBasis& w, const Vector& v);

// Some x with a x = b, or nothing when b is outside the image.
std::optional<Vector> solve(const Matrix& a, const Vector& b);

}  // namespace persilat
