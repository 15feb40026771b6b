#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "persilat/diagram.hpp"
#include "persilat/linalg.hpp"

namespace persilat {

// X_0 -> X_1 <- X_2 -> X_3 <- ... X_{2n}. arrow(k) joins positions k and
// k+1 and always runs from the even position into the odd one.
class ZigZag {
 public:
  ZigZag(Field field, std::vector<std::size_t> dims, std::vector<Matrix> arrows);

  const Field& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return dims_.size(); }
  std::size_t dim(std::size_t k) const { return dims_.at(k); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  const Matrix& arrow(std::size_t k) const { return arrows_.at(k); }
  const std::vector<Matrix>& arrows() const noexcept { return arrows_; }

  // Node ids X0, X1, ...; zigzag-tagged with positions.
  Diagram diagram() const;
  static std::string node(std::size_t k) { return "X" + std::to_string(k); }

 private:
  Field field_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> arrows_;
};

// A path of spaces with arrows in arbitrary directions.
struct LinearQuiver {
  Field field{2};
  std::vector<std::size_t> dims;
  std::vector<Matrix> arrows;  // arrows[k] joins k and k+1
  std::vector<bool> forward;   // true: k -> k+1, false: k+1 -> k
};

struct NormalizedZigZag {
  ZigZag zigzag;
  std::vector<std::size_t> position;  // original position -> normalized position
  std::size_t inserted = 0;           // identity copies added
};

// Inserts identity copies so every arrow runs from an even position into an
// odd one and the path ends on an even position.
NormalizedZigZag normalize(const LinearQuiver& q);
// Reads a zigzag-tagged diagram (positions in node metadata) as a quiver.
LinearQuiver linear_quiver(const Diagram& d);

// Meet of the even spaces i, i+2, ..., j, held as a subspace of their
// direct sum.
struct ZigZagMeet {
  std::size_t first = 0, last = 0;
  std::vector<std::size_t> offsets;  // block offset of each even position
  SubspaceBasis space;
  std::vector<Matrix> legs;  // pi_e for each even e in order

  std::size_t dim() const noexcept { return space.dim(); }
};

struct ZigZagJoin {
  SubspaceBasis relations;
  Matrix quotient;
  std::vector<Matrix> legs;  // iota_e for each even e in order

  std::size_t dim() const noexcept { return quotient.rows(); }
};

enum class Schedule { left_fold, right_fold, tree };

std::string_view to_string(Schedule s);

// One pairwise merge of adjacent leaf ranges [left_begin, mid) and
// [mid, right_end).
struct Merge {
  std::size_t left_begin = 0, mid = 0, right_end = 0;
  friend bool operator==(const Merge&, const Merge&) = default;
};

// Balanced binary tree over n leaves, one vector of independent merges per
// level. Depth is ceil(log2 n).
std::vector<std::vector<Merge>> reduction_schedule(std::size_t n);

struct ZigZagOptions {
  Schedule schedule = Schedule::left_fold;
  // Run the merges of one tree level concurrently.
  bool parallel = false;
  // Derive the rank from the meet legs alone, skipping the join.
  bool meets_only = false;
};

// i and j must be even with i <= j < size(); Error(index) otherwise.
ZigZagMeet zz_meet(const ZigZag& z, std::size_t i, std::size_t j, const ZigZagOptions& opt = {});
ZigZagJoin zz_join(const ZigZag& z, const ZigZagMeet& meet);
ZigZagJoin zz_join(const ZigZag& z, std::size_t i, std::size_t j, const ZigZagOptions& opt = {});
std::size_t zz_rank(const ZigZag& z, std::size_t i, std::size_t j, const ZigZagOptions& opt = {});

// zz_rank for every even pair i <= j; entry [i/2][j/2], zero below the
// diagonal.
std::vector<std::vector<std::size_t>> zz_rank_table(const ZigZag& z, const ZigZagOptions& opt = {});

}  // namespace persilat
