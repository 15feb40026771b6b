#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "persilat/diagram.hpp"
#include "persilat/linalg.hpp"

namespace persilat {

// Block layout of the direct sum of the spaces at `nodes`. A node may occur
// more than once; each occurrence gets its own block.
struct DirectSumLayout {
  std::vector<NodeIndex> nodes;
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> dims;
  std::size_t total = 0;

  static DirectSumLayout of(const Diagram& d, std::vector<NodeIndex> nodes);
  std::size_t size() const noexcept { return nodes.size(); }
  // total x dims[k] block inclusion and dims[k] x total block projection.
  Matrix inclusion(const Field& f, std::size_t k) const;
  Matrix projection(const Field& f, std::size_t k) const;
};

// A family of maps V_k -> T, one per block, that a meet must equalize.
struct Cocone {
  std::string label;
  std::vector<Matrix> maps;
};

// A family of maps S -> V_k, one per block, whose differences a join kills.
struct Cone {
  std::string label;
  std::vector<Matrix> maps;
};

// Equalizer of every cocone in `constraints`, as a subspace of the sum.
struct RealizedMeet {
  DirectSumLayout layout;
  std::vector<Cocone> constraints;
  SubspaceBasis space;
  std::vector<Matrix> legs;  // pi_k : space -> V_k, dims[k] x dim

  std::size_t dim() const noexcept { return space.dim(); }
};

// Coequalizer of every cone in `sources`: the sum modulo `relations`.
struct RealizedJoin {
  DirectSumLayout layout;
  std::vector<Cone> sources;
  SubspaceBasis relations;
  Matrix quotient;           // total -> dim, kernel == relations
  std::vector<Matrix> legs;  // iota_k : V_k -> quotient target, dim x dims[k]

  std::size_t dim() const noexcept { return quotient.rows(); }
};

// Kernel of the constraints F_0 x_0 == F_k x_k for every cocone.
RealizedMeet equalize(const Diagram& d, std::vector<NodeIndex> nodes, std::vector<Cocone> cocones);
// Quotient by (G_0 y in block 0) - (G_k y in block k) for every cone and
// every basis vector y of its apex.
RealizedJoin coequalize(const Diagram& d, std::vector<NodeIndex> nodes, std::vector<Cone> cones);

// Cocone of composites into a common target t; cone of composites out of a
// common source s.
Cocone target_cocone(const Diagram& d, const std::vector<NodeIndex>& nodes, NodeIndex t);
Cone source_cone(const Diagram& d, const std::vector<NodeIndex>& nodes, NodeIndex s);
Cocone leg_cocone(const RealizedJoin& j);
Cone leg_cone(const RealizedMeet& m);

// Meet over all common targets of the set. With no common target this is
// the whole direct sum.
RealizedMeet realize_meet(const Diagram& d, const std::vector<NodeIndex>& nodes);
// Meet constrained only through the listed targets.
RealizedMeet realize_meet_via(const Diagram& d, const std::vector<NodeIndex>& nodes,
                              const std::vector<NodeIndex>& targets);
// Join over all common sources, plus the twisted image of realize_meet when
// include_meet_relations is set.
RealizedJoin realize_join(const Diagram& d, const std::vector<NodeIndex>& nodes,
                          bool include_meet_relations);
RealizedJoin realize_join_via(const Diagram& d, const std::vector<NodeIndex>& nodes,
                              const std::vector<NodeIndex>& sources);

enum class StabilizationOrder { meet_first, join_first };

struct Stabilized {
  RealizedMeet meet;
  RealizedJoin join;
  StabilizationOrder order = StabilizationOrder::meet_first;
  // Round at which the pair stopped changing (1 = the first computation
  // already was a fixpoint).
  int iterations = 0;
  std::vector<std::pair<std::size_t, std::size_t>> dims_history;
};

// Alternately recomputes the meet (adding the join legs as a constraint) and
// the join (adding the meet legs as relations) until neither changes. Starts
// from the join when the set has common sources but no common target.
// Throws StabilizationDiagnostic if round 3 still differs from round 2.
Stabilized stabilize(const Diagram& d, const std::vector<NodeIndex>& nodes);

std::string_view to_string(StabilizationOrder order);

struct StepCount {
  std::size_t meets = 0;
  std::size_t joins = 0;
  std::size_t path_length = 0;
  std::size_t bound = 0;  // sources + targets + longest chain

  std::size_t total() const noexcept { return meets + joins + path_length; }
};

struct RankReport {
  std::string lower;  // node id or a description of the node set
  std::string upper;
  std::size_t dim_lower = 0;
  std::size_t dim_upper = 0;
  std::size_t dim_meet = 0;
  std::size_t dim_join = 0;
  std::size_t rank = 0;
  bool leg_agreement = false;
  bool ses_ok = false;
  int iterations = 0;
  StabilizationOrder order = StabilizationOrder::meet_first;
  std::optional<StepCount> steps;
};

// Rank of iota_a pi_a : (a ^ b) -> (a v b) after stabilization.
RankReport rank_invariant(const Diagram& d, NodeIndex a, NodeIndex b);
RankReport rank_invariant(const Diagram& d, const std::string& a, const std::string& b);

// Exactness of 0 -> M -> A (+) B -> J -> 0 with the twisted inclusion
// m -> (pi_a m, -pi_b m), plus the dimension count.
bool ses_check(const Stabilized& s);
bool ses_check(const Diagram& d, NodeIndex a, NodeIndex b);

// Rank of the map from the meet of all sources to the join of all targets.
RankReport largest_injective(const Diagram& d);

// Rank of the composite from the componentwise-min cell to the
// componentwise-max cell of a grid-tagged diagram.
std::size_t grid_coarse_rank(const Diagram& d, std::pair<int, int> p1, std::pair<int, int> p2);
NodeIndex grid_node(const Diagram& d, std::pair<int, int> cell);

struct SectionsReport {
  std::size_t coarse = 0;
  std::size_t fine = 0;
};
SectionsReport sections_report(const Diagram& d, std::pair<int, int> p1, std::pair<int, int> p2);

// The meet through the minimal common targets equals the meet through all of
// them, and the join through the maximal common sources equals the join
// through all of them.
bool chain_restriction_check(const Diagram& d, const std::vector<NodeIndex>& nodes);

// {(x, y) : f x == g y} computed as ker [f | -g] and, independently, as
// ker f (+) ker g plus lifts of im f ∩ im g. True iff both agree.
bool pullback_equivalence_check(const Matrix& f, const Matrix& g);
SubspaceBasis pullback_kernel(const Matrix& f, const Matrix& g);
SubspaceBasis pullback_by_lifts(const Matrix& f, const Matrix& g);

}  // namespace persilat
