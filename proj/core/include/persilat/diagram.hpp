#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "persilat/field.hpp"
#include "persilat/matrix.hpp"

namespace persilat {

// Index of a node inside a validated Diagram. Indices follow the
// lexicographic order of node ids.
using NodeIndex = std::size_t;

enum class ShapeKind { generic, filtration, grid, zigzag };

struct Shape {
  ShapeKind kind = ShapeKind::generic;
  std::size_t width = 0;   // grid only
  std::size_t height = 0;  // grid only

  friend bool operator==(const Shape&, const Shape&) = default;
};

struct NodeDecl {
  std::string id;
  std::size_t dim = 0;
  // Grid cell (i, j) or zig-zag position (k); empty for other shapes.
  std::vector<int> pos;

  friend bool operator==(const NodeDecl&, const NodeDecl&) = default;
};

struct EdgeDecl {
  std::string from;
  std::string to;
  Matrix map;  // dim(to) x dim(from)

  friend bool operator==(const EdgeDecl&, const EdgeDecl&) = default;
};

// Unvalidated input: what a file or a builder hands to Diagram::build.
struct DiagramSpec {
  std::uint64_t field = 2;
  std::vector<NodeDecl> nodes;
  std::vector<EdgeDecl> edges;
  Shape shape;

  friend bool operator==(const DiagramSpec&, const DiagramSpec&) = default;
};

// The unique composite u -> v for every reachable ordered pair, with one
// witnessing path. Comp[u][u] is the identity.
class CompositeTable {
 public:
  CompositeTable() = default;
  explicit CompositeTable(std::size_t n) : n_(n), maps_(n * n), paths_(n * n) {}

  bool has(NodeIndex u, NodeIndex v) const { return maps_[u * n_ + v].has_value(); }
  const Matrix& at(NodeIndex u, NodeIndex v) const;
  const std::vector<NodeIndex>& path(NodeIndex u, NodeIndex v) const { return paths_[u * n_ + v]; }
  std::size_t size() const noexcept { return n_; }

  void set(NodeIndex u, NodeIndex v, Matrix m, std::vector<NodeIndex> path) {
    maps_[u * n_ + v] = std::move(m);
    paths_[u * n_ + v] = std::move(path);
  }

  friend bool operator==(const CompositeTable& a, const CompositeTable& b) {
    return a.n_ == b.n_ && a.maps_ == b.maps_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::optional<Matrix>> maps_;
  std::vector<std::vector<NodeIndex>> paths_;
};

// A finite commutative DAG of vector spaces over one prime field. Instances
// only exist in validated form; every invariant is checked by build().
class Diagram {
 public:
  // Throws FieldError, ShapeError, UnknownNodeError, CycleError,
  // DuplicateEdgeError, CommutativityError, or a shape-tag error.
  static Diagram build(DiagramSpec spec);

  const Field& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const Shape& shape() const noexcept { return shape_; }

  NodeIndex index(const std::string& id) const;
  std::optional<NodeIndex> find(const std::string& id) const;
  const std::string& id(NodeIndex i) const { return nodes_.at(i).id; }
  std::size_t dim(NodeIndex i) const { return nodes_.at(i).dim; }
  const std::vector<int>& pos(NodeIndex i) const { return nodes_.at(i).pos; }
  const std::vector<NodeDecl>& nodes() const noexcept { return nodes_; }
  // Sorted by (from, to) index.
  const std::vector<EdgeDecl>& edges() const noexcept { return edges_; }
  const Matrix* edge(NodeIndex from, NodeIndex to) const;

  const CompositeTable& composites() const noexcept { return composites_; }
  // Throws std::out_of_range unless v is reachable from u.
  const Matrix& composite(NodeIndex u, NodeIndex v) const { return composites_.at(u, v); }
  const std::vector<NodeIndex>& topological_order() const noexcept { return topo_; }

  // Reflexive reachability.
  bool reachable(NodeIndex u, NodeIndex v) const { return composites_.has(u, v); }
  bool reachable(const std::string& u, const std::string& v) const {
    return reachable(index(u), index(v));
  }
  std::vector<NodeIndex> up(NodeIndex u) const;
  std::vector<NodeIndex> down(NodeIndex u) const;

  // Nodes reachable from every member of s (resp. reaching every member).
  std::vector<NodeIndex> common_targets(std::span<const NodeIndex> s) const;
  std::vector<NodeIndex> common_sources(std::span<const NodeIndex> s) const;
  std::vector<std::string> common_targets(const std::vector<std::string>& s) const;
  std::vector<std::string> common_sources(const std::vector<std::string>& s) const;

  // Nodes with no incoming / no outgoing edges.
  std::vector<NodeIndex> sources() const;
  std::vector<NodeIndex> targets() const;

  // Longest directed path, counted in nodes.
  std::size_t longest_chain() const;

  // Non-fatal findings from validation (e.g. the diagram is disconnected).
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  // A new validated diagram with one extra node and the given edges, which
  // must all touch the new node.
  Diagram adjoin(NodeDecl node, std::vector<EdgeDecl> edges) const;

  DiagramSpec spec() const;
  std::vector<std::string> ids(std::span<const NodeIndex> s) const;
  std::vector<NodeIndex> indices(const std::vector<std::string>& ids) const;

 private:
  Diagram(Field field) : field_(field) {}

  Field field_;
  Shape shape_;
  std::vector<NodeDecl> nodes_;
  std::vector<EdgeDecl> edges_;
  std::vector<std::vector<NodeIndex>> out_, in_;
  std::unordered_map<std::string, NodeIndex> by_id_;
  std::vector<NodeIndex> topo_;
  CompositeTable composites_;
  std::vector<std::string> warnings_;
};

// Runs the full validation on a spec and returns the composite table.
CompositeTable validate(const DiagramSpec& spec);

}  // namespace persilat
