#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "persilat/diagram.hpp"

namespace persilat::test {

struct E {
  std::string from, to;
  std::vector<std::vector<std::int64_t>> rows;
};

inline DiagramSpec spec(std::uint64_t p, std::vector<NodeDecl> nodes, std::vector<E> edges,
                        Shape shape = {}) {
  DiagramSpec s;
  s.field = p;
  s.nodes = std::move(nodes);
  s.shape = shape;
  for (auto& e : edges) {
    std::size_t from_dim = 0, to_dim = 0;
    for (const auto& n : s.nodes) {
      if (n.id == e.from) from_dim = n.dim;
      if (n.id == e.to) to_dim = n.dim;
    }
    s.edges.push_back({e.from, e.to, Matrix::from_rows(Field(p), to_dim, from_dim, e.rows)});
  }
  return s;
}

inline Diagram build(std::uint64_t p, std::vector<NodeDecl> nodes, std::vector<E> edges,
                     Shape shape = {}) {
  return Diagram::build(spec(p, std::move(nodes), std::move(edges), shape));
}

// A -> C <- B with 1x1 maps a and b.
inline Diagram vshape(std::int64_t a = 1, std::int64_t b = 1, std::uint64_t p = 2) {
  return build(p, {{"A", 1, {}}, {"B", 1, {}}, {"C", 1, {}}},
               {{"A", "C", {{a}}}, {"B", "C", {{b}}}});
}

// X0 -> X1 -> ... -> X{n-1}, all identities on k.
inline Diagram identity_chain(std::size_t n, std::uint64_t p = 2) {
  std::vector<NodeDecl> nodes;
  std::vector<E> edges;
  for (std::size_t k = 0; k < n; ++k) {
    nodes.push_back({"X" + std::to_string(k), 1, {}});
    if (k) edges.push_back({nodes[k - 1].id, nodes[k].id, {{1}}});
  }
  return build(p, nodes, edges, {ShapeKind::filtration, 0, 0});
}

// A -> B, A -> C, B -> D, C -> D, identities on k.
inline Diagram diamond(std::uint64_t p = 2) {
  return build(p, {{"A", 1, {}}, {"B", 1, {}}, {"C", 1, {}}, {"D", 1, {}}},
               {{"A", "B", {{1}}}, {"A", "C", {{1}}}, {"B", "D", {{1}}}, {"C", "D", {{1}}}});
}

}  // namespace persilat::test
