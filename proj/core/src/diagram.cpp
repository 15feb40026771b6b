#include "persilat/diagram.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "persilat/error.hpp"

namespace persilat {

const Matrix& CompositeTable::at(NodeIndex u, NodeIndex v) const {
  const auto& m = maps_.at(u * n_ + v);
  if (!m) throw std::out_of_range("no composite between the requested nodes");
  return *m;
}

namespace {

std::vector<NodeIndex> topo_sort(std::size_t n, const std::vector<std::vector<NodeIndex>>& out,
                                 const std::vector<std::vector<NodeIndex>>& in,
                                 const std::vector<NodeDecl>& nodes) {
  std::vector<std::size_t> indegree(n);
  for (std::size_t v = 0; v < n; ++v) indegree[v] = in[v].size();
  std::priority_queue<NodeIndex, std::vector<NodeIndex>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push(v);
  std::vector<NodeIndex> order;
  while (!ready.empty()) {
    NodeIndex u = ready.top();
    ready.pop();
    order.push_back(u);
    for (NodeIndex v : out[u])
      if (--indegree[v] == 0) ready.push(v);
  }
  if (order.size() == n) return order;

  // Walk backwards along unprocessed in-edges until a node repeats.
  NodeIndex start = 0;
  while (indegree[start] == 0) ++start;
  std::vector<NodeIndex> walk;
  std::vector<int> seen_at(n, -1);
  NodeIndex cur = start;
  while (seen_at[cur] < 0) {
    seen_at[cur] = static_cast<int>(walk.size());
    walk.push_back(cur);
    for (NodeIndex w : in[cur]) {
      if (indegree[w] > 0) {
        cur = w;
        break;
      }
    }
  }
  std::vector<std::string> cycle;
  for (std::size_t i = static_cast<std::size_t>(seen_at[cur]); i < walk.size(); ++i)
    cycle.push_back(nodes[walk[i]].id);
  std::reverse(cycle.begin(), cycle.end());
  cycle.push_back(cycle.front());
  throw CycleError(std::move(cycle));
}

void check_shape(const Diagram& d) {
  const std::size_t n = d.size();
  switch (d.shape().kind) {
    case ShapeKind::generic:
      return;
    case ShapeKind::filtration:
      for (NodeIndex u = 0; u < n; ++u)
        for (NodeIndex v = u + 1; v < n; ++v)
          if (!d.reachable(u, v) && !d.reachable(v, u))
            throw Error(ErrorCode::not_a_filtration,
                        "nodes " + d.id(u) + " and " + d.id(v) + " are incomparable");
      return;
    case ShapeKind::grid: {
      const auto w = d.shape().width, h = d.shape().height;
      if (w * h != n)
        throw Error(ErrorCode::not_a_grid, "grid " + std::to_string(w) + "x" + std::to_string(h) +
                                               " needs " + std::to_string(w * h) + " nodes, got " +
                                               std::to_string(n));
      std::set<std::pair<int, int>> cells;
      for (NodeIndex u = 0; u < n; ++u) {
        const auto& p = d.pos(u);
        if (p.size() != 2 || p[0] < 0 || p[1] < 0 || static_cast<std::size_t>(p[0]) >= w ||
            static_cast<std::size_t>(p[1]) >= h || !cells.insert({p[0], p[1]}).second)
          throw Error(ErrorCode::not_a_grid, "node " + d.id(u) + " has no valid unique grid cell");
      }
      for (NodeIndex u = 0; u < n; ++u)
        for (NodeIndex v = 0; v < n; ++v) {
          const bool below = d.pos(u)[0] <= d.pos(v)[0] && d.pos(u)[1] <= d.pos(v)[1];
          if (below != d.reachable(u, v))
            throw Error(ErrorCode::not_a_grid, "reachability between " + d.id(u) + " and " +
                                                   d.id(v) + " disagrees with the grid order");
        }
      return;
    }
    case ShapeKind::zigzag: {
      std::vector<int> owner(n, -1);
      for (NodeIndex u = 0; u < n; ++u) {
        const auto& p = d.pos(u);
        if (p.size() != 1 || p[0] < 0 || static_cast<std::size_t>(p[0]) >= n || owner[p[0]] >= 0)
          throw Error(ErrorCode::not_a_zigzag,
                      "node " + d.id(u) + " needs a unique position in 0.." + std::to_string(n - 1));
        owner[p[0]] = static_cast<int>(u);
      }
      for (const auto& e : d.edges()) {
        const int a = d.pos(d.index(e.from))[0], b = d.pos(d.index(e.to))[0];
        if (std::abs(a - b) != 1)
          throw Error(ErrorCode::not_a_zigzag,
                      "edge " + e.from + " -> " + e.to + " does not join adjacent positions");
      }
      if (n > 0 && d.edges().size() != n - 1)
        throw Error(ErrorCode::not_a_zigzag, "a zig-zag of " + std::to_string(n) + " spaces needs " +
                                                 std::to_string(n - 1) + " arrows");
      return;
    }
  }
}

}  // namespace

Diagram Diagram::build(DiagramSpec spec) {
  Diagram d{Field(spec.field)};
  d.shape_ = spec.shape;

  std::sort(spec.nodes.begin(), spec.nodes.end(),
            [](const NodeDecl& a, const NodeDecl& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    if (spec.nodes[i].id.empty()) throw Error(ErrorCode::parse, "node id must be nonempty");
    if (!d.by_id_.emplace(spec.nodes[i].id, i).second)
      throw Error(ErrorCode::duplicate_node, "duplicate node id '" + spec.nodes[i].id + "'");
  }
  d.nodes_ = std::move(spec.nodes);
  const std::size_t n = d.nodes_.size();

  std::set<std::pair<NodeIndex, NodeIndex>> seen;
  for (const auto& e : spec.edges) {
    const NodeIndex u = d.index(e.from), v = d.index(e.to);
    if (e.map.field() != d.field_)
      throw FieldError("edge " + e.from + " -> " + e.to + " is over GF(" +
                       std::to_string(e.map.field().modulus()) + "), diagram is over GF(" +
                       std::to_string(d.field_.modulus()) + ")");
    if (e.map.rows() != d.dim(v) || e.map.cols() != d.dim(u))
      throw ShapeError("edge " + e.from + " -> " + e.to + " has a " + std::to_string(e.map.rows()) +
                       "x" + std::to_string(e.map.cols()) + " matrix, expected " +
                       std::to_string(d.dim(v)) + "x" + std::to_string(d.dim(u)));
    if (u == v) throw CycleError({e.from, e.to});
    if (!seen.insert({u, v}).second) throw DuplicateEdgeError(e.from, e.to);
  }
  d.edges_ = std::move(spec.edges);
  std::sort(d.edges_.begin(), d.edges_.end(), [&](const EdgeDecl& a, const EdgeDecl& b) {
    return std::pair(d.index(a.from), d.index(a.to)) < std::pair(d.index(b.from), d.index(b.to));
  });

  d.out_.assign(n, {});
  d.in_.assign(n, {});
  for (const auto& e : d.edges_) {
    d.out_[d.index(e.from)].push_back(d.index(e.to));
    d.in_[d.index(e.to)].push_back(d.index(e.from));
  }
  d.topo_ = topo_sort(n, d.out_, d.in_, d.nodes_);

  std::vector<std::size_t> topo_pos(n);
  for (std::size_t i = 0; i < n; ++i) topo_pos[d.topo_[i]] = i;

  // One composite per reachable pair, propagated in topological order.
  d.composites_ = CompositeTable(n);
  for (NodeIndex u = 0; u < n; ++u) {
    d.composites_.set(u, u, Matrix::identity(d.field_, d.dim(u)), {u});
    for (std::size_t k = topo_pos[u] + 1; k < n; ++k) {
      const NodeIndex v = d.topo_[k];
      for (NodeIndex w : d.in_[v]) {
        if (!d.composites_.has(u, w)) continue;
        Matrix candidate = *d.edge(w, v) * d.composites_.at(u, w);
        std::vector<NodeIndex> path = d.composites_.path(u, w);
        path.push_back(v);
        if (!d.composites_.has(u, v)) {
          d.composites_.set(u, v, std::move(candidate), std::move(path));
        } else if (candidate != d.composites_.at(u, v)) {
          throw CommutativityError(d.id(u), d.id(v), d.ids(d.composites_.path(u, v)), d.ids(path));
        }
      }
    }
  }

  // Weakly connected components.
  std::vector<NodeIndex> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<NodeIndex(NodeIndex)> root = [&](NodeIndex x) {
    return parent[x] == x ? x : parent[x] = root(parent[x]);
  };
  for (const auto& e : d.edges_) parent[root(d.index(e.from))] = root(d.index(e.to));
  std::set<NodeIndex> roots;
  for (NodeIndex v = 0; v < n; ++v) roots.insert(root(v));
  if (roots.size() > 1) {
    d.warnings_.push_back("diagram has " + std::to_string(roots.size()) +
                          " connected components; pairs across components use empty-family "
                          "meets and joins");
  }

  check_shape(d);
  return d;
}

CompositeTable validate(const DiagramSpec& spec) { return Diagram::build(spec).composites(); }

NodeIndex Diagram::index(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw UnknownNodeError(id);
  return it->second;
}

std::optional<NodeIndex> Diagram::find(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

const Matrix* Diagram::edge(NodeIndex from, NodeIndex to) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair(from, to),
                             [&](const EdgeDecl& e, const std::pair<NodeIndex, NodeIndex>& key) {
                               return std::pair(index(e.from), index(e.to)) < key;
                             });
  if (it == edges_.end() || index(it->from) != from || index(it->to) != to) return nullptr;
  return &it->map;
}

std::vector<NodeIndex> Diagram::up(NodeIndex u) const {
  std::vector<NodeIndex> out;
  for (NodeIndex v = 0; v < size(); ++v)
    if (reachable(u, v)) out.push_back(v);
  return out;
}

std::vector<NodeIndex> Diagram::down(NodeIndex u) const {
  std::vector<NodeIndex> out;
  for (NodeIndex v = 0; v < size(); ++v)
    if (reachable(v, u)) out.push_back(v);
  return out;
}

std::vector<NodeIndex> Diagram::common_targets(std::span<const NodeIndex> s) const {
  std::vector<NodeIndex> out;
  for (NodeIndex t = 0; t < size(); ++t)
    if (std::all_of(s.begin(), s.end(), [&](NodeIndex u) { return reachable(u, t); }))
      out.push_back(t);
  return out;
}

std::vector<NodeIndex> Diagram::common_sources(std::span<const NodeIndex> s) const {
  std::vector<NodeIndex> out;
  for (NodeIndex t = 0; t < size(); ++t)
    if (std::all_of(s.begin(), s.end(), [&](NodeIndex u) { return reachable(t, u); }))
      out.push_back(t);
  return out;
}

std::vector<std::string> Diagram::common_targets(const std::vector<std::string>& s) const {
  auto idx = indices(s);
  return ids(common_targets(std::span<const NodeIndex>(idx)));
}

std::vector<std::string> Diagram::common_sources(const std::vector<std::string>& s) const {
  auto idx = indices(s);
  return ids(common_sources(std::span<const NodeIndex>(idx)));
}

std::vector<NodeIndex> Diagram::sources() const {
  std::vector<NodeIndex> out;
  for (NodeIndex v = 0; v < size(); ++v)
    if (in_[v].empty()) out.push_back(v);
  return out;
}

std::vector<NodeIndex> Diagram::targets() const {
  std::vector<NodeIndex> out;
  for (NodeIndex v = 0; v < size(); ++v)
    if (out_[v].empty()) out.push_back(v);
  return out;
}

std::size_t Diagram::longest_chain() const {
  std::vector<std::size_t> len(size(), 1);
  std::size_t best = size() ? 1 : 0;
  for (NodeIndex u : topo_)
    for (NodeIndex v : out_[u]) {
      len[v] = std::max(len[v], len[u] + 1);
      best = std::max(best, len[v]);
    }
  return best;
}

Diagram Diagram::adjoin(NodeDecl node, std::vector<EdgeDecl> edges) const {
  for (const auto& e : edges) {
    if (e.from != node.id && e.to != node.id)
      throw ShapeError("adjoined edge " + e.from + " -> " + e.to + " does not touch " + node.id);
  }
  DiagramSpec s = spec();
  s.shape = Shape{};
  s.nodes.push_back(std::move(node));
  for (auto& e : edges) s.edges.push_back(std::move(e));
  return build(std::move(s));
}

DiagramSpec Diagram::spec() const {
  DiagramSpec s;
  s.field = field_.modulus();
  s.nodes = nodes_;
  s.edges = edges_;
  s.shape = shape_;
  return s;
}

std::vector<std::string> Diagram::ids(std::span<const NodeIndex> s) const {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (auto i : s) out.push_back(id(i));
  return out;
}

std::vector<NodeIndex> Diagram::indices(const std::vector<std::string>& names) const {
  std::vector<NodeIndex> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(index(n));
  return out;
}

}  // namespace persilat
