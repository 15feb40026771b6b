#include "persilat/realization.hpp"

#include <algorithm>

#include "persilat/error.hpp"

namespace persilat {

DirectSumLayout DirectSumLayout::of(const Diagram& d, std::vector<NodeIndex> nodes) {
  DirectSumLayout l;
  l.nodes = std::move(nodes);
  for (auto v : l.nodes) {
    l.offsets.push_back(l.total);
    l.dims.push_back(d.dim(v));
    l.total += d.dim(v);
  }
  return l;
}

Matrix DirectSumLayout::inclusion(const Field& f, std::size_t k) const {
  Matrix m(f, total, dims[k]);
  for (std::size_t i = 0; i < dims[k]; ++i) m.at(offsets[k] + i, i) = 1;
  return m;
}

Matrix DirectSumLayout::projection(const Field& f, std::size_t k) const {
  return inclusion(f, k).transpose();
}

RealizedMeet equalize(const Diagram& d, std::vector<NodeIndex> nodes, std::vector<Cocone> cocones) {
  const Field& f = d.field();
  DirectSumLayout layout = DirectSumLayout::of(d, std::move(nodes));
  std::vector<Matrix> blocks;
  for (const auto& c : cocones) {
    if (c.maps.size() != layout.size()) throw ShapeError("cocone '" + c.label + "' has wrong arity");
    for (std::size_t k = 1; k < layout.size(); ++k) {
      const Matrix first = c.maps[0] * layout.projection(f, 0);
      const Matrix other = c.maps[k] * layout.projection(f, k);
      blocks.push_back(first - other);
    }
  }
  const Matrix constraints = Matrix::vstack(f, layout.total, blocks);
  SubspaceBasis space = kernel_basis(constraints);
  std::vector<Matrix> legs;
  for (std::size_t k = 0; k < layout.size(); ++k)
    legs.push_back(space.basis().block(layout.offsets[k], 0, layout.dims[k], space.dim()));
  return {std::move(layout), std::move(cocones), std::move(space), std::move(legs)};
}

RealizedJoin coequalize(const Diagram& d, std::vector<NodeIndex> nodes, std::vector<Cone> cones) {
  const Field& f = d.field();
  DirectSumLayout layout = DirectSumLayout::of(d, std::move(nodes));
  std::vector<Matrix> generators;
  for (const auto& c : cones) {
    if (c.maps.size() != layout.size()) throw ShapeError("cone '" + c.label + "' has wrong arity");
    for (std::size_t k = 1; k < layout.size(); ++k) {
      generators.push_back(layout.inclusion(f, 0) * c.maps[0] -
                           layout.inclusion(f, k) * c.maps[k]);
    }
  }
  SubspaceBasis relations = SubspaceBasis::span(Matrix::hstack(f, layout.total, generators));
  Matrix q = quotient_map(layout.total, relations);
  std::vector<Matrix> legs;
  for (std::size_t k = 0; k < layout.size(); ++k)
    legs.push_back(q.block(0, layout.offsets[k], q.rows(), layout.dims[k]));
  return {std::move(layout), std::move(cones), std::move(relations), std::move(q), std::move(legs)};
}

Cocone target_cocone(const Diagram& d, const std::vector<NodeIndex>& nodes, NodeIndex t) {
  Cocone c{"target " + d.id(t), {}};
  for (auto v : nodes) c.maps.push_back(d.composite(v, t));
  return c;
}

Cone source_cone(const Diagram& d, const std::vector<NodeIndex>& nodes, NodeIndex s) {
  Cone c{"source " + d.id(s), {}};
  for (auto v : nodes) c.maps.push_back(d.composite(s, v));
  return c;
}

Cocone leg_cocone(const RealizedJoin& j) { return {"join legs", j.legs}; }
Cone leg_cone(const RealizedMeet& m) { return {"meet legs", m.legs}; }

namespace {

std::vector<Cocone> cocones_via(const Diagram& d, const std::vector<NodeIndex>& nodes,
                                const std::vector<NodeIndex>& targets) {
  std::vector<Cocone> out;
  for (auto t : targets) out.push_back(target_cocone(d, nodes, t));
  return out;
}

std::vector<Cone> cones_via(const Diagram& d, const std::vector<NodeIndex>& nodes,
                            const std::vector<NodeIndex>& sources) {
  std::vector<Cone> out;
  for (auto s : sources) out.push_back(source_cone(d, nodes, s));
  return out;
}

void require_nonempty(const std::vector<NodeIndex>& nodes) {
  if (nodes.empty()) throw ShapeError("node set must be nonempty");
}

}  // namespace

RealizedMeet realize_meet_via(const Diagram& d, const std::vector<NodeIndex>& nodes,
                              const std::vector<NodeIndex>& targets) {
  require_nonempty(nodes);
  return equalize(d, nodes, cocones_via(d, nodes, targets));
}

RealizedMeet realize_meet(const Diagram& d, const std::vector<NodeIndex>& nodes) {
  require_nonempty(nodes);
  return realize_meet_via(d, nodes, d.common_targets(std::span<const NodeIndex>(nodes)));
}

RealizedJoin realize_join_via(const Diagram& d, const std::vector<NodeIndex>& nodes,
                              const std::vector<NodeIndex>& sources) {
  require_nonempty(nodes);
  return coequalize(d, nodes, cones_via(d, nodes, sources));
}

RealizedJoin realize_join(const Diagram& d, const std::vector<NodeIndex>& nodes,
                          bool include_meet_relations) {
  require_nonempty(nodes);
  auto cones = cones_via(d, nodes, d.common_sources(std::span<const NodeIndex>(nodes)));
  if (include_meet_relations) cones.push_back(leg_cone(realize_meet(d, nodes)));
  return coequalize(d, nodes, std::move(cones));
}

std::string_view to_string(StabilizationOrder order) {
  return order == StabilizationOrder::meet_first ? "meet-first" : "join-first";
}

Stabilized stabilize(const Diagram& d, const std::vector<NodeIndex>& nodes) {
  require_nonempty(nodes);
  const std::span<const NodeIndex> s(nodes);
  const auto targets = d.common_targets(s);
  const auto sources = d.common_sources(s);
  const auto base_cocones = cocones_via(d, nodes, targets);
  const auto base_cones = cones_via(d, nodes, sources);
  const StabilizationOrder order = targets.empty() && !sources.empty()
                                       ? StabilizationOrder::join_first
                                       : StabilizationOrder::meet_first;

  auto with = [](auto base, auto extra) {
    base.push_back(std::move(extra));
    return base;
  };

  std::optional<RealizedMeet> meet;
  std::optional<RealizedJoin> join;
  std::vector<std::pair<std::size_t, std::size_t>> history;
  constexpr int max_rounds = 3;
  for (int round = 1; round <= max_rounds; ++round) {
    auto [m, j] = [&]() -> std::pair<RealizedMeet, RealizedJoin> {
      if (order == StabilizationOrder::meet_first) {
        RealizedMeet m = join ? equalize(d, nodes, with(base_cocones, leg_cocone(*join)))
                              : equalize(d, nodes, base_cocones);
        RealizedJoin j = coequalize(d, nodes, with(base_cones, leg_cone(m)));
        return {std::move(m), std::move(j)};
      }
      RealizedJoin j = meet ? coequalize(d, nodes, with(base_cones, leg_cone(*meet)))
                            : coequalize(d, nodes, base_cones);
      RealizedMeet m = equalize(d, nodes, with(base_cocones, leg_cocone(j)));
      return {std::move(m), std::move(j)};
    }();
    history.emplace_back(m.dim(), j.dim());
    const bool fixed =
        meet && join && meet->space == m.space && join->relations == j.relations;
    if (fixed) return {std::move(*meet), std::move(*join), order, round - 1, std::move(history)};
    meet = std::move(m);
    join = std::move(j);
  }
  throw StabilizationDiagnostic(max_rounds, std::move(history));
}

bool ses_check(const Stabilized& s) {
  const auto& m = s.meet;
  const auto& j = s.join;
  if (m.layout.size() != 2) return false;
  const Field& f = m.space.field();
  if (m.dim() + j.dim() != m.layout.total) return false;
  const Matrix twisted = m.layout.inclusion(f, 0) * m.legs[0] - m.layout.inclusion(f, 1) * m.legs[1];
  const SubspaceBasis image = image_basis(twisted);
  return image.dim() == m.dim() && image == kernel_basis(j.quotient);
}

bool ses_check(const Diagram& d, NodeIndex a, NodeIndex b) { return ses_check(stabilize(d, {a, b})); }

RankReport rank_invariant(const Diagram& d, NodeIndex a, NodeIndex b) {
  const Stabilized s = stabilize(d, {a, b});
  const Matrix via_a = s.join.legs[0] * s.meet.legs[0];
  const Matrix via_b = s.join.legs[1] * s.meet.legs[1];
  RankReport r;
  r.lower = d.id(a);
  r.upper = d.id(b);
  r.dim_lower = d.dim(a);
  r.dim_upper = d.dim(b);
  r.dim_meet = s.meet.dim();
  r.dim_join = s.join.dim();
  r.rank = rank(via_a);
  r.leg_agreement = via_a == via_b;
  r.ses_ok = ses_check(s);
  r.iterations = s.iterations;
  r.order = s.order;
  return r;
}

RankReport rank_invariant(const Diagram& d, const std::string& a, const std::string& b) {
  return rank_invariant(d, d.index(a), d.index(b));
}

namespace {

std::string fresh_id(const Diagram& d, const std::string& base) {
  std::string id = base;
  for (int k = 2; d.find(id); ++k) id = base + "#" + std::to_string(k);
  return id;
}

// Greedy order: prefer the next node that shares a bound with `current`.
template <class Shares>
std::vector<std::string> connected_order(std::vector<std::string> pending, Shares shares) {
  std::vector<std::string> order;
  order.push_back(pending.front());
  pending.erase(pending.begin());
  while (!pending.empty()) {
    auto it = std::find_if(pending.begin(), pending.end(),
                           [&](const std::string& c) {
                             return std::any_of(order.begin(), order.end(),
                                                [&](const std::string& o) { return shares(o, c); });
                           });
    if (it == pending.end()) it = pending.begin();
    order.push_back(*it);
    pending.erase(it);
  }
  return order;
}

std::string joined(const std::vector<std::string>& ids, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? sep : "") + ids[i];
  return out;
}

}  // namespace

RankReport largest_injective(const Diagram& d) {
  if (d.size() == 0) throw ShapeError("largest injective of an empty diagram");
  const auto src_ids = d.ids(d.sources());
  const auto tgt_ids = d.ids(d.targets());

  Diagram work = d;
  RankReport r;
  StepCount steps;
  bool ses = true;
  int iterations = 0;

  auto ordered_sources = connected_order(src_ids, [&](const std::string& a, const std::string& b) {
    return !d.common_targets(std::vector<std::string>{a, b}).empty();
  });
  std::string meet_id = ordered_sources.front();
  for (std::size_t k = 1; k < ordered_sources.size(); ++k) {
    const Stabilized s = stabilize(work, {work.index(meet_id), work.index(ordered_sources[k])});
    ses = ses && ses_check(s);
    iterations = std::max(iterations, s.iterations);
    ++steps.meets;
    const std::string id = fresh_id(work, "meet" + std::to_string(k));
    work = work.adjoin({id, s.meet.dim(), {}}, {{id, meet_id, s.meet.legs[0]},
                                               {id, ordered_sources[k], s.meet.legs[1]}});
    meet_id = id;
  }

  auto ordered_targets = connected_order(tgt_ids, [&](const std::string& a, const std::string& b) {
    return !d.common_sources(std::vector<std::string>{a, b}).empty();
  });
  std::string join_id = ordered_targets.front();
  for (std::size_t k = 1; k < ordered_targets.size(); ++k) {
    const Stabilized s = stabilize(work, {work.index(join_id), work.index(ordered_targets[k])});
    ses = ses && ses_check(s);
    iterations = std::max(iterations, s.iterations);
    ++steps.joins;
    const std::string id = fresh_id(work, "join" + std::to_string(k));
    work = work.adjoin({id, s.join.dim(), {}}, {{join_id, id, s.join.legs[0]},
                                               {ordered_targets[k], id, s.join.legs[1]}});
    join_id = id;
  }

  // Route the canonical map through one source-to-target path; adding it as
  // an edge makes validation check that every other route agrees.
  std::string via_s, via_t;
  for (const auto& s : src_ids) {
    for (const auto& t : tgt_ids)
      if (d.reachable(s, t)) {
        via_s = s;
        via_t = t;
        break;
      }
    if (!via_s.empty()) break;
  }
  const NodeIndex m = work.index(meet_id), j = work.index(join_id);
  const NodeIndex s = work.index(via_s), t = work.index(via_t);
  Matrix map = work.composite(t, j) * work.composite(s, t) * work.composite(m, s);
  steps.path_length = d.composites().path(d.index(via_s), d.index(via_t)).size() - 1;
  steps.bound = src_ids.size() + tgt_ids.size() + d.longest_chain();
  if (m != j && work.edge(m, j) == nullptr) {
    DiagramSpec spec = work.spec();
    spec.edges.push_back({meet_id, join_id, map});
    Diagram::build(std::move(spec));
  }

  r.lower = joined(src_ids, " ∧ ");
  r.upper = joined(tgt_ids, " ∨ ");
  r.dim_lower = r.dim_meet = work.dim(m);
  r.dim_upper = r.dim_join = work.dim(j);
  r.rank = rank(map);
  r.leg_agreement = true;
  r.ses_ok = ses;
  r.iterations = iterations;
  r.steps = steps;
  return r;
}

NodeIndex grid_node(const Diagram& d, std::pair<int, int> cell) {
  if (d.shape().kind != ShapeKind::grid) throw Error(ErrorCode::not_a_grid, "diagram is not grid-tagged");
  for (NodeIndex v = 0; v < d.size(); ++v)
    if (d.pos(v) == std::vector<int>{cell.first, cell.second}) return v;
  throw Error(ErrorCode::index, "no grid node at (" + std::to_string(cell.first) + "," +
                                    std::to_string(cell.second) + ")");
}

std::size_t grid_coarse_rank(const Diagram& d, std::pair<int, int> p1, std::pair<int, int> p2) {
  const NodeIndex lo = grid_node(d, {std::min(p1.first, p2.first), std::min(p1.second, p2.second)});
  const NodeIndex hi = grid_node(d, {std::max(p1.first, p2.first), std::max(p1.second, p2.second)});
  return rank(d.composite(lo, hi));
}

SectionsReport sections_report(const Diagram& d, std::pair<int, int> p1, std::pair<int, int> p2) {
  SectionsReport r;
  r.coarse = grid_coarse_rank(d, p1, p2);
  r.fine = rank_invariant(d, grid_node(d, p1), grid_node(d, p2)).rank;
  return r;
}

bool chain_restriction_check(const Diagram& d, const std::vector<NodeIndex>& nodes) {
  require_nonempty(nodes);
  const std::span<const NodeIndex> s(nodes);
  const auto targets = d.common_targets(s);
  const auto sources = d.common_sources(s);
  std::vector<NodeIndex> minimal, maximal;
  for (auto t : targets)
    if (std::none_of(targets.begin(), targets.end(),
                     [&](NodeIndex u) { return u != t && d.reachable(u, t); }))
      minimal.push_back(t);
  for (auto x : sources)
    if (std::none_of(sources.begin(), sources.end(),
                     [&](NodeIndex u) { return u != x && d.reachable(x, u); }))
      maximal.push_back(x);
  return realize_meet_via(d, nodes, minimal).space == realize_meet_via(d, nodes, targets).space &&
         realize_join_via(d, nodes, maximal).relations ==
             realize_join_via(d, nodes, sources).relations;
}

SubspaceBasis pullback_kernel(const Matrix& f, const Matrix& g) {
  if (f.rows() != g.rows()) throw ShapeError("pullback: maps need a common codomain");
  const Matrix parts[] = {f, g.negated()};
  return kernel_basis(Matrix::hstack(f.field(), f.rows(), parts));
}

SubspaceBasis pullback_by_lifts(const Matrix& f, const Matrix& g) {
  if (f.rows() != g.rows()) throw ShapeError("pullback: maps need a common codomain");
  const Field& fld = f.field();
  const std::size_t n = f.cols(), m = g.cols();
  std::vector<Vector> gens;
  const SubspaceBasis kf = kernel_basis(f), kg = kernel_basis(g);
  for (std::size_t c = 0; c < kf.dim(); ++c) {
    Vector v = kf.basis().column(c);
    v.resize(n + m, 0);
    gens.push_back(std::move(v));
  }
  for (std::size_t c = 0; c < kg.dim(); ++c) {
    Vector v(n, 0);
    const Vector w = kg.basis().column(c);
    v.insert(v.end(), w.begin(), w.end());
    gens.push_back(std::move(v));
  }
  const SubspaceBasis common = intersection(image_basis(f), image_basis(g));
  for (std::size_t c = 0; c < common.dim(); ++c) {
    const Vector w = common.basis().column(c);
    Vector x = *solve(f, w);
    const Vector y = *solve(g, w);
    x.insert(x.end(), y.begin(), y.end());
    gens.push_back(std::move(x));
  }
  return SubspaceBasis::span(Matrix::from_columns(fld, n + m, gens));
}

bool pullback_equivalence_check(const Matrix& f, const Matrix& g) {
  return pullback_kernel(f, g) == pullback_by_lifts(f, g);
}

}  // namespace persilat
