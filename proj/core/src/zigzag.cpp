#include "persilat/zigzag.hpp"

#include <algorithm>
#include <future>
#include <optional>

#include "persilat/error.hpp"

namespace persilat {

ZigZag::ZigZag(Field field, std::vector<std::size_t> dims, std::vector<Matrix> arrows)
    : field_(field), dims_(std::move(dims)), arrows_(std::move(arrows)) {
  if (dims_.size() % 2 == 0)
    throw Error(ErrorCode::not_a_zigzag, "a zig-zag needs an odd number of spaces, got " +
                                             std::to_string(dims_.size()));
  if (arrows_.size() + 1 != dims_.size())
    throw ShapeError("a zig-zag of " + std::to_string(dims_.size()) + " spaces needs " +
                     std::to_string(dims_.size() - 1) + " arrows");
  for (std::size_t k = 0; k < arrows_.size(); ++k) {
    const std::size_t from = k % 2 == 0 ? k : k + 1;
    const std::size_t to = k % 2 == 0 ? k + 1 : k;
    if (arrows_[k].field() != field_) throw FieldError("zig-zag arrow over a different field");
    if (arrows_[k].rows() != dims_[to] || arrows_[k].cols() != dims_[from])
      throw ShapeError("arrow " + node(from) + " -> " + node(to) + " has the wrong shape");
  }
}

Diagram ZigZag::diagram() const {
  DiagramSpec spec;
  spec.field = field_.modulus();
  spec.shape.kind = ShapeKind::zigzag;
  for (std::size_t k = 0; k < dims_.size(); ++k)
    spec.nodes.push_back({node(k), dims_[k], {static_cast<int>(k)}});
  for (std::size_t k = 0; k < arrows_.size(); ++k) {
    const std::size_t from = k % 2 == 0 ? k : k + 1;
    const std::size_t to = k % 2 == 0 ? k + 1 : k;
    spec.edges.push_back({node(from), node(to), arrows_[k]});
  }
  return Diagram::build(std::move(spec));
}

LinearQuiver linear_quiver(const Diagram& d) {
  if (d.shape().kind != ShapeKind::zigzag)
    throw Error(ErrorCode::not_a_zigzag, "diagram is not zigzag-tagged");
  const std::size_t n = d.size();
  std::vector<NodeIndex> at(n);
  for (NodeIndex v = 0; v < n; ++v) at[static_cast<std::size_t>(d.pos(v)[0])] = v;
  LinearQuiver q{d.field(), {}, {}, {}};
  for (std::size_t k = 0; k < n; ++k) q.dims.push_back(d.dim(at[k]));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (const Matrix* m = d.edge(at[k], at[k + 1])) {
      q.arrows.push_back(*m);
      q.forward.push_back(true);
    } else {
      q.arrows.push_back(*d.edge(at[k + 1], at[k]));
      q.forward.push_back(false);
    }
  }
  return q;
}

NormalizedZigZag normalize(const LinearQuiver& q) {
  if (q.dims.empty()) throw Error(ErrorCode::not_a_zigzag, "empty quiver");
  if (q.arrows.size() + 1 != q.dims.size() || q.forward.size() != q.arrows.size())
    throw ShapeError("quiver needs one arrow and one direction between consecutive spaces");
  std::vector<std::size_t> dims{q.dims[0]};
  std::vector<Matrix> arrows;
  std::vector<std::size_t> position{0};
  std::size_t inserted = 0;
  for (std::size_t k = 0; k < q.arrows.size(); ++k) {
    const std::size_t c = dims.size() - 1;
    // A forward arrow must leave an even slot, a backward one an odd slot.
    if ((q.forward[k] && c % 2 == 1) || (!q.forward[k] && c % 2 == 0)) {
      dims.push_back(q.dims[k]);
      arrows.push_back(Matrix::identity(q.field, q.dims[k]));
      ++inserted;
    }
    dims.push_back(q.dims[k + 1]);
    arrows.push_back(q.arrows[k]);
    position.push_back(dims.size() - 1);
  }
  if (dims.size() % 2 == 0) {
    dims.push_back(dims.back());
    arrows.push_back(Matrix::identity(q.field, dims.back()));
    ++inserted;
  }
  return {ZigZag(q.field, std::move(dims), std::move(arrows)), std::move(position), inserted};
}

std::string_view to_string(Schedule s) {
  switch (s) {
    case Schedule::left_fold:
      return "left";
    case Schedule::right_fold:
      return "right";
    case Schedule::tree:
      return "tree";
  }
  return "?";
}

std::vector<std::vector<Merge>> reduction_schedule(std::size_t n) {
  std::vector<std::vector<Merge>> levels;
  for (std::size_t width = 1; width < n; width *= 2) {
    std::vector<Merge> level;
    for (std::size_t b = 0; b + width < n; b += 2 * width)
      level.push_back({b, b + width, std::min(b + 2 * width, n)});
    levels.push_back(std::move(level));
  }
  return levels;
}

namespace {

// Meet of the evens first..last as a canonical basis of their direct sum.
struct Segment {
  std::size_t first, last;
  Matrix basis;
};

std::size_t block_offset(const ZigZag& z, std::size_t first, std::size_t e) {
  std::size_t off = 0;
  for (std::size_t k = first; k < e; k += 2) off += z.dim(k);
  return off;
}

Matrix block_rows(const ZigZag& z, const Segment& s, std::size_t e) {
  return s.basis.block(block_offset(z, s.first, e), 0, z.dim(e), s.basis.cols());
}

Segment leaf(const ZigZag& z, std::size_t e) { return {e, e, Matrix::identity(z.field(), z.dim(e))}; }

// Pullback of two adjacent segments over the odd space between them.
Segment merge(const ZigZag& z, const Segment& l, const Segment& r) {
  const Field& f = z.field();
  const std::size_t odd = l.last + 1;
  const Matrix lhs = z.arrow(l.last) * block_rows(z, l, l.last);
  const Matrix rhs = z.arrow(odd) * block_rows(z, r, r.first);
  const Matrix parts[] = {lhs, rhs.negated()};
  const SubspaceBasis coeffs = kernel_basis(Matrix::hstack(f, z.dim(odd), parts));

  const std::size_t rows = l.basis.rows() + r.basis.rows();
  Matrix diag(f, rows, l.basis.cols() + r.basis.cols());
  for (std::size_t i = 0; i < l.basis.rows(); ++i)
    for (std::size_t c = 0; c < l.basis.cols(); ++c) diag.at(i, c) = l.basis(i, c);
  for (std::size_t i = 0; i < r.basis.rows(); ++i)
    for (std::size_t c = 0; c < r.basis.cols(); ++c)
      diag.at(l.basis.rows() + i, l.basis.cols() + c) = r.basis(i, c);
  return {l.first, r.last, SubspaceBasis::span(diag * coeffs.basis()).basis()};
}

void check_range(const ZigZag& z, std::size_t i, std::size_t j) {
  if (i % 2 || j % 2 || i > j || j >= z.size())
    throw Error(ErrorCode::index, "zig-zag range [" + std::to_string(i) + "," + std::to_string(j) +
                                      "] needs even i <= j < " + std::to_string(z.size()));
}

}  // namespace

ZigZagMeet zz_meet(const ZigZag& z, std::size_t i, std::size_t j, const ZigZagOptions& opt) {
  check_range(z, i, j);
  const std::size_t n = (j - i) / 2 + 1;
  std::vector<std::optional<Segment>> seg;
  for (std::size_t k = 0; k < n; ++k) seg.emplace_back(leaf(z, i + 2 * k));

  switch (opt.schedule) {
    case Schedule::left_fold:
      for (std::size_t k = 1; k < n; ++k) seg[0] = merge(z, *seg[0], *seg[k]);
      break;
    case Schedule::right_fold:
      for (std::size_t k = n - 1; k-- > 0;) seg[n - 1] = merge(z, *seg[k], *seg[n - 1]);
      if (n > 1) seg[0] = std::move(seg[n - 1]);
      break;
    case Schedule::tree:
      for (const auto& level : reduction_schedule(n)) {
        if (opt.parallel && level.size() > 1) {
          std::vector<std::future<Segment>> jobs;
          for (const auto& m : level)
            jobs.push_back(std::async(std::launch::async, [&z, &seg, m] {
              return merge(z, *seg[m.left_begin], *seg[m.mid]);
            }));
          for (std::size_t k = 0; k < level.size(); ++k) seg[level[k].left_begin] = jobs[k].get();
        } else {
          for (const auto& m : level) seg[m.left_begin] = merge(z, *seg[m.left_begin], *seg[m.mid]);
        }
      }
      break;
  }

  const Segment& s = *seg[0];
  ZigZagMeet out{i, j, {}, SubspaceBasis::span(s.basis), {}};
  for (std::size_t e = i; e <= j; e += 2) {
    out.offsets.push_back(block_offset(z, i, e));
    out.legs.push_back(block_rows(z, s, e));
  }
  return out;
}

ZigZagJoin zz_join(const ZigZag& z, const ZigZagMeet& meet) {
  const Field& f = z.field();
  const std::size_t total = meet.space.ambient_dim();
  const Matrix& b = meet.space.basis();
  // Identify pi_e(m) with pi_{e+2}(m) for every m in the meet.
  std::vector<Matrix> gens;
  for (std::size_t k = 0; k + 1 < meet.legs.size(); ++k) {
    Matrix g(f, total, b.cols());
    const std::size_t lo = meet.offsets[k], hi = meet.offsets[k + 1];
    const std::size_t end = k + 2 < meet.offsets.size() ? meet.offsets[k + 2] : total;
    for (std::size_t r = lo; r < hi; ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) g.at(r, c) = b(r, c);
    for (std::size_t r = hi; r < end; ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) g.at(r, c) = f.neg(b(r, c));
    gens.push_back(std::move(g));
  }
  SubspaceBasis relations = SubspaceBasis::span(Matrix::hstack(f, total, gens));
  Matrix q = quotient_map(total, relations);
  std::vector<Matrix> legs;
  for (std::size_t k = 0; k < meet.legs.size(); ++k)
    legs.push_back(q.block(0, meet.offsets[k], q.rows(), z.dim(meet.first + 2 * k)));
  return {std::move(relations), std::move(q), std::move(legs)};
}

ZigZagJoin zz_join(const ZigZag& z, std::size_t i, std::size_t j, const ZigZagOptions& opt) {
  return zz_join(z, zz_meet(z, i, j, opt));
}

std::size_t zz_rank(const ZigZag& z, std::size_t i, std::size_t j, const ZigZagOptions& opt) {
  const ZigZagMeet m = zz_meet(z, i, j, opt);
  const Matrix& pi_i = m.legs.front();
  const Matrix& pi_j = m.legs.back();
  if (opt.meets_only) {
    const Matrix both[] = {pi_i, pi_j};
    return rank(pi_i) + rank(pi_j) - rank(Matrix::vstack(z.field(), m.dim(), both));
  }
  const ZigZagJoin j_ = zz_join(z, m);
  return rank(j_.legs.front() * pi_i);
}

std::vector<std::vector<std::size_t>> zz_rank_table(const ZigZag& z, const ZigZagOptions& opt) {
  const std::size_t n = (z.size() + 1) / 2;
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) table[a][b] = zz_rank(z, 2 * a, 2 * b, opt);
  return table;
}

}  // namespace persilat
