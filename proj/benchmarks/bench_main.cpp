#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "persilat/diagram.hpp"
#include "persilat/lattice.hpp"
#include "persilat/realization.hpp"
#include "persilat/zigzag.hpp"

namespace {

using namespace persilat;

Matrix random_matrix(std::mt19937_64& rng, const Field& f, std::size_t rows, std::size_t cols) {
  Matrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = static_cast<Residue>(rng() % f.modulus());
  return m;
}

Diagram filtration(std::size_t length, std::size_t dim) {
  std::mt19937_64 rng(7);
  const Field f(2);
  DiagramSpec spec;
  spec.shape.kind = ShapeKind::filtration;
  for (std::size_t k = 0; k < length; ++k) {
    spec.nodes.push_back({"X" + std::string(k < 10 ? "0" : "") + std::to_string(k), dim, {}});
    if (k) spec.edges.push_back({spec.nodes[k - 1].id, spec.nodes[k].id, random_matrix(rng, f, dim, dim)});
  }
  return Diagram::build(std::move(spec));
}

ZigZag zigzag(std::size_t spaces, std::size_t dim) {
  std::mt19937_64 rng(11);
  const Field f(2);
  std::vector<Matrix> arrows;
  for (std::size_t k = 0; k + 1 < spaces; ++k) arrows.push_back(random_matrix(rng, f, dim, dim));
  return ZigZag(f, std::vector<std::size_t>(spaces, dim), std::move(arrows));
}

FreeLattice antichain(std::size_t n) {
  std::vector<std::string> ids;
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back("g" + std::to_string(i));
    leq[i][i] = true;
  }
  return FreeLattice(NodePoset(ids, leq));
}

void BM_RankInvariant(benchmark::State& state) {
  const Diagram d = filtration(8, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rank_invariant(d, 0, d.size() - 1).rank);
}
BENCHMARK(BM_RankInvariant)->Arg(4)->Arg(16)->Arg(32);

void BM_Validate(benchmark::State& state) {
  const DiagramSpec spec = filtration(static_cast<std::size_t>(state.range(0)), 8).spec();
  for (auto _ : state) benchmark::DoNotOptimize(Diagram::build(spec).size());
}
BENCHMARK(BM_Validate)->Arg(8)->Arg(32);

void BM_Enumerate(benchmark::State& state) {
  const FreeLattice l = antichain(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(l.enumerate_elements().elements.size());
}
BENCHMARK(BM_Enumerate)->DenseRange(2, 5);

void BM_ZigZag(benchmark::State& state, Schedule schedule, bool parallel) {
  const ZigZag z = zigzag(static_cast<std::size_t>(state.range(0)), 6);
  const ZigZagOptions opt{schedule, parallel, false};
  for (auto _ : state) benchmark::DoNotOptimize(zz_rank(z, 0, z.size() - 1, opt));
}
BENCHMARK_CAPTURE(BM_ZigZag, left_fold, Schedule::left_fold, false)->Arg(17)->Arg(65);
BENCHMARK_CAPTURE(BM_ZigZag, tree, Schedule::tree, false)->Arg(17)->Arg(65);
BENCHMARK_CAPTURE(BM_ZigZag, tree_parallel, Schedule::tree, true)->Arg(17)->Arg(65);

}  // namespace

BENCHMARK_MAIN();
