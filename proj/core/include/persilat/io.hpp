#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "persilat/diagram.hpp"
#include "persilat/error.hpp"
#include "persilat/lattice.hpp"
#include "persilat/realization.hpp"
#include "persilat/zigzag.hpp"

namespace persilat {

inline constexpr int schema_version = 1;

struct ParseOptions {
  // Out-of-range matrix entries are an error instead of being reduced.
  bool strict_field = false;
};

struct LoadedDiagram {
  Diagram diagram;
  std::vector<std::string> warnings;  // load warnings, then validation warnings
};

// Reads the JSON diagram format. Syntactic and shape problems are collected
// first and reported together; a single problem keeps its specific error
// class. The result is then validated by Diagram::build.
LoadedDiagram parse_diagram(std::string_view json_text, const ParseOptions& opt = {});
LoadedDiagram load_diagram(const std::string& path, const ParseOptions& opt = {});

// Canonical form: sorted keys, nodes by id, edges by (from, to).
std::string emit_diagram(const Diagram& d);

std::string rank_report_json(const RankReport& r, const Diagram& d);
std::string error_json(const std::exception& e);

// DOT text with one node per element (labelled by its normal form) and one
// edge per covering pair, drawn bottom to top.
std::string emit_dot(const FreeLattice& lattice, const std::vector<LatticeTerm>& elements,
                     const std::vector<std::pair<LatticeTerm, LatticeTerm>>& edges);

struct BarcodeEntry {
  std::size_t birth = 0;
  std::optional<std::size_t> death;  // first index where the class is gone
  std::size_t multiplicity = 0;

  friend bool operator==(const BarcodeEntry&, const BarcodeEntry&) = default;
};

// Nodes of a filtration-tagged diagram in their total order.
std::vector<NodeIndex> filtration_order(const Diagram& d);
// r(i, j) = rank_invariant(X_i, X_j) for i <= j, zero below the diagonal.
std::vector<std::vector<std::size_t>> filtration_ranks(const Diagram& d);
// Bars from r by inclusion-exclusion; half-open [birth, death).
std::vector<BarcodeEntry> barcode_from_ranks(const std::vector<std::vector<std::size_t>>& r);
std::vector<BarcodeEntry> barcode(const Diagram& d);
std::string barcode_json(const std::vector<BarcodeEntry>& bars, const Diagram& d);

std::string zigzag_json(const NormalizedZigZag& z, const std::vector<std::vector<std::size_t>>& table,
                        const ZigZagOptions& opt);
std::string zigzag_csv(const std::vector<std::vector<std::size_t>>& table);

}  // namespace persilat
