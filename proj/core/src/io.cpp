#include "persilat/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "persilat/linalg.hpp"

namespace persilat {

using nlohmann::json;

namespace {

struct Issue {
  ErrorCode code;
  std::string message;
};

class Reader {
 public:
  explicit Reader(const ParseOptions& opt) : opt_(opt) {}

  DiagramSpec read(const json& j) {
    DiagramSpec spec;
    if (!j.is_object()) {
      issue(ErrorCode::parse, "top level must be a JSON object");
      return spec;
    }
    for (const auto& [key, _] : j.items())
      if (key != "field" && key != "nodes" && key != "edges" && key != "shape")
        warnings.push_back("ignoring unknown key '" + key + "'");

    if (!j.contains("field") || !j["field"].is_number_integer() || j["field"].get<std::int64_t>() < 2) {
      issue(ErrorCode::parse, "'field' must be an integer prime p >= 2");
    } else {
      spec.field = j["field"].get<std::uint64_t>();
      if (!Field::is_prime(spec.field) || spec.field >= (std::uint64_t{1} << 31)) {
        issue(ErrorCode::field, "field modulus " + std::to_string(spec.field) +
                                    " is not a prime below 2^31");
        spec.field = 0;
      }
    }

    std::map<std::string, std::size_t> dims;
    if (!j.contains("nodes") || !j["nodes"].is_array()) {
      issue(ErrorCode::parse, "'nodes' must be an array");
    } else {
      std::size_t k = 0;
      for (const auto& n : j["nodes"]) read_node(n, k++, spec, dims);
    }

    if (j.contains("edges")) {
      if (!j["edges"].is_array()) {
        issue(ErrorCode::parse, "'edges' must be an array");
      } else {
        std::size_t k = 0;
        for (const auto& e : j["edges"]) read_edge(e, k++, spec, dims);
      }
    }

    if (j.contains("shape")) read_shape(j["shape"], spec);
    return spec;
  }

  std::vector<Issue> issues;
  std::vector<std::string> warnings;

 private:
  void issue(ErrorCode code, std::string message) { issues.push_back({code, std::move(message)}); }

  void read_node(const json& n, std::size_t k, DiagramSpec& spec,
                 std::map<std::string, std::size_t>& dims) {
    const std::string where = "node #" + std::to_string(k);
    if (!n.is_object() || !n.contains("id") || !n["id"].is_string() || n["id"].get<std::string>().empty()) {
      issue(ErrorCode::parse, where + ": needs a nonempty string 'id'");
      return;
    }
    NodeDecl decl;
    decl.id = n["id"].get<std::string>();
    if (!n.contains("dim") || !n["dim"].is_number_integer() || n["dim"].get<std::int64_t>() < 0) {
      issue(ErrorCode::parse, "node " + decl.id + ": 'dim' must be a nonnegative integer");
      return;
    }
    decl.dim = n["dim"].get<std::size_t>();
    if (n.contains("pos")) {
      if (!n["pos"].is_array()) {
        issue(ErrorCode::parse, "node " + decl.id + ": 'pos' must be an array of integers");
      } else {
        for (const auto& p : n["pos"]) {
          if (!p.is_number_integer()) {
            issue(ErrorCode::parse, "node " + decl.id + ": 'pos' must be an array of integers");
            break;
          }
          decl.pos.push_back(p.get<int>());
        }
      }
    }
    if (!dims.emplace(decl.id, decl.dim).second) {
      issue(ErrorCode::duplicate_node, "duplicate node id '" + decl.id + "'");
      return;
    }
    spec.nodes.push_back(std::move(decl));
  }

  void read_edge(const json& e, std::size_t k, DiagramSpec& spec,
                 const std::map<std::string, std::size_t>& dims) {
    const std::string where = "edge #" + std::to_string(k);
    if (!e.is_object() || !e.contains("from") || !e["from"].is_string() || !e.contains("to") ||
        !e["to"].is_string()) {
      issue(ErrorCode::parse, where + ": needs string 'from' and 'to'");
      return;
    }
    const std::string from = e["from"].get<std::string>(), to = e["to"].get<std::string>();
    const std::string name = "edge " + from + " -> " + to;
    bool known = true;
    for (const auto& end : {from, to})
      if (!dims.count(end)) {
        issue(ErrorCode::unknown_node, name + ": unknown node id '" + end + "'");
        known = false;
      }
    if (!e.contains("matrix") || !e["matrix"].is_array()) {
      issue(ErrorCode::parse, name + ": 'matrix' must be an array of rows");
      return;
    }
    const json& rows = e["matrix"];
    std::vector<std::vector<std::int64_t>> entries;
    for (const auto& row : rows) {
      if (!row.is_array()) {
        issue(ErrorCode::parse, name + ": every matrix row must be an array");
        return;
      }
      std::vector<std::int64_t> r;
      for (const auto& x : row) {
        if (!x.is_number_integer()) {
          issue(ErrorCode::parse, name + ": matrix entries must be integers");
          return;
        }
        r.push_back(x.get<std::int64_t>());
      }
      entries.push_back(std::move(r));
    }
    if (!known) return;
    const std::size_t want_rows = dims.at(to), want_cols = dims.at(from);
    const std::size_t got_cols = entries.empty() ? want_cols : entries.front().size();
    bool ragged = false;
    for (const auto& r : entries) ragged = ragged || r.size() != got_cols;
    if (ragged || entries.size() != want_rows || got_cols != want_cols) {
      issue(ErrorCode::shape, name + ": matrix is " + std::to_string(entries.size()) + "x" +
                                  (ragged ? std::string("ragged") : std::to_string(got_cols)) +
                                  ", expected " + std::to_string(want_rows) + "x" +
                                  std::to_string(want_cols));
      return;
    }
    if (spec.field == 0) return;
    bool out_of_range = false;
    for (const auto& r : entries)
      for (auto x : r) out_of_range = out_of_range || x < 0 || static_cast<std::uint64_t>(x) >= spec.field;
    if (out_of_range) {
      if (opt_.strict_field) {
        issue(ErrorCode::field, name + ": entries outside [0, " + std::to_string(spec.field) + ")");
        return;
      }
      warnings.push_back(name + ": entries reduced mod " + std::to_string(spec.field));
    }
    spec.edges.push_back(
        {from, to, Matrix::from_rows(Field(spec.field), want_rows, want_cols, entries)});
  }

  void read_shape(const json& s, DiagramSpec& spec) {
    static const std::map<std::string, ShapeKind> kinds = {{"generic", ShapeKind::generic},
                                                           {"filtration", ShapeKind::filtration},
                                                           {"grid", ShapeKind::grid},
                                                           {"zigzag", ShapeKind::zigzag}};
    std::string kind;
    if (s.is_string()) {
      kind = s.get<std::string>();
    } else if (s.is_object() && s.contains("kind") && s["kind"].is_string()) {
      kind = s["kind"].get<std::string>();
    } else {
      issue(ErrorCode::parse, "'shape' must be a string or an object with 'kind'");
      return;
    }
    auto it = kinds.find(kind);
    if (it == kinds.end()) {
      issue(ErrorCode::parse, "unknown shape '" + kind + "'");
      return;
    }
    spec.shape.kind = it->second;
    if (it->second != ShapeKind::grid) return;
    if (!s.is_object() || !s.contains("width") || !s["width"].is_number_unsigned() ||
        !s.contains("height") || !s["height"].is_number_unsigned()) {
      issue(ErrorCode::parse, "grid shape needs nonnegative integer 'width' and 'height'");
      return;
    }
    spec.shape.width = s["width"].get<std::size_t>();
    spec.shape.height = s["height"].get<std::size_t>();
  }

  const ParseOptions& opt_;
};

[[noreturn]] void raise(const std::vector<Issue>& issues) {
  if (issues.size() == 1) {
    const auto& i = issues.front();
    switch (i.code) {
      case ErrorCode::shape:
        throw ShapeError(i.message);
      case ErrorCode::field:
        throw FieldError(i.message);
      default:
        throw Error(i.code, i.message);
    }
  }
  std::vector<std::string> messages;
  for (const auto& i : issues) messages.push_back(std::string(to_string(i.code)) + ": " + i.message);
  throw ParseError(std::move(messages));
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (auto x : m.row(r)) row.push_back(x);
    rows.push_back(std::move(row));
  }
  return rows;
}

json shape_json(const Shape& s) {
  switch (s.kind) {
    case ShapeKind::generic:
      return "generic";
    case ShapeKind::filtration:
      return "filtration";
    case ShapeKind::zigzag:
      return "zigzag";
    case ShapeKind::grid:
      return {{"kind", "grid"}, {"width", s.width}, {"height", s.height}};
  }
  return "generic";
}

json envelope() { return {{"schema_version", schema_version}}; }

}  // namespace

LoadedDiagram parse_diagram(std::string_view text, const ParseOptions& opt) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError({std::string("malformed JSON: ") + e.what()});
  }
  Reader reader(opt);
  DiagramSpec spec = reader.read(j);
  if (!reader.issues.empty()) raise(reader.issues);
  Diagram d = Diagram::build(std::move(spec));
  std::vector<std::string> warnings = std::move(reader.warnings);
  warnings.insert(warnings.end(), d.warnings().begin(), d.warnings().end());
  return {std::move(d), std::move(warnings)};
}

LoadedDiagram load_diagram(const std::string& path, const ParseOptions& opt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError({"cannot read '" + path + "'"});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_diagram(buf.str(), opt);
}

std::string emit_diagram(const Diagram& d) {
  json nodes = json::array();
  for (const auto& n : d.nodes()) {
    json node = {{"id", n.id}, {"dim", n.dim}};
    if (!n.pos.empty()) node["pos"] = n.pos;
    nodes.push_back(std::move(node));
  }
  json edges = json::array();
  for (const auto& e : d.edges())
    edges.push_back({{"from", e.from}, {"to", e.to}, {"matrix", matrix_json(e.map)}});
  json out = {{"field", d.field().modulus()}, {"nodes", nodes}, {"edges", edges}};
  if (d.shape().kind != ShapeKind::generic) out["shape"] = shape_json(d.shape());
  return out.dump(2) + "\n";
}

std::string rank_report_json(const RankReport& r, const Diagram& d) {
  json out = envelope();
  out["lower"] = r.lower;
  out["upper"] = r.upper;
  out["dim_lower"] = r.dim_lower;
  out["dim_upper"] = r.dim_upper;
  out["dim_meet"] = r.dim_meet;
  out["dim_join"] = r.dim_join;
  out["rank"] = r.rank;
  out["leg_agreement"] = r.leg_agreement;
  out["ses_ok"] = r.ses_ok;
  out["iterations"] = r.iterations;
  out["stabilization"] = std::string(to_string(r.order));
  out["field"] = d.field().modulus();
  out["sign_convention"] = "difference";
  if (r.steps) {
    out["steps"] = {{"meets", r.steps->meets},
                    {"joins", r.steps->joins},
                    {"path_length", r.steps->path_length},
                    {"total", r.steps->total()},
                    {"bound", r.steps->bound}};
  }
  return out.dump() + "\n";
}

std::string error_json(const std::exception& e) {
  json err = {{"message", e.what()}};
  if (const auto* pe = dynamic_cast<const Error*>(&e)) {
    err["code"] = std::string(to_string(pe->code()));
    if (const auto* c = dynamic_cast<const CommutativityError*>(&e)) {
      err["from"] = c->from();
      err["to"] = c->to();
      err["path_a"] = c->path_a();
      err["path_b"] = c->path_b();
    } else if (const auto* c = dynamic_cast<const CycleError*>(&e)) {
      err["nodes"] = c->nodes();
    } else if (const auto* c = dynamic_cast<const DuplicateEdgeError*>(&e)) {
      err["from"] = c->from();
      err["to"] = c->to();
    } else if (const auto* c = dynamic_cast<const UnknownNodeError*>(&e)) {
      err["id"] = c->id();
    } else if (const auto* c = dynamic_cast<const ParseError*>(&e)) {
      err["issues"] = c->issues();
    } else if (const auto* c = dynamic_cast<const StabilizationDiagnostic*>(&e)) {
      err["iterations"] = c->iterations();
      json hist = json::array();
      for (auto [m, j] : c->dims_history()) hist.push_back({{"dim_meet", m}, {"dim_join", j}});
      err["dims_history"] = hist;
    }
  } else {
    err["code"] = std::string(to_string(ErrorCode::internal));
  }
  json out = envelope();
  out["error"] = err;
  return out.dump() + "\n";
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string emit_dot(const FreeLattice& lattice, const std::vector<LatticeTerm>& elements,
                     const std::vector<std::pair<LatticeTerm, LatticeTerm>>& edges) {
  std::ostringstream os;
  os << "digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (const auto& e : elements) os << "  " << dot_quote(lattice.to_string(e)) << ";\n";
  for (const auto& [lo, hi] : edges)
    os << "  " << dot_quote(lattice.to_string(lo)) << " -> " << dot_quote(lattice.to_string(hi))
       << ";\n";
  os << "}\n";
  return os.str();
}

std::vector<NodeIndex> filtration_order(const Diagram& d) {
  for (NodeIndex u = 0; u < d.size(); ++u)
    for (NodeIndex v = u + 1; v < d.size(); ++v)
      if (!d.reachable(u, v) && !d.reachable(v, u))
        throw Error(ErrorCode::not_a_filtration,
                    "nodes " + d.id(u) + " and " + d.id(v) + " are incomparable");
  return d.topological_order();
}

std::vector<std::vector<std::size_t>> filtration_ranks(const Diagram& d) {
  const auto order = filtration_order(d);
  const std::size_t n = order.size();
  std::vector<std::vector<std::size_t>> r(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) r[i][j] = rank_invariant(d, order[i], order[j]).rank;
  return r;
}

std::vector<BarcodeEntry> barcode_from_ranks(const std::vector<std::vector<std::size_t>>& r) {
  const auto n = static_cast<std::ptrdiff_t>(r.size());
  auto at = [&](std::ptrdiff_t i, std::ptrdiff_t j) -> std::ptrdiff_t {
    if (i < 0 || j < 0 || i >= n || j >= n || i > j) return 0;
    return static_cast<std::ptrdiff_t>(r[i][j]);
  };
  std::vector<BarcodeEntry> bars;
  for (std::ptrdiff_t b = 0; b < n; ++b) {
    for (std::ptrdiff_t d = b + 1; d < n; ++d) {
      const auto mu = at(b, d - 1) - at(b, d) - at(b - 1, d - 1) + at(b - 1, d);
      if (mu > 0)
        bars.push_back({static_cast<std::size_t>(b), static_cast<std::size_t>(d),
                        static_cast<std::size_t>(mu)});
    }
    const auto mu = at(b, n - 1) - at(b - 1, n - 1);
    if (mu > 0) bars.push_back({static_cast<std::size_t>(b), std::nullopt, static_cast<std::size_t>(mu)});
  }
  return bars;
}

std::vector<BarcodeEntry> barcode(const Diagram& d) {
  if (d.shape().kind != ShapeKind::filtration)
    throw Error(ErrorCode::not_a_filtration, "barcode needs a filtration-tagged diagram");
  return barcode_from_ranks(filtration_ranks(d));
}

std::string barcode_json(const std::vector<BarcodeEntry>& bars, const Diagram& d) {
  json out = envelope();
  const auto order = filtration_order(d);
  json ids = json::array();
  for (auto v : order) ids.push_back(d.id(v));
  json list = json::array();
  for (const auto& b : bars) {
    json death = b.death ? json(*b.death) : json(nullptr);
    list.push_back({{"birth", b.birth}, {"death", death}, {"multiplicity", b.multiplicity}});
  }
  out["order"] = ids;
  out["bars"] = list;
  out["convention"] = "half-open [birth, death); death null means the class never dies";
  return out.dump() + "\n";
}

std::string zigzag_json(const NormalizedZigZag& z, const std::vector<std::vector<std::size_t>>& table,
                        const ZigZagOptions& opt) {
  json out = envelope();
  json positions = json::array();
  for (std::size_t k = 0; k < z.zigzag.size(); k += 2) positions.push_back(k);
  out["even_positions"] = positions;
  out["ranks"] = table;
  out["position_map"] = z.position;
  out["inserted_identities"] = z.inserted;
  out["schedule"] = std::string(to_string(opt.schedule));
  out["meets_only"] = opt.meets_only;
  return out.dump() + "\n";
}

std::string zigzag_csv(const std::vector<std::vector<std::size_t>>& table) {
  std::ostringstream os;
  os << "i,j,rank\n";
  for (std::size_t a = 0; a < table.size(); ++a)
    for (std::size_t b = a; b < table.size(); ++b)
      os << 2 * a << ',' << 2 * b << ',' << table[a][b] << '\n';
  return os.str();
}

}  // namespace persilat
