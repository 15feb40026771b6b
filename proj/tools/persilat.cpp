// persilat: query a commutative diagram of GF(p) vector spaces as a lattice.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "persilat/diagram.hpp"
#include "persilat/error.hpp"
#include "persilat/io.hpp"
#include "persilat/lattice.hpp"
#include "persilat/realization.hpp"
#include "persilat/zigzag.hpp"

namespace {

using namespace persilat;
using nlohmann::json;

enum Exit { ok = 0, domain_error = 1, input_error = 2 };

struct Options {
  std::string input;
  bool field_check = false;
  std::size_t budget = FreeLattice::default_budget;
  bool as_json = false;
  bool as_dot = false;
};

std::string print_json(json j) {
  j["schema_version"] = schema_version;
  return j.dump() + "\n";
}

std::vector<NodeIndex> lookup(const Diagram& d, const std::vector<std::string>& ids) {
  return d.indices(ids);
}

Enumeration enumerate_or_throw(const FreeLattice& l, std::size_t budget) {
  Enumeration e = l.enumerate_elements(budget);
  if (e.truncated)
    throw BudgetExceeded("lattice has more than " + std::to_string(budget) +
                         " elements; raise --budget or PERSILAT_BUDGET");
  return e;
}

std::pair<int, int> cell(const std::vector<int>& v, std::size_t at) { return {v[at], v[at + 1]}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice completion, rank invariants and zig-zag ranks of commutative diagrams"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--input,-i", opt.input, "Diagram file (JSON)")->required();
  app.add_flag("--field-check", opt.field_check, "Reject matrix entries outside [0, p)");
  app.add_option("--budget", opt.budget, "Lattice enumeration budget")
      ->envname("PERSILAT_BUDGET")
      ->check(CLI::PositiveNumber);
  auto* json_flag = app.add_flag("--json", opt.as_json, "JSON output where text is the default");
  auto* dot_flag = app.add_flag("--dot", opt.as_dot, "DOT output (hasse)");
  json_flag->excludes(dot_flag);

  auto* validate = app.add_subcommand("validate", "Check the diagram and report its shape");
  auto* format = app.add_subcommand("format", "Print the diagram in canonical form");

  std::string a, b;
  auto* rank = app.add_subcommand("rank", "Rank of the map from a ^ b to a v b");
  rank->add_option("a", a)->required();
  rank->add_option("b", b)->required();

  std::vector<std::string> set;
  auto* meet = app.add_subcommand("meet", "Formal and realized meet of nodes");
  meet->add_option("nodes", set)->required();
  auto* join = app.add_subcommand("join", "Formal and realized join of nodes");
  join->add_option("nodes", set)->required();

  auto* implies = app.add_subcommand("implies", "Heyting implication of two terms");
  implies->add_option("a", a, "Term, e.g. 'A & B | C'")->required();
  implies->add_option("b", b)->required();

  auto* complement = app.add_subcommand("complement", "Complement of a term, if any");
  complement->add_option("a", a)->required();

  auto* elements = app.add_subcommand("elements", "Enumerate the lattice");
  bool no_bounds = false;
  elements->add_flag("--no-bounds", no_bounds, "Leave out the formal top and bottom");

  auto* largest = app.add_subcommand("largest-injective", "Meet of sources to join of targets");

  bool generators_only = false;
  auto* hasse = app.add_subcommand("hasse", "Hasse diagram of the lattice");
  hasse->add_flag("--generators", generators_only, "Only the diagram nodes");

  auto* bars = app.add_subcommand("barcode", "Bars of a filtration");

  std::string schedule = "left";
  bool parallel = false, meets_only = false, csv = false;
  auto* zigzag = app.add_subcommand("zigzag", "Rank table of a zig-zag");
  zigzag->add_option("--schedule", schedule)->check(CLI::IsMember({"left", "right", "tree"}));
  zigzag->add_flag("--parallel", parallel, "Run tree levels concurrently");
  zigzag->add_flag("--meets-only", meets_only, "Ranks from the meet legs alone");
  zigzag->add_flag("--csv", csv, "CSV instead of JSON");

  std::vector<int> cells;
  auto* sections = app.add_subcommand("sections", "Coarse vs realized rank on a grid");
  sections->add_option("cells", cells, "i j k l")->expected(4)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return input_error;
  }

  try {
    const LoadedDiagram loaded = load_diagram(opt.input, {opt.field_check});
    for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << "\n";
    const Diagram& d = loaded.diagram;

    if (validate->parsed()) {
      json out = {{"valid", true},
                  {"nodes", d.size()},
                  {"edges", d.edges().size()},
                  {"field", d.field().modulus()},
                  {"warnings", loaded.warnings}};
      std::cout << print_json(out);
    } else if (format->parsed()) {
      std::cout << emit_diagram(d);
    } else if (rank->parsed()) {
      std::cout << rank_report_json(rank_invariant(d, a, b), d);
    } else if (meet->parsed() || join->parsed()) {
      const bool is_meet = meet->parsed();
      const FreeLattice lattice(NodePoset::from_diagram(d));
      std::vector<LatticeTerm> terms;
      for (const auto& id : set) terms.push_back(lattice.generator(id));
      const LatticeTerm t = is_meet ? lattice.meet(terms) : lattice.join(terms);
      const Stabilized s = stabilize(d, lookup(d, set));
      json out = {{"term", lattice.to_string(t)},
                  {"nodes", set},
                  {"dim", is_meet ? s.meet.dim() : s.join.dim()},
                  {"dim_meet", s.meet.dim()},
                  {"dim_join", s.join.dim()},
                  {"iterations", s.iterations},
                  {"stabilization", std::string(to_string(s.order))}};
      std::cout << print_json(out);
    } else if (implies->parsed()) {
      const FreeLattice lattice(NodePoset::from_diagram(d));
      const LatticeTerm t = lattice.implies(lattice.parse(a), lattice.parse(b));
      std::cout << print_json({{"a", a}, {"b", b}, {"result", lattice.to_string(t)}});
    } else if (complement->parsed()) {
      const FreeLattice lattice(NodePoset::from_diagram(d));
      const Enumeration e = enumerate_or_throw(lattice, opt.budget);
      const auto c = lattice.complement(lattice.parse(a), e.elements);
      std::cout << print_json({{"term", lattice.to_string(lattice.parse(a))},
                               {"complement", c ? json(lattice.to_string(*c)) : json(nullptr)},
                               {"elements", e.elements.size()}});
    } else if (elements->parsed()) {
      const FreeLattice lattice(NodePoset::from_diagram(d));
      const Enumeration e = lattice.enumerate_elements(opt.budget, !no_bounds);
      json list = json::array();
      for (const auto& t : e.elements) list.push_back(lattice.to_string(t));
      std::cout << print_json(
          {{"count", e.elements.size()}, {"truncated", e.truncated}, {"elements", list}});
    } else if (largest->parsed()) {
      std::cout << rank_report_json(largest_injective(d), d);
    } else if (hasse->parsed()) {
      const FreeLattice lattice(NodePoset::from_diagram(d));
      std::vector<LatticeTerm> elems;
      if (generators_only) {
        for (std::size_t i = 0; i < d.size(); ++i) elems.push_back(lattice.generator(i));
        std::sort(elems.begin(), elems.end());
      } else {
        elems = enumerate_or_throw(lattice, opt.budget).elements;
      }
      const auto edges = lattice.hasse_edges(elems);
      if (opt.as_json) {
        json list = json::array();
        for (const auto& [lo, hi] : edges)
          list.push_back({lattice.to_string(lo), lattice.to_string(hi)});
        std::cout << print_json({{"elements", elems.size()}, {"edges", list}});
      } else {
        std::cout << emit_dot(lattice, elems, edges);
      }
    } else if (bars->parsed()) {
      std::cout << barcode_json(barcode(d), d);
    } else if (zigzag->parsed()) {
      const NormalizedZigZag z = normalize(linear_quiver(d));
      ZigZagOptions zo;
      zo.schedule = schedule == "tree" ? Schedule::tree
                    : schedule == "right" ? Schedule::right_fold
                                          : Schedule::left_fold;
      zo.parallel = parallel;
      zo.meets_only = meets_only;
      const auto table = zz_rank_table(z.zigzag, zo);
      std::cout << (csv ? zigzag_csv(table) : zigzag_json(z, table, zo));
    } else if (sections->parsed()) {
      const SectionsReport r = sections_report(d, cell(cells, 0), cell(cells, 2));
      std::cout << print_json({{"coarse", r.coarse}, {"fine", r.fine}});
    }
  } catch (const Error& e) {
    std::cout << error_json(e);
    return is_input_error(e.code()) ? input_error : domain_error;
  } catch (const std::exception& e) {
    std::cout << error_json(e);
    return domain_error;
  }
  return ok;
}
