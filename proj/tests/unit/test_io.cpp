#include <gtest/gtest.h>

#include "helpers.hpp"
#include "json.hpp"
#include "oracle.hpp"
#include "persilat/error.hpp"
#include "persilat/io.hpp"

using namespace persilat;
using nlohmann::json;
namespace o = persilat::oracle;

namespace {

std::string data(const std::string& name) { return std::string(PERSILAT_DATA_DIR) + "/" + name; }

std::vector<BarcodeEntry> bars_of(const std::string& file) { return barcode(load_diagram(data(file)).diagram); }

}  // namespace

TEST(Parse, IdentityChain) {
  const auto loaded = parse_diagram(R"({"field": 2, "nodes": [{"id": "X0", "dim": 1}, {"id": "X1", "dim": 1}],
    "edges": [{"from": "X0", "to": "X1", "matrix": [[1]]}]})");
  EXPECT_EQ(loaded.diagram.edges().size(), 1u);
  EXPECT_TRUE(loaded.warnings.empty());
}

TEST(Parse, ShapeErrorNamesTheEdge) {
  try {
    load_diagram(data("bad_shape.json"));
    FAIL();
  } catch (const ShapeError& e) {
    EXPECT_NE(std::string(e.what()).find("A -> B"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("3x2"), std::string::npos);
  }
}

TEST(Parse, GridFile) {
  const Diagram d = load_diagram(data("grid4x4.json")).diagram;
  EXPECT_EQ(d.size(), 16u);
  EXPECT_EQ(d.edges().size(), 24u);
  EXPECT_EQ(d.shape().kind, ShapeKind::grid);
}

TEST(Parse, CollectsEveryIssue) {
  try {
    parse_diagram(R"({"field": 2, "nodes": [{"id": "A", "dim": 1}, {"dim": 2}],
      "edges": [{"from": "A", "to": "Z", "matrix": [[1]]}, {"from": "A", "to": "A", "matrix": "x"}]})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GE(e.issues().size(), 3u);
  }
}

TEST(Parse, SingleIssuesKeepTheirClass) {
  EXPECT_THROW(parse_diagram(R"({"field": 4, "nodes": []})"), FieldError);
  EXPECT_THROW(parse_diagram("{not json"), ParseError);
  EXPECT_THROW(parse_diagram(R"({"field": 2, "nodes": [], "edges": [{"from": "A", "to": "B", "matrix": []}]})"),
               ParseError);
  EXPECT_THROW(load_diagram(data("missing.json")), ParseError);
}

TEST(Parse, OutOfRangeEntries) {
  const auto loaded = load_diagram(data("out_of_range.json"));
  ASSERT_FALSE(loaded.warnings.empty());
  EXPECT_NE(loaded.warnings.front().find("reduced"), std::string::npos);
  EXPECT_THROW(load_diagram(data("out_of_range.json"), {true}), FieldError);
}

TEST(Parse, UnknownKeysWarn) {
  const auto loaded = parse_diagram(R"({"field": 3, "nodes": [{"id": "A", "dim": 0}], "comment": "hi"})");
  ASSERT_EQ(loaded.warnings.size(), 1u);
}

TEST(Parse, ValidationErrorsPassThrough) {
  EXPECT_THROW(load_diagram(data("square_noncommuting.json")), CommutativityError);
  EXPECT_THROW(load_diagram(data("cycle.json")), CycleError);
}

TEST(RoundTrip, EmitThenParse) {
  for (const char* name : {"chain3.json", "grid4x4.json", "zigzag3.json", "diamond.json", "empty.json"}) {
    const Diagram d = load_diagram(data(name)).diagram;
    const std::string text = emit_diagram(d);
    const Diagram again = parse_diagram(text).diagram;
    EXPECT_EQ(again.spec(), d.spec()) << name;
    EXPECT_EQ(emit_diagram(again), text) << name;
  }
  o::Rng rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const Diagram d = o::random_diagram(rng, trial % 2 ? 7 : 2, 6, 3);
    EXPECT_EQ(parse_diagram(emit_diagram(d)).diagram.spec(), d.spec());
  }
}

TEST(Barcode, Examples) {
  EXPECT_EQ(bars_of("filtration_dies.json"), (std::vector<BarcodeEntry>{{0, 2, 1}}));
  EXPECT_EQ(barcode(test::identity_chain(3)), (std::vector<BarcodeEntry>{{0, std::nullopt, 1}}));
  EXPECT_EQ(bars_of("filtration_bars.json"), (std::vector<BarcodeEntry>{{0, std::nullopt, 1}, {1, 2, 1}}));
  EXPECT_THROW(barcode(test::vshape()), Error);
}

TEST(Barcode, ConsistentWithRanks) {
  o::Rng rng(62);
  for (int trial = 0; trial < 60; ++trial) {
    const Diagram d = o::random_filtration(rng, trial % 2 ? 3 : 2, 1 + trial % 8, 3);
    const auto r = o::standard_persistence_ranks(d);
    EXPECT_EQ(filtration_ranks(d), r);
    const auto bars = barcode(d);
    for (const auto& b : bars) EXPECT_GE(b.multiplicity, 1u);
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = i; j < r.size(); ++j) {
        std::size_t total = 0;
        for (const auto& b : bars)
          if (b.birth <= i && (!b.death || *b.death > j)) total += b.multiplicity;
        EXPECT_EQ(total, r[i][j]);
      }
  }
}

TEST(Dot, Examples) {
  const Diagram chain = test::identity_chain(3);
  const FreeLattice l(NodePoset::from_diagram(chain));
  const auto all = l.enumerate_elements().elements;
  const std::string dot = emit_dot(l, all, l.hasse_edges(all));
  EXPECT_EQ(dot.rfind("digraph hasse {\n", 0), 0u);
  EXPECT_NE(dot.find("\"⊥\" -> \"X0\";"), std::string::npos);
  EXPECT_NE(dot.find("\"X2\" -> \"⊤\";"), std::string::npos);
  std::size_t arrows = 0;
  for (std::size_t at = dot.find("->"); at != std::string::npos; at = dot.find("->", at + 1)) ++arrows;
  EXPECT_EQ(arrows, 4u);

  const FreeLattice empty(NodePoset::from_diagram(load_diagram(data("empty.json")).diagram));
  const auto none = empty.enumerate_elements().elements;
  EXPECT_EQ(emit_dot(empty, none, {}), "digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n}\n");
}

TEST(Json, RankReport) {
  const Diagram d = test::identity_chain(3);
  const json j = json::parse(rank_report_json(rank_invariant(d, "X0", "X2"), d));
  EXPECT_EQ(j["rank"], 1);
  EXPECT_EQ(j["dim_meet"], 1);
  EXPECT_EQ(j["dim_join"], 1);
  EXPECT_EQ(j["ses_ok"], true);
  EXPECT_EQ(j["sign_convention"], "difference");
  EXPECT_EQ(j["schema_version"], schema_version);
  EXPECT_FALSE(j.contains("steps"));
  EXPECT_TRUE(json::parse(rank_report_json(largest_injective(d), d)).contains("steps"));
}

TEST(Json, Errors) {
  try {
    load_diagram(data("square_noncommuting.json"));
  } catch (const std::exception& e) {
    const json j = json::parse(error_json(e));
    EXPECT_EQ(j["error"]["code"], "CommutativityError");
    EXPECT_TRUE(j["error"].contains("path_a"));
  }
  const json internal = json::parse(error_json(std::runtime_error("boom")));
  EXPECT_EQ(internal["error"]["code"], "InternalError");
}

TEST(Json, ZigZag) {
  const Diagram d = load_diagram(data("zigzag_irregular.json")).diagram;
  const NormalizedZigZag z = normalize(linear_quiver(d));
  const json j = json::parse(zigzag_json(z, zz_rank_table(z.zigzag), {}));
  EXPECT_EQ(j["inserted_identities"], z.inserted);
  EXPECT_EQ(j["position_map"].size(), 4u);
  EXPECT_EQ(zigzag_csv({{1, 1}, {0, 1}}), "i,j,rank\n0,0,1\n0,2,1\n2,2,1\n");
}
