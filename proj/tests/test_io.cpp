#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"

using namespace periflex;

namespace {

GainVec v2(long long a, long long b) { return GainVec(Int(a), Int(b)); }

std::string fixture_path(const std::string& name) {
  return std::string(PERIFLEX_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("bundled graph files round-trip byte-identically") {
  for (const char* name :
       {"z1_double_square.json", "z2_theta_loops.json", "z2_row_scissor.json",
        "z2_double_square_apex.json", "z1_row_grid.json", "z2_loop_corner.json"}) {
    std::string text = read_file(fixture_path(name));
    GraphDocument doc = parse_graph_document(text);
    CHECK(serialize_graph_document(doc) == text);
  }
}

TEST_CASE("graph document validation") {
  auto parse = [](const char* s) { return parse_graph_document(s); };
  CHECK_THROWS_AS(parse("not json"), ParseError);
  CHECK_THROWS_AS(parse(R"({"k":3,"vertices":[],"edges":[]})"), ParseError);
  CHECK_THROWS_AS(parse(R"({"k":1,"vertices":["a","a"],"edges":[]})"), ParseError);
  CHECK_THROWS_AS(
      parse(R"({"k":1,"vertices":["a"],"edges":[{"id":"e","tail":"a","head":"b","gain":[1]}]})"),
      ParseError);
  CHECK_THROWS_AS(
      parse(R"({"k":1,"vertices":["a"],"edges":[{"id":"e","tail":"a","head":"a","gain":[0]}]})"),
      ParseError);
  CHECK_THROWS_AS(
      parse(R"({"k":2,"vertices":["a","b"],"edges":[{"id":"e","tail":"a","head":"b","gain":[1]}]})"),
      ParseError);
  // duplicate edge triples are rejected (edge sets, not multisets)
  CHECK_THROWS_AS(parse(R"({"k":1,"vertices":["a","b"],"edges":[
      {"id":"e1","tail":"a","head":"b","gain":[1]},
      {"id":"e2","tail":"b","head":"a","gain":[-1]}]})"),
                  ParseError);
  // bad id charset
  CHECK_THROWS_AS(parse(R"({"k":1,"vertices":["a b"],"edges":[]})"), ParseError);
}

TEST_CASE("colouring documents") {
  auto f = fixtures::z1_double_square();
  GraphDocument doc = fixtures::doc_of(f);
  Colouring delta = fixtures::colouring_of(f, "fixed");
  Json j = colouring_to_json(doc, delta);
  CHECK(colouring_from_json(doc, j) == delta);

  Json missing = Json::parse(R"({"red":["c13"],"blue":[]})");
  CHECK_THROWS_AS(colouring_from_json(doc, missing), ParseError);
  Json twice = Json::parse(R"({"red":["c13"],"blue":["c13"]})");
  CHECK_THROWS_AS(colouring_from_json(doc, twice), ParseError);
}

TEST_CASE("flex documents round-trip losslessly") {
  auto f = fixtures::z2_row_scissor();
  GraphDocument doc = fixtures::doc_of(f);
  Colouring delta = fixtures::colouring_of(f, "printed");
  ConstructResult r = construct_type2(doc.graph, delta, v2(1, 0), v2(0, 1));
  FlexDocument fdoc{doc, delta, r.flex};

  std::string text = serialize_flex_document(fdoc);
  FlexDocument parsed = parse_flex_document(text);
  CHECK(serialize_flex_document(parsed) == text);

  // sampling from the parsed parameters reproduces the original exactly
  for (double t : {0.0, 0.37, 2.0, 6.0}) {
    PlacementLattice a = fdoc.flex.sample(t);
    PlacementLattice b = parsed.flex.sample(t);
    for (int v = 0; v < fdoc.flex.nverts; ++v) {
      CHECK(a.p[v][0] == b.p[v][0]);
      CHECK(a.p[v][1] == b.p[v][1]);
    }
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < 2; ++i) CHECK(a.L[c][i] == b.L[c][i]);
  }
}

TEST_CASE("henneberg flex documents nest and round-trip") {
  auto f = fixtures::z2_row_scissor();
  GraphDocument doc = fixtures::doc_of(f);
  Colouring delta = fixtures::colouring_of(f, "printed");
  ConstructResult base = construct_type2(doc.graph, delta, v2(1, 0), v2(0, 1));
  ConstructResult ext = extend_flex_henneberg(base.graph, base.flex, 0, v2(1, 0));

  // document for the extended graph
  Json gj = graph_document_to_json(doc);
  gj["vertices"].push_back("v0");
  Json e1, e2;
  e1["id"] = "h0";
  e1["tail"] = "1";
  e1["head"] = "v0";
  e1["gain"] = Json::array({0, 0});
  e2["id"] = "h1";
  e2["tail"] = "1";
  e2["head"] = "v0";
  e2["gain"] = Json::array({1, 0});
  gj["edges"].push_back(e1);
  gj["edges"].push_back(e2);
  GraphDocument extended = graph_document_from_json(gj);

  FlexDocument fdoc{extended, std::nullopt, ext.flex};
  std::string text = serialize_flex_document(fdoc);
  FlexDocument parsed = parse_flex_document(text);
  CHECK(serialize_flex_document(parsed) == text);
  PlacementLattice a = fdoc.flex.sample(1.1);
  PlacementLattice b = parsed.flex.sample(1.1);
  CHECK(a.p.back()[0] == b.p.back()[0]);
  CHECK(a.p.back()[1] == b.p.back()[1]);
}

TEST_CASE("csv schema") {
  auto f = fixtures::z1_row_grid();
  GraphDocument doc = fixtures::doc_of(f);
  ConstructResult r = construct_flexible_1lattice(doc.graph, fixtures::colouring_of(f, "printed"));
  FlexDocument fdoc{doc, std::nullopt, r.flex};

  std::string csv = sample_csv(fdoc, 0.0, 0.0, 2);
  std::vector<std::string> lines;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  REQUIRE(lines.size() == 3);
  CHECK(lines[1] == lines[2]);  // both samples at t = 0

  // column count = 1 + 2|V| + 2k
  int cols = 1;
  for (char c : lines[0])
    if (c == ',') ++cols;
  CHECK(cols == 1 + 2 * doc.graph.vertex_count() + 2 * doc.k);
  CHECK(lines[0].rfind("t,x_1,y_1", 0) == 0);

  CHECK_THROWS_AS(sample_csv(fdoc, 0, 1, 1), std::invalid_argument);
}

TEST_CASE("classification and decision serialization stays name-based") {
  auto f = fixtures::z2_theta_loops();
  GraphDocument doc = fixtures::doc_of(f);
  Colouring delta = fixtures::colouring_of(f, "printed");
  Json cj = classification_to_json(doc, classify(doc.graph, delta));
  CHECK(cj["type2"]["ok"] == true);
  CHECK(cj["type2"]["alpha"] == Json::array({1, 0}));
  CHECK(cj["type2"]["beta"] == Json::array({0, 1}));

  Decision d = decide(doc.graph, Mode::FlexibleLattice2);
  Json dj = decision_to_json(doc, d);
  CHECK(dj["verdict"] == "Flexible");
  CHECK(dj["recipe"] == "Type2Scissor");
  CHECK(dj.contains("colouring"));
}

TEST_CASE("walk serialization uses document orientations") {
  // an edge given head-first is flipped internally; directions in reports are
  // relative to the document orientation
  GraphDocument doc = parse_graph_document(R"({
    "k": 2,
    "vertices": ["a", "b"],
    "edges": [
      {"id": "e", "tail": "b", "head": "a", "gain": [1, 0]},
      {"id": "f", "tail": "a", "head": "b", "gain": [0, 0]}
    ]
  })");
  CHECK(doc.flipped[0]);
  CHECK_FALSE(doc.flipped[1]);
  // a valid closed walk: e traversed canonically (a->b), then f backwards (b->a)
  Walk closed = {{0, true}, {1, false}};
  Json j = walk_to_json(doc, closed);
  CHECK(j[0]["edge"] == "e");
  CHECK(j[0]["dir"] == -1);  // canonical forward = document backward
  CHECK(j[1]["edge"] == "f");
  CHECK(j[1]["dir"] == -1);
}

TEST_CASE("mutated documents fail as parse errors, never crash") {
  std::mt19937_64 rng(971);
  std::string base = read_file(fixture_path("z2_row_scissor.json"));
  const char alphabet[] = "{}[]\",:0123456789abk-";
  int parsed = 0, rejected = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::string text = base;
    int edits = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < edits; ++i)
      text[rng() % text.size()] = alphabet[rng() % (sizeof(alphabet) - 1)];
    try {
      GraphDocument doc = parse_graph_document(text);
      ++parsed;  // mutation happened to stay valid
    } catch (const ParseError&) {
      ++rejected;
    }
  }
  CHECK(parsed + rejected == 400);
  CHECK(rejected > 0);
}

TEST_CASE("type-confused fields are parse errors") {
  CHECK_THROWS_AS(parse_graph_document(R"({"k":"two","vertices":[],"edges":[]})"), ParseError);
  CHECK_THROWS_AS(parse_graph_document(R"({"k":1,"vertices":[7],"edges":[]})"), ParseError);
  CHECK_THROWS_AS(
      parse_graph_document(R"({"k":1,"vertices":["a","b"],"edges":[{"id":7,"tail":"a","head":"b","gain":[1]}]})"),
      ParseError);
  CHECK_THROWS_AS(parse_flex_document(R"({"graph":{"k":1,"vertices":["a"],"edges":[]},"kind":5})"),
                  ParseError);
}
