#pragma once

#include <json.hpp>
#include <map>

#include "periflex/verify.hpp"

namespace periflex {

using Json = nlohmann::ordered_json;

// Graph file plus the canonical in-memory graph. The document keeps the edge
// orientations exactly as given so serialization round-trips byte-for-byte;
// `flipped[e]` records where the canonical form reversed an edge.
struct GraphDocument {
  int k = 1;
  std::vector<std::string> vertex_names;
  std::vector<std::string> edge_names;
  std::vector<std::pair<std::string, std::string>> edge_ends;
  std::vector<GainVec> edge_gains;  // as given
  std::vector<bool> flipped;
  GainGraph graph;
  std::map<std::string, int> vertex_index;
  std::map<std::string, int> edge_index;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GraphDocument graph_document_from_json(const Json& j);
Json graph_document_to_json(const GraphDocument& doc);
GraphDocument parse_graph_document(const std::string& text);
std::string serialize_graph_document(const GraphDocument& doc);

Colouring colouring_from_json(const GraphDocument& doc, const Json& j);
Json colouring_to_json(const GraphDocument& doc, const Colouring& delta);

struct FlexDocument {
  GraphDocument graph;
  std::optional<Colouring> colouring;
  ParametricFlex flex;
};

FlexDocument flex_document_from_json(const Json& j);
Json flex_document_to_json(const FlexDocument& doc);
FlexDocument parse_flex_document(const std::string& text);
std::string serialize_flex_document(const FlexDocument& doc);

Json gain_to_json(const GainVec& g);
GainVec gain_from_json(const Json& j, int k);
Json walk_to_json(const GraphDocument& doc, const Walk& walk);
Json classification_to_json(const GraphDocument& doc, const Classification& cls);
Json decision_to_json(const GraphDocument& doc, const Decision& d);
Json flex_report_to_json(const FlexReport& rep);

// CSV trajectory: header t,x_<vid>,y_<vid>,...,L11,L21[,L12,L22]; 17
// significant digits, locale-independent.
std::string sample_csv(const FlexDocument& doc, double t0, double t1, int steps);

std::string format_double(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace periflex
