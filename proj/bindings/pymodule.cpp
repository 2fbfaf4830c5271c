// Python bindings: document-level API over JSON strings plus a few direct
// lattice helpers. Heavy lifting stays in the C++ core; callers json.loads the
// returned strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "periflex/io.hpp"

namespace py = pybind11;
using namespace periflex;

namespace {

GainVec gain_from_list(int k, const std::vector<long long>& v) {
  if (static_cast<int>(v.size()) != k) throw std::invalid_argument("gain length must equal k");
  return k == 1 ? GainVec(Int(v[0])) : GainVec(Int(v[0]), Int(v[1]));
}

std::vector<long long> gain_to_list(const GainVec& g) {
  std::vector<long long> out = {to_i64(g.c[0])};
  if (g.k == 2) out.push_back(to_i64(g.c[1]));
  return out;
}

std::string py_analyze(const std::string& graph_json, const std::string& mode_name) {
  auto mode = mode_from_name(mode_name);
  if (!mode) throw std::invalid_argument("mode must be fixed, flex1 or flex2");
  GraphDocument doc = parse_graph_document(graph_json);
  Decision d = decide(doc.graph, *mode);
  return decision_to_json(doc, d).dump();
}

std::vector<std::string> py_colourings(const std::string& graph_json, const std::string& cls_name,
                                       std::uint64_t limit) {
  auto cls = colour_class_from_name(cls_name);
  if (!cls) throw std::invalid_argument("unknown colouring class: " + cls_name);
  GraphDocument doc = parse_graph_document(graph_json);
  std::vector<std::string> out;
  enumerate_colourings(doc.graph, *cls, limit,
                       [&](const Colouring& col, const Classification& c) {
                         Json line;
                         line["colouring"] = colouring_to_json(doc, col);
                         line["classification"] = classification_to_json(doc, c);
                         out.push_back(line.dump());
                         return true;
                       });
  return out;
}

std::string py_classify(const std::string& graph_json, const std::string& colouring_json) {
  GraphDocument doc = parse_graph_document(graph_json);
  Colouring delta = colouring_from_json(doc, Json::parse(colouring_json));
  return classification_to_json(doc, classify(doc.graph, delta)).dump();
}

std::string py_construct(const std::string& graph_json, const std::string& colouring_json) {
  GraphDocument doc = parse_graph_document(graph_json);
  BuildOutcome build;
  if (colouring_json.empty()) {
    AutoOutcome out = construct_auto(doc.graph);
    if (out.status == AutoOutcome::OnlyType3)
      throw std::invalid_argument("only type 3 colourings found; no construction is known");
    if (out.status == AutoOutcome::Nothing)
      throw std::invalid_argument("no constructible colouring or graph property");
    build = std::move(*out.build);
  } else {
    Colouring delta = colouring_from_json(doc, Json::parse(colouring_json));
    build = construct_for_colouring(doc.graph, delta);
  }
  FlexDocument fdoc{doc, build.colouring, build.result.flex};
  return serialize_flex_document(fdoc);
}

std::string py_sample(const std::string& flex_json, double t) {
  FlexDocument doc = parse_flex_document(flex_json);
  PlacementLattice pl = doc.flex.sample(t);
  Json j;
  j["p"] = Json::array();
  for (const auto& pt : pl.p) j["p"].push_back(Json::array({pt[0], pt[1]}));
  j["L"] = Json::array();
  for (int c = 0; c < pl.k; ++c) j["L"].push_back(Json::array({pl.L[c][0], pl.L[c][1]}));
  return j.dump();
}

std::string py_sample_csv(const std::string& flex_json, double t0, double t1, int steps) {
  FlexDocument doc = parse_flex_document(flex_json);
  return sample_csv(doc, t0, t1, steps);
}

std::string py_verify(const std::string& flex_json, int samples, double tol) {
  FlexDocument doc = parse_flex_document(flex_json);
  FlexReport rep = verify_flex(doc.graph.graph, FlexPath::of(doc.flex), samples, tol);
  return flex_report_to_json(rep).dump();
}

std::vector<std::vector<long long>> py_hnf(int k, const std::vector<std::vector<long long>>& gens) {
  std::vector<GainVec> gv;
  for (const auto& g : gens) gv.push_back(gain_from_list(k, g));
  Subgroup s = hnf(k, gv);
  std::vector<std::vector<long long>> out;
  for (const auto& r : s.rows) out.push_back(gain_to_list(r));
  return out;
}

bool py_subgroup_contains(int k, const std::vector<std::vector<long long>>& basis,
                          const std::vector<long long>& g) {
  std::vector<GainVec> gv;
  for (const auto& b : basis) gv.push_back(gain_from_list(k, b));
  return contains(hnf(k, gv), gain_from_list(k, g));
}

std::optional<long long> py_coset_line(int k, const std::vector<long long>& offset,
                                       const std::vector<std::vector<long long>>& basis,
                                       const std::vector<long long>& alpha) {
  std::vector<GainVec> gv;
  for (const auto& b : basis) gv.push_back(gain_from_list(k, b));
  Coset c = make_coset(gain_from_list(k, offset), hnf(k, gv));
  auto r = coset_intersects_line(c, gain_from_list(k, alpha));
  if (!r) return std::nullopt;
  return to_i64(*r);
}

std::string py_switch(const std::string& graph_json, const std::string& vertex,
                      const std::vector<long long>& mu) {
  GraphDocument doc = parse_graph_document(graph_json);
  auto it = doc.vertex_index.find(vertex);
  if (it == doc.vertex_index.end()) throw std::invalid_argument("unknown vertex: " + vertex);
  GainGraph switched = switch_vertex(doc.graph, it->second, gain_from_list(doc.k, mu));
  Json j = graph_document_to_json(doc);
  // rewrite gains in the document's own orientations
  for (int e = 0; e < switched.edge_count(); ++e) {
    GainVec gain = doc.flipped[e] ? -switched.edge(e).gain : switched.edge(e).gain;
    j["edges"][e]["gain"] = gain_to_json(gain);
  }
  return j.dump(2) + "\n";
}

}  // namespace

PYBIND11_MODULE(_periflex, m) {
  m.doc() = "flexibility analysis of periodic gain graphs in the plane";

  m.def("analyze", &py_analyze, py::arg("graph_json"), py::arg("mode"),
        "Decide flexibility; returns the decision report as a JSON string.");
  m.def("colourings", &py_colourings, py::arg("graph_json"), py::arg("cls") = "nbac",
        py::arg("limit") = 1000,
        "Enumerate classified colourings; returns a list of JSON strings.");
  m.def("classify", &py_classify, py::arg("graph_json"), py::arg("colouring_json"),
        "Classify one red/blue colouring; returns a JSON string.");
  m.def("construct", &py_construct, py::arg("graph_json"), py::arg("colouring_json") = "",
        "Build a flexible placement-lattice; returns the flex document as JSON.");
  m.def("sample", &py_sample, py::arg("flex_json"), py::arg("t"),
        "Sample a flex document at parameter t; returns {p, L} as JSON.");
  m.def("sample_csv", &py_sample_csv, py::arg("flex_json"), py::arg("t0"), py::arg("t1"),
        py::arg("steps"), "Sample a flex document to a CSV trajectory string.");
  m.def("verify", &py_verify, py::arg("flex_json"), py::arg("samples") = 64,
        py::arg("tol") = 1e-9, "Verify a flex document; returns the report as JSON.");
  m.def("hnf", &py_hnf, py::arg("k"), py::arg("generators"),
        "Hermite normal form basis of the generated subgroup of Z^k.");
  m.def("subgroup_contains", &py_subgroup_contains, py::arg("k"), py::arg("basis"), py::arg("g"));
  m.def("coset_line", &py_coset_line, py::arg("k"), py::arg("offset"), py::arg("basis"),
        py::arg("alpha"), "Integer c with c*alpha in offset+<basis>, or None.");
  m.def("switch_vertex", &py_switch, py::arg("graph_json"), py::arg("vertex"), py::arg("mu"),
        "Apply a gain switching operation; returns the switched graph document.");
  m.attr("__version__") = "1.0.0";
}
