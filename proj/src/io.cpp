#include "periflex/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace periflex {

namespace {

bool valid_name(const std::string& s) {
  if (s.empty() || s.size() > 64) return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '_' || c == '-' || c == '.' || c == '+';
    if (!ok) return false;
  }
  return true;
}

Int int_from_json(const Json& j) {
  if (!j.is_number_integer()) throw ParseError("expected an integer");
  return Int(j.get<long long>());
}

long long i64_from_json(const Json& j) {
  if (!j.is_number_integer()) throw ParseError("expected an integer");
  return j.get<long long>();
}

double num_from_json(const Json& j) {
  if (!j.is_number()) throw ParseError("expected a number");
  return j.get<double>();
}

Json ivec_to_json(const IVec2& v, int k) {
  Json out = Json::array();
  out.push_back(v[0]);
  if (k == 2) out.push_back(v[1]);
  return out;
}

IVec2 ivec_from_json(const Json& j, int k) {
  if (!j.is_array() || static_cast<int>(j.size()) != k) throw ParseError("bad integer vector");
  IVec2 v{0, 0};
  v[0] = i64_from_json(j[0]);
  if (k == 2) v[1] = i64_from_json(j[1]);
  return v;
}

}  // namespace

Json gain_to_json(const GainVec& g) {
  Json out = Json::array();
  out.push_back(to_i64(g.c[0]));
  if (g.k == 2) out.push_back(to_i64(g.c[1]));
  return out;
}

GainVec gain_from_json(const Json& j, int k) {
  if (!j.is_array() || static_cast<int>(j.size()) != k)
    throw ParseError("gain must be an integer array of length k");
  if (k == 1) return GainVec(int_from_json(j[0]));
  return GainVec(int_from_json(j[0]), int_from_json(j[1]));
}

namespace {

template <typename F>
auto translating_json_errors(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed document: ") + ex.what());
  }
}

}  // namespace

static GraphDocument graph_document_from_json_impl(const Json& j);

GraphDocument graph_document_from_json(const Json& j) {
  return translating_json_errors([&] { return graph_document_from_json_impl(j); });
}

static GraphDocument graph_document_from_json_impl(const Json& j) {
  if (!j.is_object()) throw ParseError("graph document must be an object");
  GraphDocument doc;
  if (!j.contains("k")) throw ParseError("missing field: k");
  doc.k = j.at("k").get<int>();
  if (doc.k != 1 && doc.k != 2) throw ParseError("k must be 1 or 2");
  if (!j.contains("vertices") || !j.at("vertices").is_array())
    throw ParseError("missing vertex list");
  for (const auto& v : j.at("vertices")) {
    if (!v.is_string()) throw ParseError("vertex ids must be strings");
    std::string name = v.get<std::string>();
    if (!valid_name(name)) throw ParseError("invalid vertex id: " + name);
    if (doc.vertex_index.count(name)) throw ParseError("duplicate vertex id: " + name);
    doc.vertex_index[name] = static_cast<int>(doc.vertex_names.size());
    doc.vertex_names.push_back(name);
  }
  doc.graph = GainGraph(doc.k, static_cast<int>(doc.vertex_names.size()));
  if (!j.contains("edges") || !j.at("edges").is_array()) throw ParseError("missing edge list");
  for (const auto& e : j.at("edges")) {
    if (!e.is_object()) throw ParseError("edges must be objects");
    for (const char* field : {"id", "tail", "head", "gain"})
      if (!e.contains(field)) throw ParseError(std::string("edge missing field: ") + field);
    std::string id = e.at("id").get<std::string>();
    if (!valid_name(id)) throw ParseError("invalid edge id: " + id);
    if (doc.edge_index.count(id)) throw ParseError("duplicate edge id: " + id);
    std::string tail = e.at("tail").get<std::string>();
    std::string head = e.at("head").get<std::string>();
    if (!doc.vertex_index.count(tail)) throw ParseError("unknown vertex: " + tail);
    if (!doc.vertex_index.count(head)) throw ParseError("unknown vertex: " + head);
    GainVec gain = gain_from_json(e.at("gain"), doc.k);
    int ti = doc.vertex_index[tail], hi = doc.vertex_index[head];
    int eid;
    try {
      eid = doc.graph.add_edge(ti, hi, gain);
    } catch (const std::invalid_argument& ex) {
      throw ParseError(std::string("edge ") + id + ": " + ex.what());
    }
    if (eid != static_cast<int>(doc.edge_names.size()))
      throw ParseError("internal edge id mismatch");
    doc.edge_index[id] = eid;
    doc.edge_names.push_back(id);
    doc.edge_ends.emplace_back(tail, head);
    doc.edge_gains.push_back(gain);
    const GainEdge& stored = doc.graph.edge(eid);
    doc.flipped.push_back(!(stored.tail == ti && stored.head == hi && stored.gain == gain));
  }
  return doc;
}

Json graph_document_to_json(const GraphDocument& doc) {
  Json j;
  j["k"] = doc.k;
  j["vertices"] = Json::array();
  for (const auto& v : doc.vertex_names) j["vertices"].push_back(v);
  j["edges"] = Json::array();
  for (size_t e = 0; e < doc.edge_names.size(); ++e) {
    Json je;
    je["id"] = doc.edge_names[e];
    je["tail"] = doc.edge_ends[e].first;
    je["head"] = doc.edge_ends[e].second;
    je["gain"] = gain_to_json(doc.edge_gains[e]);
    j["edges"].push_back(std::move(je));
  }
  return j;
}

GraphDocument parse_graph_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("invalid JSON: ") + ex.what());
  }
  return graph_document_from_json(j);
}

std::string serialize_graph_document(const GraphDocument& doc) {
  return graph_document_to_json(doc).dump(2) + "\n";
}

static Colouring colouring_from_json_impl(const GraphDocument& doc, const Json& j);

Colouring colouring_from_json(const GraphDocument& doc, const Json& j) {
  return translating_json_errors([&] { return colouring_from_json_impl(doc, j); });
}

static Colouring colouring_from_json_impl(const GraphDocument& doc, const Json& j) {
  if (!j.is_object() || !j.contains("red") || !j.contains("blue"))
    throw ParseError("colouring must carry red and blue edge lists");
  Colouring delta(doc.graph.edge_count(), Colour::Red);
  std::vector<bool> seen(doc.graph.edge_count(), false);
  auto apply = [&](const Json& arr, Colour c) {
    if (!arr.is_array()) throw ParseError("colour list must be an array");
    for (const auto& item : arr) {
      std::string id = item.get<std::string>();
      auto it = doc.edge_index.find(id);
      if (it == doc.edge_index.end()) throw ParseError("unknown edge id: " + id);
      if (seen[it->second]) throw ParseError("edge coloured twice: " + id);
      seen[it->second] = true;
      delta[it->second] = c;
    }
  };
  apply(j.at("red"), Colour::Red);
  apply(j.at("blue"), Colour::Blue);
  for (int e = 0; e < doc.graph.edge_count(); ++e)
    if (!seen[e]) throw ParseError("edge not coloured: " + doc.edge_names[e]);
  return delta;
}

Json colouring_to_json(const GraphDocument& doc, const Colouring& delta) {
  Json j;
  j["red"] = Json::array();
  j["blue"] = Json::array();
  for (int e = 0; e < doc.graph.edge_count(); ++e)
    j[delta[e] == Colour::Red ? "red" : "blue"].push_back(doc.edge_names[e]);
  return j;
}

// ---------------------------------------------------------------------------
// Flex documents

namespace {

Json sigma_to_json(const std::vector<IVec2>& sigma, int k) {
  Json out = Json::array();
  for (const auto& s : sigma) out.push_back(ivec_to_json(s, k));
  return out;
}

std::vector<IVec2> sigma_from_json(const Json& j, int k, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) throw ParseError("bad sigma table");
  std::vector<IVec2> out(n);
  for (int i = 0; i < n; ++i) out[i] = ivec_from_json(j[i], k);
  return out;
}

Json i64s_to_json(const std::vector<long long>& v) {
  Json out = Json::array();
  for (long long x : v) out.push_back(x);
  return out;
}

std::vector<long long> i64s_from_json(const Json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) throw ParseError("bad integer table");
  std::vector<long long> out(n);
  for (int i = 0; i < n; ++i) out[i] = i64_from_json(j[i]);
  return out;
}

Json ivecs_to_json(const std::vector<IVec2>& v, int k) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(ivec_to_json(x, k));
  return out;
}

std::vector<IVec2> ivecs_from_json(const Json& j, int k, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) throw ParseError("bad vector table");
  std::vector<IVec2> out(n);
  for (int i = 0; i < n; ++i) out[i] = ivec_from_json(j[i], k);
  return out;
}

Json flex_params_to_json(const ParametricFlex& f);

Json flex_to_json(const ParametricFlex& f) {
  Json j;
  j["kind"] = flex_kind_name(f.kind);
  j["domain"] = Json::array({f.t0, f.t1});
  j["parameters"] = flex_params_to_json(f);
  return j;
}

Json flex_params_to_json(const ParametricFlex& f) {
  Json p;
  if (const auto* s = std::get_if<ShearParams>(&f.params)) {
    p["x"] = i64s_to_json(s->x);
    p["y"] = i64s_to_json(s->y);
    p["c1"] = s->c1;
    if (f.k == 2) p["c2"] = s->c2;
    p["sigma"] = sigma_to_json(f.sigma, f.k);
  } else if (const auto* s = std::get_if<RotationParams>(&f.params)) {
    p["p0"] = ivecs_to_json(s->p0, 2);
    p["c1"] = s->c1;
    if (f.k == 2) p["c2"] = s->c2;
    p["sigma"] = sigma_to_json(f.sigma, f.k);
  } else if (const auto* s = std::get_if<Grid1Params>(&f.params)) {
    p["row"] = i64s_to_json(s->row);
    p["q"] = i64s_to_json(s->q);
    p["sigma"] = sigma_to_json(f.sigma, f.k);
  } else if (const auto* s = std::get_if<Type1Params>(&f.params)) {
    p["pos"] = ivecs_to_json(s->pos, 2);
    p["sigma"] = sigma_to_json(f.sigma, f.k);
  } else if (const auto* s = std::get_if<Type2Params>(&f.params)) {
    p["alpha"] = ivec_to_json(s->alpha, 2);
    p["beta"] = ivec_to_json(s->beta, 2);
    p["row"] = i64s_to_json(s->row);
    p["q_num"] = i64s_to_json(s->q_num);
    p["q_den"] = s->q_den;
    p["sigma"] = sigma_to_json(f.sigma, f.k);
  } else if (const auto* s = std::get_if<ScaleParams>(&f.params)) {
    p["alpha"] = ivec_to_json(s->alpha, 2);
    p["beta"] = ivec_to_json(s->beta, 2);
    p["p0"] = ivecs_to_json(s->p0, 2);
    p["c1"] = s->c1;
    p["c2"] = s->c2;
    p["sigma"] = sigma_to_json(f.sigma, f.k);
  } else {
    const auto& h = std::get<HennebergParams>(f.params);
    p["v1"] = h.v1;
    p["gamma"] = ivec_to_json(h.gamma, f.k);
    p["r"] = h.r;
    p["inner"] = flex_to_json(*h.inner);
  }
  return p;
}

ParametricFlex flex_from_json(const Json& j, int k, int nverts) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("parameters") || !j.contains("domain"))
    throw ParseError("flex must carry kind, domain and parameters");
  auto kind = flex_kind_from_name(j.at("kind").get<std::string>());
  if (!kind) throw ParseError("unknown flex kind: " + j.at("kind").get<std::string>());
  const Json& dom = j.at("domain");
  if (!dom.is_array() || dom.size() != 2) throw ParseError("bad domain");

  ParametricFlex f;
  f.kind = *kind;
  f.k = k;
  f.nverts = nverts;
  f.t0 = num_from_json(dom[0]);
  f.t1 = num_from_json(dom[1]);
  const Json& p = j.at("parameters");
  if (!p.is_object()) throw ParseError("parameters must be an object");
  auto need = [&](const char* field) -> const Json& {
    if (!p.contains(field)) throw ParseError(std::string("missing parameter: ") + field);
    return p.at(field);
  };
  switch (*kind) {
    case FlexKind::FixedLatticeShear: {
      ShearParams s;
      s.x = i64s_from_json(need("x"), nverts);
      s.y = i64s_from_json(need("y"), nverts);
      s.c1 = num_from_json(need("c1"));
      s.c2 = k == 2 ? num_from_json(need("c2")) : 0.0;
      f.sigma = sigma_from_json(need("sigma"), k, nverts);
      f.params = std::move(s);
      break;
    }
    case FlexKind::BalancedRotation: {
      RotationParams s;
      s.p0 = ivecs_from_json(need("p0"), 2, nverts);
      s.c1 = num_from_json(need("c1"));
      s.c2 = k == 2 ? num_from_json(need("c2")) : 0.0;
      f.sigma = sigma_from_json(need("sigma"), k, nverts);
      f.params = std::move(s);
      break;
    }
    case FlexKind::OnePeriodicGrid: {
      Grid1Params s;
      s.row = i64s_from_json(need("row"), nverts);
      s.q = i64s_from_json(need("q"), nverts);
      f.sigma = sigma_from_json(need("sigma"), k, nverts);
      f.params = std::move(s);
      break;
    }
    case FlexKind::Type1Grid: {
      Type1Params s;
      s.pos = ivecs_from_json(need("pos"), 2, nverts);
      f.sigma = sigma_from_json(need("sigma"), k, nverts);
      f.params = std::move(s);
      break;
    }
    case FlexKind::Type2Scissor: {
      Type2Params s;
      s.alpha = ivec_from_json(need("alpha"), 2);
      s.beta = ivec_from_json(need("beta"), 2);
      s.row = i64s_from_json(need("row"), nverts);
      s.q_num = i64s_from_json(need("q_num"), nverts);
      s.q_den = i64_from_json(need("q_den"));
      if (s.q_den == 0) throw ParseError("q_den must be nonzero");
      if (s.alpha[0] * s.beta[1] - s.alpha[1] * s.beta[0] != s.q_den)
        throw ParseError("q_den must equal the alpha/beta determinant");
      f.sigma = sigma_from_json(need("sigma"), k, nverts);
      f.params = std::move(s);
      break;
    }
    case FlexKind::RankDeficientScale: {
      ScaleParams s;
      s.alpha = ivec_from_json(need("alpha"), 2);
      s.beta = ivec_from_json(need("beta"), 2);
      s.p0 = ivecs_from_json(need("p0"), 2, nverts);
      s.c1 = num_from_json(need("c1"));
      s.c2 = num_from_json(need("c2"));
      f.sigma = sigma_from_json(need("sigma"), k, nverts);
      f.params = std::move(s);
      break;
    }
    case FlexKind::HennebergCircle: {
      if (nverts < 1) throw ParseError("extension needs at least one vertex");
      HennebergParams h;
      h.v1 = need("v1").get<int>();
      if (h.v1 < 0 || h.v1 >= nverts - 1) throw ParseError("v1 out of range");
      h.gamma = ivec_from_json(need("gamma"), k);
      h.r = num_from_json(need("r"));
      auto inner = std::make_shared<ParametricFlex>(flex_from_json(need("inner"), k, nverts - 1));
      h.inner = std::move(inner);
      f.sigma.assign(nverts, IVec2{0, 0});
      f.params = std::move(h);
      break;
    }
  }
  return f;
}

}  // namespace

Json flex_document_to_json(const FlexDocument& doc) {
  Json j;
  j["graph"] = graph_document_to_json(doc.graph);
  if (doc.colouring) j["colouring"] = colouring_to_json(doc.graph, *doc.colouring);
  Json fj = flex_to_json(doc.flex);
  j["kind"] = fj["kind"];
  j["domain"] = fj["domain"];
  j["parameters"] = fj["parameters"];
  PlacementLattice base = doc.flex.base();
  Json bj;
  bj["p"] = Json::array();
  for (const auto& pt : base.p) bj["p"].push_back(Json::array({pt[0], pt[1]}));
  bj["L"] = Json::array();
  for (int col = 0; col < doc.graph.k; ++col)
    bj["L"].push_back(Json::array({base.L[col][0], base.L[col][1]}));
  j["base"] = std::move(bj);
  return j;
}

static FlexDocument flex_document_from_json_impl(const Json& j);

FlexDocument flex_document_from_json(const Json& j) {
  return translating_json_errors([&]() -> FlexDocument {
    return flex_document_from_json_impl(j);
  });
}

static FlexDocument flex_document_from_json_impl(const Json& j) {
  if (!j.is_object() || !j.contains("graph")) throw ParseError("flex document missing graph");
  GraphDocument gdoc = graph_document_from_json(j.at("graph"));
  std::optional<Colouring> col;
  if (j.contains("colouring")) col = colouring_from_json(gdoc, j.at("colouring"));
  ParametricFlex flex = flex_from_json(j, gdoc.k, gdoc.graph.vertex_count());
  return FlexDocument{std::move(gdoc), std::move(col), std::move(flex)};
}

FlexDocument parse_flex_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("invalid JSON: ") + ex.what());
  }
  return flex_document_from_json(j);
}

std::string serialize_flex_document(const FlexDocument& doc) {
  return flex_document_to_json(doc).dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Reports

Json walk_to_json(const GraphDocument& doc, const Walk& walk) {
  Json out = Json::array();
  for (const WalkStep& s : walk) {
    Json step;
    step["edge"] = doc.edge_names[s.edge];
    bool doc_forward = doc.flipped[s.edge] ? !s.forward : s.forward;
    step["dir"] = doc_forward ? 1 : -1;
    out.push_back(std::move(step));
  }
  return out;
}

namespace {

Json almost_witness_to_json(const GraphDocument& doc, const AlmostWitness& w) {
  Json j;
  j["opposite_edge"] = doc.edge_names[w.opposite_edge];
  j["gain"] = gain_to_json(w.gain);
  j["circuit"] = walk_to_json(doc, w.walk);
  return j;
}

Json flag_to_json(const GraphDocument& doc, const FlagResult& f) {
  Json j;
  j["ok"] = f.ok;
  if (!f.ok) {
    j["reason"] = f.reason;
    if (!f.almost_witnesses.empty()) {
      j["almost_circuits"] = Json::array();
      for (const auto& w : f.almost_witnesses)
        j["almost_circuits"].push_back(almost_witness_to_json(doc, w));
    }
    if (!f.mono_witnesses.empty()) {
      j["mono_circuits"] = Json::array();
      for (const auto& [walk, gain] : f.mono_witnesses) {
        Json m;
        m["gain"] = gain_to_json(gain);
        m["circuit"] = walk_to_json(doc, walk);
        j["mono_circuits"].push_back(std::move(m));
      }
    }
  }
  return j;
}

Json subgroup_to_json(const Subgroup& s) {
  Json j = Json::array();
  for (const auto& r : s.rows) j.push_back(gain_to_json(r));
  return j;
}

}  // namespace

Json classification_to_json(const GraphDocument& doc, const Classification& cls) {
  Json j;
  j["surjective"] = cls.surjective;
  j["nbac"] = flag_to_json(doc, cls.nbac);
  j["fixed_lattice"] = flag_to_json(doc, cls.fixed_lattice);
  if (cls.k == 1) {
    j["flexible_1_lattice"] = flag_to_json(doc, cls.flexible_1_lattice);
  } else {
    j["type1"] = flag_to_json(doc, cls.type1);
    j["type2"] = flag_to_json(doc, cls.type2);
    j["type3"] = flag_to_json(doc, cls.type3);
    if (cls.type2.ok) {
      j["type2"]["alpha"] = gain_to_json(cls.type2_alpha);
      j["type2"]["beta"] = gain_to_json(cls.type2_beta);
    }
    if (cls.type3.ok) j["type3"]["alpha"] = gain_to_json(cls.type3_alpha);
  }
  j["span_red"] = subgroup_to_json(cls.span_red);
  j["span_blue"] = subgroup_to_json(cls.span_blue);
  return j;
}

Json decision_to_json(const GraphDocument& doc, const Decision& d) {
  Json j;
  j["verdict"] = verdict_name(d.verdict);
  j["recipe"] = recipe_name(d.recipe);
  j["note"] = d.note;
  if (d.witness_colouring) j["colouring"] = colouring_to_json(doc, *d.witness_colouring);
  if (d.witness_class) j["classification"] = classification_to_json(doc, *d.witness_class);
  return j;
}

Json flex_report_to_json(const FlexReport& rep) {
  Json j;
  j["max_edge_residual"] = rep.max_edge_residual;
  j["min_separation"] = rep.min_separation;
  j["gram"] = Json::array();
  for (const auto& g : rep.gram) {
    Json e;
    e["i"] = g.i;
    e["j"] = g.j;
    e["lo"] = g.lo;
    e["hi"] = g.hi;
    j["gram"].push_back(std::move(e));
  }
  j["nontrivial"] = Json{{"ok", rep.nontrivial.nontrivial},
                         {"witness", rep.nontrivial.witness},
                         {"range", rep.nontrivial.range}};
  j["scissor"] = Json{{"ok", rep.scissor.scissor},
                      {"alpha", rep.scissor.scissor ? gain_to_json(rep.scissor.alpha) : Json()},
                      {"beta", rep.scissor.scissor ? gain_to_json(rep.scissor.beta) : Json()},
                      {"range", rep.scissor.offdiag_range}};
  j["samples"] = rep.samples;
  j["tolerance"] = rep.tolerance;
  return j;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string sample_csv(const FlexDocument& doc, double t0, double t1, int steps) {
  if (steps < 2) throw std::invalid_argument("steps must be >= 2");
  std::ostringstream out;
  out << "t";
  for (const auto& v : doc.graph.vertex_names) out << ",x_" << v << ",y_" << v;
  out << ",L11,L21";
  if (doc.graph.k == 2) out << ",L12,L22";
  out << "\n";
  for (int i = 0; i < steps; ++i) {
    double t = t0 + (t1 - t0) * i / (steps - 1);
    PlacementLattice pl = doc.flex.sample(t);
    out << format_double(t);
    for (const auto& pt : pl.p) out << "," << format_double(pt[0]) << "," << format_double(pt[1]);
    out << "," << format_double(pl.L[0][0]) << "," << format_double(pl.L[0][1]);
    if (doc.graph.k == 2)
      out << "," << format_double(pl.L[1][0]) << "," << format_double(pl.L[1][1]);
    out << "\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace periflex
