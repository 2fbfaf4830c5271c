#include <CLI11.hpp>
#include <clocale>
#include <iostream>
#include <random>

#include "periflex/io.hpp"

namespace {

using namespace periflex;

constexpr int kExitFlexible = 0;
constexpr int kExitNotFlexible = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitLimit = 3;
constexpr int kExitTrivial = 4;
constexpr int kExitDiscrepancy = 5;
constexpr int kExitInput = 64;

GraphDocument load_graph(const std::string& path) {
  return parse_graph_document(read_file(path));
}

// Subgraph document induced by one connected component (for per-component reports).
GraphDocument component_document(const GraphDocument& doc, const Components& comps, int cid) {
  Json j;
  j["k"] = doc.k;
  j["vertices"] = Json::array();
  for (int v : comps.members[cid]) j["vertices"].push_back(doc.vertex_names[v]);
  j["edges"] = Json::array();
  for (int e = 0; e < doc.graph.edge_count(); ++e) {
    if (comps.comp_of[doc.graph.edge(e).tail] != cid) continue;
    Json je;
    je["id"] = doc.edge_names[e];
    je["tail"] = doc.edge_ends[e].first;
    je["head"] = doc.edge_ends[e].second;
    je["gain"] = gain_to_json(doc.edge_gains[e]);
    j["edges"].push_back(std::move(je));
  }
  return graph_document_from_json(j);
}

int exit_for_verdict(Verdict v) {
  switch (v) {
    case Verdict::Flexible: return kExitFlexible;
    case Verdict::NotFlexible: return kExitNotFlexible;
    case Verdict::Unknown: return kExitUnknown;
  }
  return kExitUnknown;
}

int cmd_analyze(const std::string& graph_path, const std::string& mode_name) {
  auto mode = mode_from_name(mode_name);
  if (!mode) {
    std::cerr << "unknown mode: " << mode_name << "\n";
    return kExitInput;
  }
  GraphDocument doc = load_graph(graph_path);
  if ((*mode == Mode::FlexibleLattice1 && doc.k != 1) ||
      (*mode == Mode::FlexibleLattice2 && doc.k != 2)) {
    std::cerr << "mode " << mode_name << " does not match k=" << doc.k << "\n";
    return kExitInput;
  }

  Components comps = components(doc.graph);
  Json rep;
  rep["k"] = doc.k;
  rep["mode"] = mode_name;
  rep["connected"] = comps.count() <= 1;
  rep["rank"] = graph_rank(doc.graph);
  rep["balanced"] = is_balanced(doc.graph);

  if (comps.count() > 1) {
    // The theorems require connectivity; components of a disconnected graph can
    // translate independently, so the framework itself is always flexible.
    rep["verdict"] = "Flexible";
    rep["note"] = "disconnected: components move independently; per-component reports follow";
    rep["components"] = Json::array();
    for (int c = 0; c < comps.count(); ++c) {
      GraphDocument sub = component_document(doc, comps, c);
      Decision d = decide(sub.graph, *mode);
      Json cj = decision_to_json(sub, d);
      cj["vertices"] = Json::array();
      for (int v : comps.members[c]) cj["vertices"].push_back(doc.vertex_names[v]);
      rep["components"].push_back(std::move(cj));
    }
    std::cout << rep.dump(2) << "\n";
    return kExitFlexible;
  }

  Decision d = decide(doc.graph, *mode);
  Json dj = decision_to_json(doc, d);
  for (auto& [key, value] : dj.items()) rep[key] = value;
  std::cout << rep.dump(2) << "\n";
  return exit_for_verdict(d.verdict);
}

int cmd_colourings(const std::string& graph_path, const std::string& cls_name,
                   std::uint64_t limit, int jobs) {
  auto cls = colour_class_from_name(cls_name);
  if (!cls) {
    std::cerr << "unknown class: " << cls_name << "\n";
    return kExitInput;
  }
  GraphDocument doc = load_graph(graph_path);
  bool k2_class = *cls == ColourClass::Type1 || *cls == ColourClass::Type2 ||
                  *cls == ColourClass::Type3;
  if ((*cls == ColourClass::Flexible1Lattice && doc.k != 1) || (k2_class && doc.k != 2)) {
    std::cerr << "class " << cls_name << " does not match k=" << doc.k << "\n";
    return kExitInput;
  }
  EnumStats stats = enumerate_colourings(
      doc.graph, *cls, limit,
      [&](const Colouring& col, const Classification& c) {
        Json line;
        line["colouring"] = colouring_to_json(doc, col);
        line["classification"] = classification_to_json(doc, c);
        std::cout << line.dump() << "\n";
        return true;
      },
      jobs);
  if (!stats.complete) {
    std::cerr << "limit reached before search complete\n";
    return kExitLimit;
  }
  return stats.emitted > 0 ? 0 : kExitNotFlexible;
}

int cmd_construct(const std::string& graph_path, const std::string& colouring_path, bool auto_pick,
                  const std::string& out_path) {
  GraphDocument doc = load_graph(graph_path);
  BuildOutcome build;
  if (auto_pick) {
    AutoOutcome out = construct_auto(doc.graph);
    if (out.status == AutoOutcome::OnlyType3) {
      std::cerr << "only type 3 colourings found; no construction is known for this class\n";
      return kExitUnknown;
    }
    if (out.status == AutoOutcome::Nothing) {
      std::cerr << "nothing qualifies: no constructible colouring or graph property\n";
      return kExitNotFlexible;
    }
    build = std::move(*out.build);
  } else {
    Colouring delta;
    try {
      delta = colouring_from_json(doc, Json::parse(read_file(colouring_path)));
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(std::string("invalid colouring JSON: ") + ex.what());
    }
    Classification cls = classify(doc.graph, delta);
    if (!cls.constructible()) {
      if (cls.type3.ok) {
        std::cerr << "colouring is type 3 only; no construction is known for this class\n";
        return kExitUnknown;
      }
      std::cerr << "colouring does not classify into a constructible class\n";
      return kExitNotFlexible;
    }
    build = construct_for_colouring(doc.graph, delta);
  }

  FlexDocument fdoc{doc, build.colouring, build.result.flex};
  write_file(out_path, serialize_flex_document(fdoc));

  FlexReport rep = verify_flex(build.result.graph, FlexPath::of(build.result.flex), 64, 1e-9);
  Json summary;
  summary["recipe"] = recipe_name(build.recipe);
  summary["output"] = out_path;
  summary["verification"] = flex_report_to_json(rep);
  std::cout << summary.dump(2) << "\n";
  return kExitFlexible;
}

int cmd_sample(const std::string& flex_path, double t0, double t1, bool have_t0, bool have_t1,
               int steps, const std::string& out_path) {
  FlexDocument doc = parse_flex_document(read_file(flex_path));
  if (!have_t0) t0 = doc.flex.t0;
  if (!have_t1) t1 = doc.flex.t1;
  std::string csv = sample_csv(doc, t0, t1, steps);
  if (out_path.empty())
    std::cout << csv;
  else
    write_file(out_path, csv);
  return 0;
}

int cmd_verify(const std::string& flex_path, int samples, double tol) {
  FlexDocument doc = parse_flex_document(read_file(flex_path));
  FlexReport rep = verify_flex(doc.graph.graph, FlexPath::of(doc.flex), samples, tol);
  std::cout << flex_report_to_json(rep).dump(2) << "\n";
  if (rep.max_edge_residual >= tol) {
    std::cerr << "edge residual above tolerance\n";
    return kExitNotFlexible;
  }
  if (!rep.nontrivial.nontrivial) {
    std::cerr << "flex is trivial on the probe set\n";
    return kExitTrivial;
  }
  return 0;
}

// Cross-checks the coset-based almost-circuit checks against the bounded-walk
// oracle over colourings of the input graph.
int cmd_oracle(const std::string& graph_path, int trials, unsigned seed) {
  GraphDocument doc = load_graph(graph_path);
  const GainGraph& g = doc.graph;
  if (g.edge_count() > 12) {
    std::cerr << "oracle cross-check supports at most 12 edges\n";
    return kExitInput;
  }

  std::mt19937_64 rng(seed);
  std::vector<Colouring> colourings;
  std::uint64_t space = 1ull << g.edge_count();
  if (space <= 4096) {
    for (std::uint64_t mask = 0; mask < space; ++mask) {
      Colouring col(g.edge_count());
      for (int e = 0; e < g.edge_count(); ++e)
        col[e] = (mask >> e) & 1 ? Colour::Blue : Colour::Red;
      colourings.push_back(std::move(col));
    }
  } else {
    for (int t = 0; t < trials; ++t) {
      Colouring col(g.edge_count());
      for (int e = 0; e < g.edge_count(); ++e)
        col[e] = rng() & 1 ? Colour::Blue : Colour::Red;
      colourings.push_back(std::move(col));
    }
  }

  std::vector<GainVec> alphas;
  alphas.push_back(GainVec::zero(g.k()));
  if (g.k() == 1) {
    alphas.push_back(GainVec(Int(1)));
    alphas.push_back(GainVec(Int(2)));
  } else {
    alphas.push_back(GainVec(Int(1), Int(0)));
    alphas.push_back(GainVec(Int(0), Int(1)));
    alphas.push_back(GainVec(Int(1), Int(1)));
  }

  auto verify_witness = [&](const Colouring& col, Colour colour, const AlmostWitness& w,
                            OracleCondition cond, const GainVec& alpha) -> bool {
    int opposite = 0;
    for (const WalkStep& s : w.walk)
      if (col[s.edge] != colour) ++opposite;
    if (opposite != 1) return false;
    GainVec total = circuit_gain(g, w.walk);
    if (total != w.gain) return false;
    switch (cond) {
      case OracleCondition::Balanced: return total.is_zero();
      case OracleCondition::AnyGain: return true;
      case OracleCondition::InLine: return contains(hnf(g.k(), {alpha}), total);
    }
    return false;
  };

  std::uint64_t checks = 0;
  for (const Colouring& col : colourings) {
    for (Colour colour : {Colour::Red, Colour::Blue}) {
      struct Case {
        OracleCondition cond;
        GainVec alpha;
      };
      std::vector<Case> cases;
      cases.push_back({OracleCondition::Balanced, GainVec::zero(g.k())});
      cases.push_back({OracleCondition::AnyGain, GainVec::zero(g.k())});
      for (const auto& a : alphas) cases.push_back({OracleCondition::InLine, a});
      for (const auto& c : cases) {
        std::optional<AlmostWitness> impl;
        switch (c.cond) {
          case OracleCondition::Balanced: impl = balanced_almost_circuit(g, col, colour); break;
          case OracleCondition::AnyGain: impl = almost_circuit_any_gain(g, col, colour); break;
          case OracleCondition::InLine:
            impl = almost_circuit_gain_in_line(g, col, colour, c.alpha);
            break;
        }
        OracleResult oracle = bounded_walk_oracle(g, col, colour, c.cond, c.alpha, 3);
        ++checks;
        bool bad = false;
        std::string what;
        if (oracle.found && !impl) {
          bad = true;
          what = "oracle found a circuit the coset check missed";
        } else if (impl && !verify_witness(col, colour, *impl, c.cond, c.alpha)) {
          bad = true;
          what = "implementation witness failed direct verification";
        }
        if (bad) {
          Json dump;
          dump["discrepancy"] = what;
          dump["colouring"] = colouring_to_json(doc, col);
          dump["colour"] = colour_name(colour);
          dump["condition"] = c.cond == OracleCondition::Balanced  ? "balanced"
                              : c.cond == OracleCondition::AnyGain ? "any"
                                                                   : "line";
          dump["alpha"] = gain_to_json(c.alpha);
          std::cout << dump.dump(2) << "\n";
          return kExitDiscrepancy;
        }
      }
    }
  }
  Json ok;
  ok["checks"] = checks;
  ok["colourings"] = colourings.size();
  ok["discrepancies"] = 0;
  std::cout << ok.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_NUMERIC, "C");
  CLI::App app{"flexibility analysis of periodic gain graphs in the plane"};
  app.require_subcommand(1);

  std::string graph_path, colouring_path, out_path, mode_name = "fixed", cls_name = "nbac";
  std::string flex_path;
  std::uint64_t limit = 1000;
  int jobs = 1, steps = 64, samples = 64, trials = 500;
  unsigned seed = 42;
  double t0 = 0, t1 = 0, tol = 1e-9;
  bool auto_pick = false;

  auto* analyze = app.add_subcommand("analyze", "decide flexibility for a gain graph");
  analyze->add_option("graph", graph_path, "graph JSON file")->required();
  analyze->add_option("--mode", mode_name, "fixed | flex1 | flex2")->required();

  auto* colourings = app.add_subcommand("colourings", "enumerate classified colourings");
  colourings->add_option("graph", graph_path)->required();
  colourings->add_option("--class", cls_name, "nbac | fixed | flex1 | type1 | type2 | type3");
  colourings->add_option("--limit", limit);
  colourings->add_option("--jobs", jobs);

  auto* construct = app.add_subcommand("construct", "build a flexible placement-lattice");
  construct->add_option("graph", graph_path)->required();
  construct->add_option("colouring", colouring_path, "colouring JSON file");
  construct->add_flag("--auto", auto_pick, "pick the first constructible colouring");
  construct->add_option("-o,--output", out_path, "flex document output")->required();

  auto* sample = app.add_subcommand("sample", "sample a flex to CSV");
  sample->add_option("flex", flex_path)->required();
  auto* t0_opt = sample->add_option("--t0", t0);
  auto* t1_opt = sample->add_option("--t1", t1);
  sample->add_option("--steps", steps);
  sample->add_option("-o,--output", out_path, "CSV output (stdout if omitted)");

  auto* verify = app.add_subcommand("verify", "verify a flex document");
  verify->add_option("flex", flex_path)->required();
  verify->add_option("--samples", samples);
  verify->add_option("--tol", tol);

  auto* oracle = app.add_subcommand("oracle", "cross-check coset checks vs bounded walks");
  oracle->add_option("graph", graph_path)->required();
  oracle->add_option("--trials", trials);
  oracle->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(analyze)) return cmd_analyze(graph_path, mode_name);
    if (app.got_subcommand(colourings)) return cmd_colourings(graph_path, cls_name, limit, jobs);
    if (app.got_subcommand(construct)) {
      if (!auto_pick && colouring_path.empty()) {
        std::cerr << "need a colouring file or --auto\n";
        return kExitInput;
      }
      return cmd_construct(graph_path, colouring_path, auto_pick, out_path);
    }
    if (app.got_subcommand(sample))
      return cmd_sample(flex_path, t0, t1, t0_opt->count() > 0, t1_opt->count() > 0, steps,
                        out_path);
    if (app.got_subcommand(verify)) return cmd_verify(flex_path, samples, tol);
    if (app.got_subcommand(oracle)) return cmd_oracle(graph_path, trials, seed);
  } catch (const ParseError& ex) {
    std::cerr << "input error: " << ex.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "input error: " << ex.what() << "\n";
    return kExitInput;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 70;
  }
  return kExitInput;
}
