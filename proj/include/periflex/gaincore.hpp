#pragma once

#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "periflex/intlattice.hpp"

namespace periflex {

// Canonical stored edge: tail <= head, and loops carry a lex-positive gain.
// (v, w, g) and (w, v, -g) denote the same edge; the stored orientation only
// fixes the sign convention. Edge ids are positional and survive switching.
struct GainEdge {
  int tail = 0;
  int head = 0;
  GainVec gain;
};

class GainGraph {
 public:
  GainGraph() : GainGraph(1, 0) {}
  GainGraph(int k, int vertex_count);

  int k() const { return k_; }
  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<GainEdge>& edges() const { return edges_; }
  const GainEdge& edge(int e) const { return edges_.at(e); }

  // Canonicalizes, rejects (v,v,0) and duplicate edges (edge sets, not multisets
  // of identical triples). Returns the new edge id.
  int add_edge(int tail, int head, GainVec gain);

  bool has_loop() const;
  GainVec traversal_gain(int e, bool forward) const;

 private:
  int k_;
  int n_;
  std::vector<GainEdge> edges_;
  std::set<std::tuple<int, int, GainVec>> canon_;
};

struct WalkStep {
  int edge = 0;
  bool forward = true;  // true: tail -> head
};
using Walk = std::vector<WalkStep>;

// Ordered list of (vertex, gain) switches; they commute, so order is cosmetic.
using SwitchingSequence = std::vector<std::pair<int, GainVec>>;

GainGraph switch_vertex(const GainGraph& g, int u, const GainVec& mu);
GainGraph apply_switching(const GainGraph& g, const SwitchingSequence& seq);
SwitchingSequence inverse_switching(const SwitchingSequence& seq);

// Gain-equivalent graph in which a BFS spanning forest (from the lowest vertex
// id of each component) has all-zero gains, plus the switching realizing it.
std::pair<GainGraph, SwitchingSequence> spanning_tree_normalize(const GainGraph& g);

// Signed gain sum along a closed connected walk. Throws if the steps do not
// chain head-to-tail or the walk does not close up.
GainVec circuit_gain(const GainGraph& g, const Walk& walk);

struct Components {
  std::vector<int> comp_of;               // per vertex
  std::vector<std::vector<int>> members;  // per component, sorted
  int count() const { return static_cast<int>(members.size()); }
};
Components components(const GainGraph& g);
Components components_of_edges(const GainGraph& g, const std::vector<int>& edge_subset);

// Subgroup generated by the circuit gains of the subgraph spanned by the given
// edges. The subgraph must be connected (split on components first otherwise).
Subgroup span_subgroup(const GainGraph& g, const std::vector<int>& edge_subset);

struct SpanWithWitnesses {
  Subgroup span;
  std::vector<Walk> row_witnesses;  // closed walk realizing each basis row
};
SpanWithWitnesses span_subgroup_with_witnesses(const GainGraph& g,
                                               const std::vector<int>& edge_subset);

// Subgroup generated by all circuit gains across every component.
Subgroup span_joint(const GainGraph& g);
bool is_balanced(const GainGraph& g);
int graph_rank(const GainGraph& g);

// Adds a fresh vertex v0 with edges (v0,v1,g1), (v0,v2,g2). Rejects the
// degenerate case where the two new edges would coincide.
GainGraph henneberg1_extend(const GainGraph& g, int v1, int v2, const GainVec& g1,
                            const GainVec& g2);

}  // namespace periflex
