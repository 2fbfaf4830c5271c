#include "periflex/gaincore.hpp"

#include <algorithm>
#include <queue>

namespace periflex {

GainGraph::GainGraph(int k, int vertex_count) : k_(k), n_(vertex_count) {
  if (k != 1 && k != 2) throw std::invalid_argument("gain dimension must be 1 or 2");
  if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
}

int GainGraph::add_edge(int tail, int head, GainVec gain) {
  if (tail < 0 || tail >= n_ || head < 0 || head >= n_)
    throw std::invalid_argument("edge endpoint out of range");
  if (gain.k != k_) throw std::invalid_argument("gain dimension mismatch");
  if (tail > head) {
    std::swap(tail, head);
    gain = -gain;
  }
  if (tail == head) {
    if (gain.is_zero()) throw std::invalid_argument("loop with zero gain is not allowed");
    if (!gain.lex_positive()) gain = -gain;
  }
  auto key = std::make_tuple(tail, head, gain);
  if (!canon_.insert(key).second) throw std::invalid_argument("duplicate edge");
  edges_.push_back(GainEdge{tail, head, std::move(gain)});
  return static_cast<int>(edges_.size()) - 1;
}

bool GainGraph::has_loop() const {
  for (const auto& e : edges_)
    if (e.tail == e.head) return true;
  return false;
}

GainVec GainGraph::traversal_gain(int e, bool forward) const {
  const GainEdge& ed = edges_.at(e);
  return forward ? ed.gain : -ed.gain;
}

GainGraph switch_vertex(const GainGraph& g, int u, const GainVec& mu) {
  if (u < 0 || u >= g.vertex_count()) throw std::invalid_argument("unknown vertex");
  if (mu.k != g.k()) throw std::invalid_argument("gain dimension mismatch");
  GainGraph out(g.k(), g.vertex_count());
  for (const auto& e : g.edges()) {
    GainVec gain = e.gain;
    if (e.tail != e.head) {
      if (e.tail == u) gain += mu;
      if (e.head == u) gain -= mu;
    }
    out.add_edge(e.tail, e.head, std::move(gain));
  }
  return out;
}

GainGraph apply_switching(const GainGraph& g, const SwitchingSequence& seq) {
  // Switches commute; apply the net shift per vertex in one pass.
  std::vector<GainVec> net(g.vertex_count(), GainVec::zero(g.k()));
  for (const auto& [u, mu] : seq) {
    if (u < 0 || u >= g.vertex_count()) throw std::invalid_argument("unknown vertex");
    net[u] += mu;
  }
  GainGraph out(g.k(), g.vertex_count());
  for (const auto& e : g.edges()) {
    GainVec gain = e.gain;
    if (e.tail != e.head) gain += net[e.tail] - net[e.head];
    out.add_edge(e.tail, e.head, std::move(gain));
  }
  return out;
}

SwitchingSequence inverse_switching(const SwitchingSequence& seq) {
  SwitchingSequence inv;
  inv.reserve(seq.size());
  for (const auto& [u, mu] : seq) inv.emplace_back(u, -mu);
  return inv;
}

namespace {

struct Adjacency {
  // per vertex: (neighbor, edge id, forward) sorted for deterministic BFS
  std::vector<std::vector<std::tuple<int, int, bool>>> adj;
};

Adjacency build_adjacency(const GainGraph& g, const std::vector<int>& edge_subset) {
  Adjacency a;
  a.adj.resize(g.vertex_count());
  for (int e : edge_subset) {
    const GainEdge& ed = g.edge(e);
    if (ed.tail == ed.head) continue;  // loops never enter a tree
    a.adj[ed.tail].emplace_back(ed.head, e, true);
    a.adj[ed.head].emplace_back(ed.tail, e, false);
  }
  for (auto& v : a.adj) std::sort(v.begin(), v.end());
  return a;
}

std::vector<int> all_edge_ids(const GainGraph& g) {
  std::vector<int> ids(g.edge_count());
  for (int i = 0; i < g.edge_count(); ++i) ids[i] = i;
  return ids;
}

}  // namespace

Components components_of_edges(const GainGraph& g, const std::vector<int>& edge_subset) {
  Adjacency a = build_adjacency(g, edge_subset);
  Components c;
  c.comp_of.assign(g.vertex_count(), -1);
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (c.comp_of[s] != -1) continue;
    int id = c.count();
    c.members.push_back({});
    std::queue<int> q;
    q.push(s);
    c.comp_of[s] = id;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      c.members[id].push_back(v);
      for (const auto& [w, e, fwd] : a.adj[v]) {
        (void)e;
        (void)fwd;
        if (c.comp_of[w] == -1) {
          c.comp_of[w] = id;
          q.push(w);
        }
      }
    }
    std::sort(c.members[id].begin(), c.members[id].end());
  }
  return c;
}

Components components(const GainGraph& g) { return components_of_edges(g, all_edge_ids(g)); }

std::pair<GainGraph, SwitchingSequence> spanning_tree_normalize(const GainGraph& g) {
  Adjacency a = build_adjacency(g, all_edge_ids(g));
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<GainVec> phi(g.vertex_count(), GainVec::zero(g.k()));
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (seen[s]) continue;
    seen[s] = true;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const auto& [w, e, fwd] : a.adj[v]) {
        if (seen[w]) continue;
        seen[w] = true;
        phi[w] = phi[v] + g.traversal_gain(e, fwd);
        q.push(w);
      }
    }
  }
  SwitchingSequence seq;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!phi[v].is_zero()) seq.emplace_back(v, phi[v]);
  return {apply_switching(g, seq), seq};
}

GainVec circuit_gain(const GainGraph& g, const Walk& walk) {
  if (walk.empty()) throw std::invalid_argument("empty walk");
  GainVec total = GainVec::zero(g.k());
  int start = -1, at = -1;
  for (const WalkStep& s : walk) {
    const GainEdge& e = g.edge(s.edge);
    int from = s.forward ? e.tail : e.head;
    int to = s.forward ? e.head : e.tail;
    if (at == -1) {
      start = from;
    } else if (at != from) {
      throw std::invalid_argument("walk steps do not chain");
    }
    at = to;
    total += g.traversal_gain(s.edge, s.forward);
  }
  if (at != start) throw std::invalid_argument("walk is not closed");
  return total;
}

namespace {

struct ForestData {
  std::vector<int> parent;        // -1 for roots
  std::vector<int> parent_edge;   // edge id towards parent
  std::vector<bool> parent_fwd;   // orientation of parent_edge as parent -> v
  std::vector<GainVec> phi;       // tree gain from component root
  std::vector<bool> in_tree_edge; // per edge in subset
};

ForestData bfs_forest(const GainGraph& g, const std::vector<int>& edge_subset,
                      const Components& comps) {
  Adjacency a = build_adjacency(g, edge_subset);
  ForestData f;
  f.parent.assign(g.vertex_count(), -1);
  f.parent_edge.assign(g.vertex_count(), -1);
  f.parent_fwd.assign(g.vertex_count(), true);
  f.phi.assign(g.vertex_count(), GainVec::zero(g.k()));
  f.in_tree_edge.assign(g.edge_count(), false);
  std::vector<bool> seen(g.vertex_count(), false);
  for (const auto& comp : comps.members) {
    int root = comp.front();
    if (seen[root]) continue;
    seen[root] = true;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const auto& [w, e, fwd] : a.adj[v]) {
        if (seen[w]) continue;
        seen[w] = true;
        f.parent[w] = v;
        f.parent_edge[w] = e;
        f.parent_fwd[w] = fwd;
        f.phi[w] = f.phi[v] + g.traversal_gain(e, fwd);
        f.in_tree_edge[e] = true;
        q.push(w);
      }
    }
  }
  return f;
}

// Walk from `from` up to the root, i.e. tree path from -> root.
Walk path_to_root(const ForestData& f, int from) {
  Walk w;
  int v = from;
  while (f.parent[v] != -1) {
    w.push_back(WalkStep{f.parent_edge[v], !f.parent_fwd[v]});  // v -> parent
    v = f.parent[v];
  }
  return w;
}

Walk reversed(const Walk& w) {
  Walk r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(WalkStep{it->edge, !it->forward});
  return r;
}

}  // namespace

SpanWithWitnesses span_subgroup_with_witnesses(const GainGraph& g,
                                               const std::vector<int>& edge_subset) {
  // Vertex set of the subgraph: endpoints of the chosen edges.
  std::set<int> verts;
  for (int e : edge_subset) {
    verts.insert(g.edge(e).tail);
    verts.insert(g.edge(e).head);
  }
  Components comps = components_of_edges(g, edge_subset);
  if (!verts.empty()) {
    int c0 = comps.comp_of[*verts.begin()];
    for (int v : verts)
      if (comps.comp_of[v] != c0)
        throw std::invalid_argument("subgraph is disconnected; split on components first");
  }
  ForestData f = bfs_forest(g, edge_subset, comps);

  std::vector<GainVec> gens;
  std::vector<int> chord_edges;
  for (int e : edge_subset) {
    if (f.in_tree_edge[e]) continue;
    const GainEdge& ed = g.edge(e);
    gens.push_back(ed.gain + f.phi[ed.tail] - f.phi[ed.head]);
    chord_edges.push_back(e);
  }
  HnfWithTransform h = hnf_with_transform(g.k(), gens);

  SpanWithWitnesses out;
  out.span = h.sub;
  for (size_t i = 0; i < h.sub.rows.size(); ++i) {
    // Realize the row as a closed walk from the component root: for each chord
    // coefficient c, walk root->tail, chord, head->root, |c| times (reversed for c < 0).
    Walk w;
    for (size_t j = 0; j < h.combo[i].size(); ++j) {
      Int cnt = h.combo[i][j];
      if (cnt == 0) continue;
      int e = chord_edges[j];
      const GainEdge& ed = g.edge(e);
      Walk once;
      Walk root_to_tail = reversed(path_to_root(f, ed.tail));
      Walk head_to_root = path_to_root(f, ed.head);
      once.insert(once.end(), root_to_tail.begin(), root_to_tail.end());
      once.push_back(WalkStep{e, true});
      once.insert(once.end(), head_to_root.begin(), head_to_root.end());
      if (cnt < 0) {
        once = reversed(once);
        cnt = -cnt;
      }
      for (Int t = 0; t < cnt; ++t) w.insert(w.end(), once.begin(), once.end());
    }
    out.row_witnesses.push_back(std::move(w));
  }
  return out;
}

Subgroup span_subgroup(const GainGraph& g, const std::vector<int>& edge_subset) {
  return span_subgroup_with_witnesses(g, edge_subset).span;
}

Subgroup span_joint(const GainGraph& g) {
  Components comps = components(g);
  ForestData f = bfs_forest(g, all_edge_ids(g), comps);
  std::vector<GainVec> gens;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (f.in_tree_edge[e]) continue;
    const GainEdge& ed = g.edge(e);
    gens.push_back(ed.gain + f.phi[ed.tail] - f.phi[ed.head]);
  }
  return hnf(g.k(), gens);
}

bool is_balanced(const GainGraph& g) { return span_joint(g).is_trivial(); }

int graph_rank(const GainGraph& g) { return span_joint(g).rank(); }

GainGraph henneberg1_extend(const GainGraph& g, int v1, int v2, const GainVec& g1,
                            const GainVec& g2) {
  if (v1 < 0 || v1 >= g.vertex_count() || v2 < 0 || v2 >= g.vertex_count())
    throw std::invalid_argument("unknown vertex");
  if (v1 == v2 && g1 == g2) throw std::invalid_argument("the two new edges would coincide");
  GainGraph out(g.k(), g.vertex_count() + 1);
  for (const auto& e : g.edges()) out.add_edge(e.tail, e.head, e.gain);
  int v0 = g.vertex_count();
  out.add_edge(v0, v1, g1);
  out.add_edge(v0, v2, g2);
  return out;
}

}  // namespace periflex
