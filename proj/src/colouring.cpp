#include "periflex/colouring.hpp"

#include <algorithm>
#include <future>
#include <queue>

namespace periflex {

namespace {

std::vector<int> colour_edge_ids(const GainGraph& g, const Colouring& delta, Colour colour) {
  std::vector<int> ids;
  for (int e = 0; e < g.edge_count(); ++e)
    if (delta[e] == colour) ids.push_back(e);
  return ids;
}

void check_total(const GainGraph& g, const Colouring& delta) {
  if (static_cast<int>(delta.size()) != g.edge_count())
    throw std::invalid_argument("colouring is not total over the edge set");
}

}  // namespace

Coset ColourSystem::walk_coset(int a, int b) const {
  if (comps.comp_of[a] != comps.comp_of[b])
    throw std::invalid_argument("vertices lie in different colour components");
  const CompInfo& ci = info[comps.comp_of[a]];
  return make_coset(phi[b] - phi[a], ci.span);
}

ColourSystem build_walk_gain_system(const GainGraph& g, const Colouring& delta, Colour colour) {
  check_total(g, delta);
  std::vector<int> ids = colour_edge_ids(g, delta, colour);

  ColourSystem sys;
  sys.colour = colour;
  sys.comps = components_of_edges(g, ids);
  sys.phi.assign(g.vertex_count(), GainVec::zero(g.k()));
  sys.parent.assign(g.vertex_count(), -1);
  sys.parent_edge.assign(g.vertex_count(), -1);
  sys.parent_fwd.assign(g.vertex_count(), true);
  sys.info.resize(sys.comps.count());

  // deterministic adjacency
  std::vector<std::vector<std::tuple<int, int, bool>>> adj(g.vertex_count());
  for (int e : ids) {
    const GainEdge& ed = g.edge(e);
    if (ed.tail == ed.head) continue;
    adj[ed.tail].emplace_back(ed.head, e, true);
    adj[ed.head].emplace_back(ed.tail, e, false);
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());

  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<bool> in_tree(g.edge_count(), false);
  for (int c = 0; c < sys.comps.count(); ++c) {
    int root = sys.comps.members[c].front();
    seen[root] = true;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const auto& [w, e, fwd] : adj[v]) {
        if (seen[w]) continue;
        seen[w] = true;
        sys.parent[w] = v;
        sys.parent_edge[w] = e;
        sys.parent_fwd[w] = fwd;
        sys.phi[w] = sys.phi[v] + g.traversal_gain(e, fwd);
        in_tree[e] = true;
        q.push(w);
      }
    }
  }

  std::vector<std::vector<GainVec>> gens(sys.comps.count());
  std::vector<std::vector<int>> chords(sys.comps.count());
  for (int e : ids) {
    if (in_tree[e]) continue;
    const GainEdge& ed = g.edge(e);
    int c = sys.comps.comp_of[ed.tail];
    gens[c].push_back(ed.gain + sys.phi[ed.tail] - sys.phi[ed.head]);
    chords[c].push_back(e);
  }
  for (int c = 0; c < sys.comps.count(); ++c) {
    HnfWithTransform h = hnf_with_transform(g.k(), gens[c]);
    sys.info[c].span = std::move(h.sub);
    sys.info[c].combo = std::move(h.combo);
    sys.info[c].chord_edges = std::move(chords[c]);
  }
  return sys;
}

namespace {

Walk reversed_walk(const Walk& w) {
  Walk r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(WalkStep{it->edge, !it->forward});
  return r;
}

// Tree path from v up to its component root.
Walk path_to_root(const ColourSystem& sys, int v) {
  Walk w;
  while (sys.parent[v] != -1) {
    w.push_back(WalkStep{sys.parent_edge[v], !sys.parent_fwd[v]});
    v = sys.parent[v];
  }
  return w;
}

// Explicit circuit through the opposite edge e = (a,b,gain) with total gain
// `target`: e traversed a->b, tree path b->root, chord cycles, tree path
// root->a. Requires target - base in span.
AlmostWitness make_witness(const GainGraph& g, const ColourSystem& sys, int e,
                           const GainVec& target) {
  const GainEdge& ed = g.edge(e);
  int a = ed.tail, b = ed.head;
  const auto& ci = sys.info[sys.comps.comp_of[a]];
  GainVec need = target - ed.gain - sys.phi[a] + sys.phi[b];
  auto coeffs = solve_in_basis(ci.span, need);
  if (!coeffs) throw std::logic_error("witness target not realizable");

  std::vector<Int> chord_mult(ci.chord_edges.size(), Int(0));
  for (size_t i = 0; i < coeffs->size(); ++i)
    for (size_t j = 0; j < ci.combo[i].size(); ++j)
      chord_mult[j] += (*coeffs)[i] * ci.combo[i][j];

  AlmostWitness w;
  w.opposite_edge = e;
  w.walk.push_back(WalkStep{e, true});  // a -> b
  Walk b_up = path_to_root(sys, b);
  w.walk.insert(w.walk.end(), b_up.begin(), b_up.end());
  for (size_t j = 0; j < chord_mult.size(); ++j) {
    Int cnt = chord_mult[j];
    if (cnt == 0) continue;
    int ce = ci.chord_edges[j];
    const GainEdge& cd = g.edge(ce);
    Walk once;
    Walk to_tail = reversed_walk(path_to_root(sys, cd.tail));
    Walk from_head = path_to_root(sys, cd.head);
    once.insert(once.end(), to_tail.begin(), to_tail.end());
    once.push_back(WalkStep{ce, true});
    once.insert(once.end(), from_head.begin(), from_head.end());
    if (cnt < 0) {
      once = reversed_walk(once);
      cnt = -cnt;
    }
    for (Int t = 0; t < cnt; ++t) w.walk.insert(w.walk.end(), once.begin(), once.end());
  }
  Walk a_down = reversed_walk(path_to_root(sys, a));
  w.walk.insert(w.walk.end(), a_down.begin(), a_down.end());
  w.gain = circuit_gain(g, w.walk);
  if (w.gain != target) throw std::logic_error("witness gain mismatch");
  return w;
}

enum class LineCondition { Balanced, AnyGain, InLine };

struct AlmostHit {
  int opposite_edge = -1;
  GainVec target;
};

// Coset-level check without materializing the witness circuit.
std::optional<AlmostHit> almost_hit(const GainGraph& g, const Colouring& delta,
                                    const ColourSystem& sys, LineCondition cond,
                                    const GainVec& alpha) {
  Colour colour = sys.colour;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (delta[e] == colour) continue;
    const GainEdge& ed = g.edge(e);
    if (sys.comps.comp_of[ed.tail] != sys.comps.comp_of[ed.head]) continue;
    const auto& ci = sys.info[sys.comps.comp_of[ed.tail]];
    Coset gains = make_coset(ed.gain + sys.phi[ed.tail] - sys.phi[ed.head], ci.span);
    switch (cond) {
      case LineCondition::Balanced:
        if (coset_contains(gains, GainVec::zero(g.k())))
          return AlmostHit{e, GainVec::zero(g.k())};
        break;
      case LineCondition::AnyGain:
        return AlmostHit{e, gains.offset};
      case LineCondition::InLine: {
        auto c = coset_intersects_line(gains, alpha);
        if (c) return AlmostHit{e, *c * alpha};
        break;
      }
    }
  }
  return std::nullopt;
}

std::optional<AlmostWitness> almost_circuit_search(const GainGraph& g, const Colouring& delta,
                                                   Colour colour, LineCondition cond,
                                                   const GainVec& alpha) {
  check_total(g, delta);
  ColourSystem sys = build_walk_gain_system(g, delta, colour);
  auto hit = almost_hit(g, delta, sys, cond, alpha);
  if (!hit) return std::nullopt;
  return make_witness(g, sys, hit->opposite_edge, hit->target);
}

}  // namespace

std::optional<AlmostWitness> balanced_almost_circuit(const GainGraph& g, const Colouring& delta,
                                                     Colour colour) {
  return almost_circuit_search(g, delta, colour, LineCondition::Balanced, GainVec::zero(g.k()));
}

std::optional<AlmostWitness> almost_circuit_any_gain(const GainGraph& g, const Colouring& delta,
                                                     Colour colour) {
  return almost_circuit_search(g, delta, colour, LineCondition::AnyGain, GainVec::zero(g.k()));
}

std::optional<AlmostWitness> almost_circuit_gain_in_line(const GainGraph& g,
                                                         const Colouring& delta, Colour colour,
                                                         const GainVec& alpha) {
  return almost_circuit_search(g, delta, colour, LineCondition::InLine, alpha);
}

namespace {

// Monochromatic circuits realizing the span rows of one colour side; used as
// self-validating witnesses when a class requires balancedness that fails.
std::vector<std::pair<Walk, GainVec>> unbalanced_witnesses(const GainGraph& g,
                                                           const Colouring& delta, Colour colour) {
  std::vector<std::pair<Walk, GainVec>> out;
  std::vector<int> ids = colour_edge_ids(g, delta, colour);
  Components comps = components_of_edges(g, ids);
  std::vector<std::vector<int>> per_comp(comps.count());
  for (int e : ids) per_comp[comps.comp_of[g.edge(e).tail]].push_back(e);
  for (const auto& edges : per_comp) {
    if (edges.empty()) continue;
    SpanWithWitnesses sw = span_subgroup_with_witnesses(g, edges);
    for (size_t i = 0; i < sw.span.rows.size(); ++i)
      out.emplace_back(sw.row_witnesses[i], sw.span.rows[i]);
  }
  return out;
}

FlagResult fail(std::string reason) {
  FlagResult f;
  f.ok = false;
  f.reason = std::move(reason);
  return f;
}

FlagResult pass() {
  FlagResult f;
  f.ok = true;
  return f;
}

}  // namespace

namespace {

Classification classify_impl(const GainGraph& g, const Colouring& delta, bool with_witnesses) {
  check_total(g, delta);
  Classification cls;
  cls.k = g.k();
  cls.type2_alpha = GainVec::zero(g.k());
  cls.type2_beta = GainVec::zero(g.k());
  cls.type3_alpha = GainVec::zero(g.k());

  bool has_red = false, has_blue = false;
  for (Colour c : delta) (c == Colour::Red ? has_red : has_blue) = true;
  cls.surjective = has_red && has_blue;

  ColourSystem sys_red = build_walk_gain_system(g, delta, Colour::Red);
  ColourSystem sys_blue = build_walk_gain_system(g, delta, Colour::Blue);
  auto sys_of = [&](Colour c) -> const ColourSystem& {
    return c == Colour::Red ? sys_red : sys_blue;
  };
  auto joined = [&](const ColourSystem& s) {
    Subgroup acc = Subgroup::trivial(g.k());
    for (const auto& ci : s.info) acc = join(acc, ci.span);
    return acc;
  };
  cls.span_red = joined(sys_red);
  cls.span_blue = joined(sys_blue);

  auto fail_hit = [&](std::string reason, Colour colour, const AlmostHit& hit) {
    FlagResult f = fail(std::move(reason));
    if (with_witnesses)
      f.almost_witnesses.push_back(make_witness(g, sys_of(colour), hit.opposite_edge, hit.target));
    return f;
  };
  auto mono_of = [&](FlagResult& f, Colour c) {
    if (!with_witnesses) return;
    auto w = unbalanced_witnesses(g, delta, c);
    f.mono_witnesses.insert(f.mono_witnesses.end(), w.begin(), w.end());
  };

  // NBAC
  if (!cls.surjective) {
    cls.nbac = fail("colouring is not surjective");
  } else {
    auto br = almost_hit(g, delta, sys_red, LineCondition::Balanced, GainVec::zero(g.k()));
    std::optional<AlmostHit> bb;
    if (!br) bb = almost_hit(g, delta, sys_blue, LineCondition::Balanced, GainVec::zero(g.k()));
    if (br)
      cls.nbac = fail_hit("balanced almost-red circuit exists", Colour::Red, *br);
    else if (bb)
      cls.nbac = fail_hit("balanced almost-blue circuit exists", Colour::Blue, *bb);
    else
      cls.nbac = pass();
  }

  bool bal_red = cls.span_red.is_trivial();
  bool bal_blue = cls.span_blue.is_trivial();

  auto require_nbac = [&](FlagResult& f) { f = fail("not an NBAC-colouring: " + cls.nbac.reason); };

  // fixed lattice (either orientation)
  {
    FlagResult& f = cls.fixed_lattice;
    if (!cls.nbac.ok) {
      require_nbac(f);
    } else if (bal_red && bal_blue) {
      f = fail("both colour classes are balanced");
    } else if (!bal_red && !bal_blue) {
      f = fail("both colour classes are unbalanced");
      mono_of(f, Colour::Red);
      mono_of(f, Colour::Blue);
    } else {
      Colour unbal = bal_red ? Colour::Blue : Colour::Red;
      auto w = almost_hit(g, delta, sys_of(unbal), LineCondition::AnyGain, GainVec::zero(g.k()));
      if (w)
        f = fail_hit(std::string("almost-") + colour_name(unbal) + " circuit exists", unbal, *w);
      else
        f = pass();
    }
  }

  if (g.k() == 1) {
    FlagResult& f = cls.flexible_1_lattice;
    if (!cls.nbac.ok) {
      require_nbac(f);
    } else if (!bal_red || !bal_blue) {
      Colour c = !bal_red ? Colour::Red : Colour::Blue;
      f = fail(std::string(colour_name(c)) + " class is unbalanced");
      mono_of(f, c);
    } else {
      f = pass();
    }
    cls.type1 = fail("only defined for gain dimension 2");
    cls.type2 = fail("only defined for gain dimension 2");
    cls.type3 = fail("only defined for gain dimension 2");
    return cls;
  }

  cls.flexible_1_lattice = fail("only defined for gain dimension 1");

  // type 1
  {
    FlagResult& f = cls.type1;
    if (!cls.nbac.ok) {
      require_nbac(f);
    } else if (!bal_red || !bal_blue) {
      Colour c = !bal_red ? Colour::Red : Colour::Blue;
      f = fail(std::string(colour_name(c)) + " class is unbalanced");
      mono_of(f, c);
    } else {
      f = pass();
    }
  }

  // type 2: alpha/beta from the span lines (primitive; (0,0) for a trivial span)
  {
    FlagResult& f = cls.type2;
    LineResult lr = line_containing(cls.span_red);
    LineResult lb = line_containing(cls.span_blue);
    if (!cls.nbac.ok) {
      require_nbac(f);
    } else if (lr.kind == LineResult::Full || lb.kind == LineResult::Full) {
      Colour c = lr.kind == LineResult::Full ? Colour::Red : Colour::Blue;
      f = fail(std::string(colour_name(c)) + " span has rank 2");
      mono_of(f, c);
    } else if (lr.kind == LineResult::Trivial && lb.kind == LineResult::Trivial) {
      f = fail("both spans are trivial");
    } else if (lr.kind == LineResult::Line && lb.kind == LineResult::Line &&
               lr.alpha.cross(lb.alpha) == 0) {
      f = fail("red and blue spans lie on a common line");
    } else {
      GainVec alpha = lr.kind == LineResult::Line ? lr.alpha : GainVec::zero(2);
      GainVec beta = lb.kind == LineResult::Line ? lb.alpha : GainVec::zero(2);
      std::optional<AlmostHit> wr, wb;
      if (!alpha.is_zero()) wr = almost_hit(g, delta, sys_red, LineCondition::InLine, alpha);
      if (!wr && !beta.is_zero())
        wb = almost_hit(g, delta, sys_blue, LineCondition::InLine, beta);
      if (wr) {
        f = fail_hit("almost-red circuit with gain on the red line", Colour::Red, *wr);
      } else if (wb) {
        f = fail_hit("almost-blue circuit with gain on the blue line", Colour::Blue, *wb);
      } else {
        f = pass();
        cls.type2_alpha = alpha;
        cls.type2_beta = beta;
      }
    }
  }

  // type 3: both spans nontrivial on one common line
  {
    FlagResult& f = cls.type3;
    if (!cls.nbac.ok) {
      require_nbac(f);
    } else if (bal_red || bal_blue) {
      f = fail(std::string(colour_name(bal_red ? Colour::Red : Colour::Blue)) +
               " span is trivial");
    } else {
      LineResult lj = line_containing(join(cls.span_red, cls.span_blue));
      if (lj.kind != LineResult::Line) {
        f = fail("red and blue spans do not lie on a common line");
        mono_of(f, Colour::Red);
        mono_of(f, Colour::Blue);
      } else {
        auto wr = almost_hit(g, delta, sys_red, LineCondition::InLine, lj.alpha);
        std::optional<AlmostHit> wb;
        if (!wr) wb = almost_hit(g, delta, sys_blue, LineCondition::InLine, lj.alpha);
        if (wr) {
          f = fail_hit("almost-red circuit with gain on the common line", Colour::Red, *wr);
        } else if (wb) {
          f = fail_hit("almost-blue circuit with gain on the common line", Colour::Blue, *wb);
        } else {
          f = pass();
          cls.type3_alpha = lj.alpha;
        }
      }
    }
  }

  return cls;
}

}  // namespace

Classification classify(const GainGraph& g, const Colouring& delta) {
  return classify_impl(g, delta, true);
}

bool matches(const Classification& c, ColourClass cls) {
  switch (cls) {
    case ColourClass::Nbac: return c.nbac.ok;
    case ColourClass::FixedLattice: return c.fixed_lattice.ok;
    case ColourClass::Flexible1Lattice: return c.flexible_1_lattice.ok;
    case ColourClass::Type1: return c.type1.ok;
    case ColourClass::Type2: return c.type2.ok;
    case ColourClass::Type3: return c.type3.ok;
  }
  return false;
}

std::optional<ColourClass> colour_class_from_name(const std::string& name) {
  if (name == "nbac") return ColourClass::Nbac;
  if (name == "fixed") return ColourClass::FixedLattice;
  if (name == "flex1") return ColourClass::Flexible1Lattice;
  if (name == "type1") return ColourClass::Type1;
  if (name == "type2") return ColourClass::Type2;
  if (name == "type3") return ColourClass::Type3;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Enumeration: incremental two-sided union-find with potentials and spans,
// with undo, pruning branches that already contain a balanced almost
// monochromatic circuit.

namespace {

struct SideState {
  int k;
  std::vector<int> parent;
  std::vector<int> sz;
  std::vector<GainVec> off;  // gain from parent[v] to v
  std::vector<Subgroup> span_of_root;

  explicit SideState(int k_, int n) : k(k_) {
    parent.resize(n);
    sz.assign(n, 1);
    off.assign(n, GainVec::zero(k));
    span_of_root.assign(n, Subgroup::trivial(k));
    for (int i = 0; i < n; ++i) parent[i] = i;
  }

  std::pair<int, GainVec> find(int v) const {
    GainVec acc = GainVec::zero(k);
    while (parent[v] != v) {
      acc += off[v];
      v = parent[v];
    }
    return {v, acc};  // gain of tree path root -> v
  }

  struct UndoRec {
    enum Kind { Union, Span } kind;
    int child_root = -1;
    int parent_root = -1;
    bool span_saved = false;
    Subgroup old_span;
  };

  // Add the relation "walk a->b has gain gamma".
  void add_edge(int a, int b, const GainVec& gamma, std::vector<UndoRec>& undo) {
    auto [ra, pa] = find(a);  // pa = gain root_a -> a
    auto [rb, pb] = find(b);
    if (ra == rb) {
      GainVec cycle = pa + gamma - pb;
      if (contains(span_of_root[ra], cycle)) return;  // nothing changes, nothing to undo
      UndoRec rec;
      rec.kind = UndoRec::Span;
      rec.child_root = ra;
      rec.span_saved = true;
      rec.old_span = span_of_root[ra];
      undo.push_back(std::move(rec));
      span_of_root[ra] = join(span_of_root[ra], hnf(k, {cycle}));
      return;
    }
    int par, child;
    GainVec off_val;  // gain par -> child
    if (sz[ra] >= sz[rb]) {
      par = ra;
      child = rb;
      off_val = pa + gamma - pb;  // ra->a, a->b, b->rb
    } else {
      par = rb;
      child = ra;
      off_val = pb - gamma - pa;  // rb->b, b->a, a->ra
    }
    UndoRec rec;
    rec.kind = UndoRec::Union;
    rec.child_root = child;
    rec.parent_root = par;
    if (!span_of_root[child].is_trivial()) {
      rec.span_saved = true;
      rec.old_span = span_of_root[par];
    }
    undo.push_back(std::move(rec));
    parent[child] = par;
    off[child] = off_val;
    sz[par] += sz[child];
    if (!span_of_root[child].is_trivial())
      span_of_root[par] = join(span_of_root[par], span_of_root[child]);
  }

  void rollback(const UndoRec& rec) {
    if (rec.kind == UndoRec::Span) {
      span_of_root[rec.child_root] = rec.old_span;
    } else {
      parent[rec.child_root] = rec.child_root;
      sz[rec.parent_root] -= sz[rec.child_root];
      if (rec.span_saved) span_of_root[rec.parent_root] = rec.old_span;
    }
  }

  bool connected(int a, int b) const { return find(a).first == find(b).first; }

  // 0 in { gamma + P(a) - P(b) } + span ?
  bool balanced_circuit_through(int a, int b, const GainVec& gamma) const {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra != rb) return false;
    return contains(span_of_root[ra], gamma + pa - pb);
  }
};

std::vector<int> bfs_edge_order(const GainGraph& g) {
  // Vertices in BFS discovery order from the lowest id of each component;
  // edges sorted by (min discovery index, max discovery index, id).
  std::vector<std::vector<std::pair<int, int>>> adj(g.vertex_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    const GainEdge& ed = g.edge(e);
    adj[ed.tail].emplace_back(ed.head, e);
    if (ed.tail != ed.head) adj[ed.head].emplace_back(ed.tail, e);
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());
  std::vector<int> disc(g.vertex_count(), -1);
  int next = 0;
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (disc[s] != -1) continue;
    std::queue<int> q;
    q.push(s);
    disc[s] = next++;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const auto& [w, e] : adj[v]) {
        (void)e;
        if (disc[w] == -1) {
          disc[w] = next++;
          q.push(w);
        }
      }
    }
  }
  std::vector<int> order(g.edge_count());
  for (int i = 0; i < g.edge_count(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const GainEdge& ea = g.edge(a);
    const GainEdge& eb = g.edge(b);
    int a1 = std::min(disc[ea.tail], disc[ea.head]);
    int a2 = std::max(disc[ea.tail], disc[ea.head]);
    int b1 = std::min(disc[eb.tail], disc[eb.head]);
    int b2 = std::max(disc[eb.tail], disc[eb.head]);
    return std::tie(a1, a2, a) < std::tie(b1, b2, b);
  });
  return order;
}

struct DfsDriver {
  const GainGraph& g;
  std::vector<int> order;
  Colouring assigned;
  SideState red, blue;
  std::function<bool(const Colouring&)> leaf;  // returns false to stop
  bool stopped = false;

  DfsDriver(const GainGraph& g_)
      : g(g_),
        order(bfs_edge_order(g_)),
        assigned(g_.edge_count(), Colour::Red),
        red(g_.k(), g_.vertex_count()),
        blue(g_.k(), g_.vertex_count()) {}

  SideState& side(Colour c) { return c == Colour::Red ? red : blue; }

  // Flag-level classification straight from the incremental state, valid at a
  // full assignment: the pruning already guarantees there is no balanced
  // almost-monochromatic circuit, so NBAC reduces to surjectivity.
  bool leaf_matches(ColourClass cls) {
    const int k = g.k();
    bool has_red = false, has_blue = false;
    for (Colour c : assigned) (c == Colour::Red ? has_red : has_blue) = true;
    if (!has_red || !has_blue) return false;
    if (cls == ColourClass::Nbac) return true;

    auto joint = [&](SideState& s) {
      Subgroup acc = Subgroup::trivial(k);
      std::vector<char> seen(g.vertex_count(), 0);
      for (int v = 0; v < g.vertex_count(); ++v) {
        int r = s.find(v).first;
        if (seen[r]) continue;
        seen[r] = 1;
        if (!s.span_of_root[r].is_trivial()) acc = join(acc, s.span_of_root[r]);
      }
      return acc;
    };
    Subgroup span_red = joint(red), span_blue = joint(blue);
    bool bal_red = span_red.is_trivial(), bal_blue = span_blue.is_trivial();

    auto almost_any = [&](Colour mono) {
      SideState& s = side(mono);
      for (int f = 0; f < g.edge_count(); ++f) {
        if (assigned[f] == mono) continue;
        if (s.connected(g.edge(f).tail, g.edge(f).head)) return true;
      }
      return false;
    };
    auto almost_in_line = [&](Colour mono, const GainVec& alpha) {
      SideState& s = side(mono);
      for (int f = 0; f < g.edge_count(); ++f) {
        if (assigned[f] == mono) continue;
        const GainEdge& ed = g.edge(f);
        auto [ra, pa] = s.find(ed.tail);
        auto [rb, pb] = s.find(ed.head);
        if (ra != rb) continue;
        Coset c = make_coset(ed.gain + pa - pb, s.span_of_root[ra]);
        if (coset_intersects_line(c, alpha)) return true;
      }
      return false;
    };

    switch (cls) {
      case ColourClass::Nbac: return true;
      case ColourClass::FixedLattice: {
        if (bal_red == bal_blue) return false;
        return !almost_any(bal_red ? Colour::Blue : Colour::Red);
      }
      case ColourClass::Flexible1Lattice: return k == 1 && bal_red && bal_blue;
      case ColourClass::Type1: return k == 2 && bal_red && bal_blue;
      case ColourClass::Type2: {
        if (k != 2) return false;
        LineResult lr = line_containing(span_red);
        LineResult lb = line_containing(span_blue);
        if (lr.kind == LineResult::Full || lb.kind == LineResult::Full) return false;
        if (lr.kind == LineResult::Trivial && lb.kind == LineResult::Trivial) return false;
        if (lr.kind == LineResult::Line && lb.kind == LineResult::Line &&
            lr.alpha.cross(lb.alpha) == 0)
          return false;
        if (lr.kind == LineResult::Line && almost_in_line(Colour::Red, lr.alpha)) return false;
        if (lb.kind == LineResult::Line && almost_in_line(Colour::Blue, lb.alpha)) return false;
        return true;
      }
      case ColourClass::Type3: {
        if (k != 2 || bal_red || bal_blue) return false;
        LineResult lj = line_containing(join(span_red, span_blue));
        if (lj.kind != LineResult::Line) return false;
        return !almost_in_line(Colour::Red, lj.alpha) && !almost_in_line(Colour::Blue, lj.alpha);
      }
    }
    return false;
  }

  // A freshly assigned edge may only create a balanced almost-monochromatic
  // circuit if it participates: either as the single opposite edge, or inside
  // the monochromatic side supporting an earlier opposite edge.
  bool forced_violation(int upto, int e, Colour c) {
    const GainEdge& ed = g.edge(e);
    if (side(other(c)).balanced_circuit_through(ed.tail, ed.head, ed.gain)) return true;
    for (int i = 0; i < upto; ++i) {
      int f = order[i];
      if (assigned[f] == c) continue;
      const GainEdge& fd = g.edge(f);
      if (side(c).balanced_circuit_through(fd.tail, fd.head, fd.gain)) return true;
    }
    return false;
  }

  void run(int depth) {
    if (stopped) return;
    if (depth == static_cast<int>(order.size())) {
      if (!leaf(assigned)) stopped = true;
      return;
    }
    int e = order[depth];
    const GainEdge& ed = g.edge(e);
    const bool first = depth == 0;
    for (Colour c : {Colour::Red, Colour::Blue}) {
      if (first && c == Colour::Blue) break;  // canonical: first edge red
      assigned[e] = c;
      std::vector<SideState::UndoRec> undo;
      side(c).add_edge(ed.tail, ed.head, ed.gain, undo);
      if (!forced_violation(depth, e, c)) run(depth + 1);
      for (auto it = undo.rbegin(); it != undo.rend(); ++it) side(c).rollback(*it);
      if (stopped) return;
    }
  }

  // Run with the first `prefix.size()` edges of `order` pre-assigned.
  bool run_with_prefix(const std::vector<Colour>& prefix) {
    std::vector<std::vector<SideState::UndoRec>> undos;
    bool viable = true;
    int applied = 0;
    for (size_t i = 0; i < prefix.size(); ++i) {
      int e = order[i];
      assigned[e] = prefix[i];
      undos.emplace_back();
      side(prefix[i]).add_edge(g.edge(e).tail, g.edge(e).head, g.edge(e).gain, undos.back());
      ++applied;
      if (forced_violation(static_cast<int>(i), e, prefix[i])) {
        viable = false;
        break;
      }
    }
    if (viable) run(static_cast<int>(prefix.size()));
    for (int i = applied - 1; i >= 0; --i)
      for (auto it = undos[i].rbegin(); it != undos[i].rend(); ++it)
        side(prefix[static_cast<size_t>(i)]).rollback(*it);
    return !stopped;
  }
};

}  // namespace

EnumStats enumerate_colourings(
    const GainGraph& g, ColourClass cls, std::uint64_t limit,
    const std::function<bool(const Colouring&, const Classification&)>& sink, int jobs) {
  EnumStats stats;
  if (g.edge_count() == 0) return stats;

  if (jobs <= 1 || g.edge_count() < 3) {
    DfsDriver d(g);
    d.leaf = [&](const Colouring& col) {
      if (!d.leaf_matches(cls)) return true;
      if (stats.emitted >= limit) {
        stats.complete = false;
        return false;
      }
      ++stats.emitted;
      if (!sink(col, classify_impl(g, col, true))) {
        stats.complete = false;
        return false;
      }
      return true;
    };
    d.run(0);
    return stats;
  }

  // Parallel: partition on a short prefix after the fixed first edge, run each
  // subtree independently, then merge buffers in prefix order.
  int split = 1;
  while ((1 << split) < jobs && split + 1 < g.edge_count()) ++split;
  int tasks = 1 << split;
  struct Bucket {
    std::vector<std::pair<Colouring, Classification>> hits;
    bool complete = true;
  };
  std::vector<std::future<Bucket>> futures;
  for (int t = 0; t < tasks; ++t) {
    futures.push_back(std::async(std::launch::async, [&, t]() {
      Bucket b;
      std::vector<Colour> prefix(1 + split, Colour::Red);
      for (int i = 0; i < split; ++i)
        prefix[1 + i] = (t >> (split - 1 - i)) & 1 ? Colour::Blue : Colour::Red;
      DfsDriver d(g);
      std::uint64_t local = 0;
      d.leaf = [&](const Colouring& col) {
        if (!d.leaf_matches(cls)) return true;
        if (local >= limit) {
          b.complete = false;
          return false;
        }
        ++local;
        b.hits.emplace_back(col, classify_impl(g, col, true));
        return true;
      };
      d.run_with_prefix(prefix);
      return b;
    }));
  }
  bool sink_stopped = false;
  for (auto& f : futures) {
    Bucket b = f.get();
    for (auto& [col, c] : b.hits) {
      if (sink_stopped) continue;
      if (stats.emitted >= limit) {
        stats.complete = false;
        sink_stopped = true;
        break;
      }
      ++stats.emitted;
      if (!sink(col, c)) {
        stats.complete = false;
        sink_stopped = true;
      }
    }
    if (!b.complete) stats.complete = false;
  }
  return stats;
}

// ---------------------------------------------------------------------------

const char* recipe_name(Recipe r) {
  switch (r) {
    case Recipe::None: return "None";
    case Recipe::BalancedRotation: return "BalancedRotation";
    case Recipe::FixedLatticeShear: return "FixedLatticeShear";
    case Recipe::OnePeriodicGrid: return "OnePeriodicGrid";
    case Recipe::Type1Grid: return "Type1Grid";
    case Recipe::Type2Scissor: return "Type2Scissor";
    case Recipe::RankDeficientScale: return "RankDeficientScale";
  }
  return "None";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Flexible: return "Flexible";
    case Verdict::NotFlexible: return "NotFlexible";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::optional<Mode> mode_from_name(const std::string& name) {
  if (name == "fixed") return Mode::FixedLattice;
  if (name == "flex1") return Mode::FlexibleLattice1;
  if (name == "flex2") return Mode::FlexibleLattice2;
  return std::nullopt;
}

Decision decide(const GainGraph& g, Mode mode) {
  if (components(g).count() > 1)
    throw std::invalid_argument("decision procedures require a connected graph");
  if (mode == Mode::FlexibleLattice1 && g.k() != 1)
    throw std::invalid_argument("1-lattice mode requires gain dimension 1");
  if (mode == Mode::FlexibleLattice2 && g.k() != 2)
    throw std::invalid_argument("2-lattice mode requires gain dimension 2");

  Decision d;
  d.mode = mode;

  const bool balanced = is_balanced(g);

  if (mode == Mode::FixedLattice) {
    if (balanced) {
      d.verdict = Verdict::Flexible;
      d.recipe = Recipe::BalancedRotation;
      d.note = "graph is balanced";
      return d;
    }
    enumerate_colourings(g, ColourClass::FixedLattice, 1,
                         [&](const Colouring& col, const Classification& c) {
                           d.witness_colouring = col;
                           d.witness_class = c;
                           return false;
                         });
    if (d.witness_colouring) {
      d.verdict = Verdict::Flexible;
      d.recipe = Recipe::FixedLatticeShear;
      d.note = "fixed-lattice colouring found";
    } else {
      d.verdict = Verdict::NotFlexible;
      d.note = "unbalanced and no fixed-lattice colouring exists";
    }
    return d;
  }

  if (mode == Mode::FlexibleLattice1) {
    if (balanced) {
      d.verdict = Verdict::Flexible;
      d.recipe = Recipe::BalancedRotation;
      d.note = "graph is balanced";
      return d;
    }
    std::optional<std::pair<Colouring, Classification>> first_fixed, first_flex1;
    enumerate_colourings(g, ColourClass::Nbac, std::numeric_limits<std::uint64_t>::max(),
                         [&](const Colouring& col, const Classification& c) {
                           if (c.fixed_lattice.ok && !first_fixed) first_fixed = {col, c};
                           if (c.flexible_1_lattice.ok && !first_flex1) first_flex1 = {col, c};
                           return !first_fixed;  // fixed is the preferred recipe
                         });
    if (first_fixed) {
      d.verdict = Verdict::Flexible;
      d.recipe = Recipe::FixedLatticeShear;
      d.witness_colouring = first_fixed->first;
      d.witness_class = first_fixed->second;
      d.note = "fixed-lattice colouring found";
    } else if (first_flex1) {
      d.verdict = Verdict::Flexible;
      d.recipe = Recipe::OnePeriodicGrid;
      d.witness_colouring = first_flex1->first;
      d.witness_class = first_flex1->second;
      d.note = "flexible 1-lattice colouring found";
    } else {
      d.verdict = Verdict::NotFlexible;
      d.note = "no qualifying colouring exists";
    }
    return d;
  }

  // FlexibleLattice2
  int r = graph_rank(g);
  if (r < 2) {
    d.verdict = Verdict::Flexible;
    d.recipe = r == 0 ? Recipe::BalancedRotation : Recipe::RankDeficientScale;
    d.note = r == 0 ? "graph is balanced" : "gain span has rank 1";
    return d;
  }
  std::optional<std::pair<Colouring, Classification>> first_fixed, first_t1, first_t2, first_t3;
  enumerate_colourings(g, ColourClass::Nbac, std::numeric_limits<std::uint64_t>::max(),
                       [&](const Colouring& col, const Classification& c) {
                         if (c.fixed_lattice.ok && !first_fixed) first_fixed = {col, c};
                         if (c.type1.ok && !first_t1) first_t1 = {col, c};
                         if (c.type2.ok && !first_t2) first_t2 = {col, c};
                         if (c.type3.ok && !first_t3) first_t3 = {col, c};
                         return !first_fixed;
                       });
  if (first_fixed) {
    d.verdict = Verdict::Flexible;
    d.recipe = Recipe::FixedLatticeShear;
    d.witness_colouring = first_fixed->first;
    d.witness_class = first_fixed->second;
    d.note = "fixed-lattice colouring found";
    return d;
  }
  if (first_t2) {
    d.verdict = Verdict::Flexible;
    d.recipe = Recipe::Type2Scissor;
    d.witness_colouring = first_t2->first;
    d.witness_class = first_t2->second;
    d.note = "type 2 colouring found";
    return d;
  }
  if (first_t1) {
    d.verdict = Verdict::Flexible;
    d.recipe = Recipe::Type1Grid;
    d.witness_colouring = first_t1->first;
    d.witness_class = first_t1->second;
    d.note = "type 1 colouring found";
    return d;
  }
  if (g.has_loop()) {
    d.verdict = Verdict::NotFlexible;
    d.note = "graph has a loop, full rank, and no qualifying colouring";
    return d;
  }
  if (first_t3) {
    d.verdict = Verdict::Unknown;
    d.witness_colouring = first_t3->first;
    d.witness_class = first_t3->second;
    d.note =
        "only type 3 colourings exist; no construction is known for this class "
        "and flexibility remains conjectural";
    return d;
  }
  d.verdict = Verdict::NotFlexible;
  d.note = "full rank and no qualifying colouring exists";
  return d;
}

}  // namespace periflex
