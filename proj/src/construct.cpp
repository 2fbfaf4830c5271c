#include "periflex/construct.hpp"

#include <cmath>
#include <queue>

namespace periflex {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kC1 = std::sqrt(2.0);
const double kC2 = std::sqrt(3.0);

IVec2 to_ivec(const GainVec& v) { return {to_i64(v.c[0]), to_i64(v.c[1])}; }

std::vector<IVec2> sigma_of(const SwitchingSequence& seq, int n, int k) {
  std::vector<GainVec> net(n, GainVec::zero(k));
  for (const auto& [u, mu] : seq) net[u] += mu;
  std::vector<IVec2> out(n);
  for (int v = 0; v < n; ++v) out[v] = to_ivec(net[v]);
  return out;
}

std::vector<int> colour_edges(const GainGraph& g, const Colouring& delta, Colour c) {
  std::vector<int> ids;
  for (int e = 0; e < g.edge_count(); ++e)
    if (delta[e] == c) ids.push_back(e);
  return ids;
}

// Spanning-forest normalization of one colour class: switches so that every
// edge of that colour inside a component keeps gain in the component span;
// with a balanced class this zeroes all its gains.
std::pair<GainGraph, SwitchingSequence> zero_colour_gains(const GainGraph& g,
                                                          const Colouring& delta, Colour colour) {
  ColourSystem sys = build_walk_gain_system(g, delta, colour);
  SwitchingSequence seq;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!sys.phi[v].is_zero()) seq.emplace_back(v, sys.phi[v]);
  return {apply_switching(g, seq), seq};
}

SwitchingSequence concat(SwitchingSequence a, const SwitchingSequence& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Int max_gain_norm(const GainGraph& g) {
  Int m = 0;
  for (const auto& e : g.edges()) m = std::max(m, e.gain.inf_norm());
  return m;
}

std::vector<IVec2> injective_grid(int n) {
  int w = 1;
  while (w * w < n) ++w;
  std::vector<IVec2> p(n);
  for (int i = 0; i < n; ++i) p[i] = {i % w, i / w};
  return p;
}

[[noreturn]] void separation_failure(const char* where) {
  throw std::logic_error(std::string("edge separation check failed in ") + where +
                         " (colouring class misdetected)");
}

}  // namespace

const char* flex_kind_name(FlexKind k) {
  switch (k) {
    case FlexKind::FixedLatticeShear: return "FixedLatticeShear";
    case FlexKind::BalancedRotation: return "BalancedRotation";
    case FlexKind::OnePeriodicGrid: return "OnePeriodicGrid";
    case FlexKind::Type1Grid: return "Type1Grid";
    case FlexKind::Type2Scissor: return "Type2Scissor";
    case FlexKind::RankDeficientScale: return "RankDeficientScale";
    case FlexKind::HennebergCircle: return "HennebergCircle";
  }
  return "BalancedRotation";
}

std::optional<FlexKind> flex_kind_from_name(const std::string& name) {
  for (FlexKind k :
       {FlexKind::FixedLatticeShear, FlexKind::BalancedRotation, FlexKind::OnePeriodicGrid,
        FlexKind::Type1Grid, FlexKind::Type2Scissor, FlexKind::RankDeficientScale,
        FlexKind::HennebergCircle})
    if (name == flex_kind_name(k)) return k;
  return std::nullopt;
}

PlacementLattice ParametricFlex::sample(double t) const {
  PlacementLattice out;
  out.k = k;
  out.p.resize(nverts);

  auto unswitch = [&](PlacementLattice& pl) {
    for (int v = 0; v < nverts; ++v) {
      auto shift = pl.lattice_apply(static_cast<double>(sigma[v][0]),
                                    static_cast<double>(sigma[v][1]));
      pl.p[v][0] -= shift[0];
      pl.p[v][1] -= shift[1];
    }
  };

  if (const auto* s = std::get_if<ShearParams>(&params)) {
    out.L[0] = {s->c1, 0.0};
    out.L[1] = k == 2 ? std::array<double, 2>{0.0, s->c2} : std::array<double, 2>{0.0, 0.0};
    for (int v = 0; v < nverts; ++v) {
      double x = static_cast<double>(s->x[v]);
      double y = static_cast<double>(s->y[v]);
      out.p[v] = {x + y * std::sin(t), y * std::cos(t)};
    }
    unswitch(out);
    return out;
  }
  if (const auto* s = std::get_if<RotationParams>(&params)) {
    double ct = std::cos(t), st = std::sin(t);
    out.L[0] = {ct * s->c1, st * s->c1};
    out.L[1] = k == 2 ? std::array<double, 2>{-st * s->c2, ct * s->c2}
                      : std::array<double, 2>{0.0, 0.0};
    for (int v = 0; v < nverts; ++v)
      out.p[v] = {static_cast<double>(s->p0[v][0]), static_cast<double>(s->p0[v][1])};
    unswitch(out);
    return out;
  }
  if (const auto* s = std::get_if<Grid1Params>(&params)) {
    out.L[0] = {-2.0 + std::cos(t), std::sin(t)};
    out.L[1] = {0.0, 0.0};
    for (int v = 0; v < nverts; ++v)
      out.p[v] = {static_cast<double>(s->q[v]), static_cast<double>(s->row[v])};
    unswitch(out);
    return out;
  }
  if (const auto* s = std::get_if<Type1Params>(&params)) {
    out.L[0] = {-2.0 + std::cos(t), std::sin(t)};
    out.L[1] = {std::sin(t), -2.0 - std::cos(t)};
    for (int v = 0; v < nverts; ++v)
      out.p[v] = {static_cast<double>(s->pos[v][0]), static_cast<double>(s->pos[v][1])};
    unswitch(out);
    return out;
  }
  if (const auto* s = std::get_if<Type2Params>(&params)) {
    // L_t on the basis {alpha, beta}: alpha sweeps the unit circle starting at
    // (0,1) so the base lattice has full rank, beta stays at (1,0).
    std::array<double, 2> col_a = {-std::sin(t), std::cos(t)};
    std::array<double, 2> col_b = {1.0, 0.0};
    double det = static_cast<double>(s->q_den);
    double a1 = static_cast<double>(s->alpha[0]), a2 = static_cast<double>(s->alpha[1]);
    double b1 = static_cast<double>(s->beta[0]), b2 = static_cast<double>(s->beta[1]);
    out.L[0] = {(col_a[0] * b2 - col_b[0] * a2) / det, (col_a[1] * b2 - col_b[1] * a2) / det};
    out.L[1] = {(-col_a[0] * b1 + col_b[0] * a1) / det, (-col_a[1] * b1 + col_b[1] * a1) / det};
    for (int v = 0; v < nverts; ++v)
      out.p[v] = {static_cast<double>(s->q_num[v]) / det, static_cast<double>(s->row[v])};
    unswitch(out);
    return out;
  }
  if (const auto* s = std::get_if<ScaleParams>(&params)) {
    double a1 = static_cast<double>(s->alpha[0]), a2 = static_cast<double>(s->alpha[1]);
    double b1 = static_cast<double>(s->beta[0]), b2 = static_cast<double>(s->beta[1]);
    std::array<double, 2> col_a = {s->c1 * a1, s->c2 * a2};
    std::array<double, 2> col_b = {(1.0 + t) * s->c1 * b1, (1.0 + t) * s->c2 * b2};
    double det = a1 * b2 - a2 * b1;
    out.L[0] = {(col_a[0] * b2 - col_b[0] * a2) / det, (col_a[1] * b2 - col_b[1] * a2) / det};
    out.L[1] = {(-col_a[0] * b1 + col_b[0] * a1) / det, (-col_a[1] * b1 + col_b[1] * a1) / det};
    for (int v = 0; v < nverts; ++v)
      out.p[v] = {static_cast<double>(s->p0[v][0]), static_cast<double>(s->p0[v][1])};
    unswitch(out);
    return out;
  }
  const auto& h = std::get<HennebergParams>(params);
  PlacementLattice inner = h.inner->sample(t);
  out = inner;
  out.p.resize(nverts);
  auto lg = inner.lattice_apply(static_cast<double>(h.gamma[0]), static_cast<double>(h.gamma[1]));
  double norm = std::hypot(lg[0], lg[1]);
  double arg = -norm / (2.0 * h.r);
  arg = std::max(-1.0, std::min(1.0, arg));
  double f = std::acos(arg) + std::atan2(lg[1], lg[0]);
  out.p[nverts - 1] = {inner.p[h.v1][0] + h.r * std::cos(f), inner.p[h.v1][1] + h.r * std::sin(f)};
  return out;
}

std::pair<GainGraph, SwitchingSequence> normalize_blue_trivial(const GainGraph& g,
                                                               const Colouring& delta) {
  Classification cls = classify(g, delta);
  if (!cls.flexible_1_lattice.ok && !cls.type1.ok)
    throw std::invalid_argument(
        "normalize_blue_trivial requires a flexible 1-lattice or type 1 colouring");

  auto [g1, s1] = zero_colour_gains(g, delta, Colour::Blue);
  bool conforming = true;
  for (int e = 0; e < g1.edge_count(); ++e)
    if (delta[e] == Colour::Red && g1.edge(e).gain.is_zero()) conforming = false;

  // Shifting the blue components is only needed to clear zero red gains; a
  // conforming input stays as it is.
  SwitchingSequence s2;
  if (!conforming) {
    Int m = max_gain_norm(g1) + 1;
    GainVec mu = g.k() == 1 ? GainVec(m) : GainVec(m, m);
    Components bc = components_of_edges(g1, colour_edges(g1, delta, Colour::Blue));
    for (int v = 0; v < g1.vertex_count(); ++v) {
      Int i = bc.comp_of[v];
      if (i != 0) s2.emplace_back(v, i * mu);
    }
  }
  GainGraph g2 = apply_switching(g1, s2);
  for (int e = 0; e < g2.edge_count(); ++e) {
    if (delta[e] == Colour::Blue && !g2.edge(e).gain.is_zero())
      throw std::logic_error("blue gain survived normalization");
    if (delta[e] == Colour::Red && g2.edge(e).gain.is_zero())
      throw std::logic_error("red edge with trivial gain after normalization");
  }
  return {std::move(g2), concat(std::move(s1), s2)};
}

std::vector<GainVec> red_potential(const GainGraph& g, const std::vector<int>& edge_ids,
                                   const Int& factor) {
  Components comps = components_of_edges(g, edge_ids);
  std::vector<std::vector<std::tuple<int, int, bool>>> adj(g.vertex_count());
  for (int e : edge_ids) {
    const GainEdge& ed = g.edge(e);
    if (ed.tail == ed.head) continue;
    adj[ed.tail].emplace_back(ed.head, e, true);
    adj[ed.head].emplace_back(ed.tail, e, false);
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());

  std::vector<GainVec> q(g.vertex_count(), GainVec::zero(g.k()));
  std::vector<bool> seen(g.vertex_count(), false);
  for (const auto& comp : comps.members) {
    int root = comp.front();
    if (seen[root]) continue;
    seen[root] = true;
    std::queue<int> bfs;
    bfs.push(root);
    while (!bfs.empty()) {
      int v = bfs.front();
      bfs.pop();
      for (const auto& [w, e, fwd] : adj[v]) {
        if (seen[w]) continue;
        seen[w] = true;
        q[w] = q[v] + factor * g.traversal_gain(e, fwd);
        bfs.push(w);
      }
    }
  }
  for (int e : edge_ids) {
    const GainEdge& ed = g.edge(e);
    if (q[ed.head] - q[ed.tail] != factor * ed.gain)
      throw std::logic_error("potential inconsistent on a chord (subgraph not balanced)");
  }
  return q;
}

ConstructResult construct_fixed_lattice(const GainGraph& g, const Colouring& delta) {
  Classification cls = classify(g, delta);
  if (!cls.fixed_lattice.ok)
    throw std::invalid_argument("not a fixed-lattice colouring: " + cls.fixed_lattice.reason);
  if (components(g).count() > 1) throw std::invalid_argument("graph must be connected");

  Colour bal = cls.span_red.is_trivial() ? Colour::Red : Colour::Blue;
  Colour unbal = other(bal);
  auto [g1, seq] = zero_colour_gains(g, delta, bal);
  Components balc = components_of_edges(g1, colour_edges(g1, delta, bal));
  Components unbalc = components_of_edges(g1, colour_edges(g1, delta, unbal));

  ShearParams params;
  params.x.resize(g.vertex_count());
  params.y.resize(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    params.x[v] = balc.comp_of[v];
    params.y[v] = unbalc.comp_of[v];
  }
  params.c1 = kC1;
  params.c2 = g.k() == 2 ? kC2 : 0.0;

  // Exact separation replay over the integer component indices.
  for (int e = 0; e < g1.edge_count(); ++e) {
    const GainEdge& ed = g1.edge(e);
    if (delta[e] == bal) {
      if (!ed.gain.is_zero()) separation_failure("construct_fixed_lattice");
      if (params.y[ed.tail] == params.y[ed.head]) separation_failure("construct_fixed_lattice");
    } else if (ed.gain.is_zero() && params.x[ed.tail] == params.x[ed.head]) {
      separation_failure("construct_fixed_lattice");
    }
  }

  ParametricFlex flex;
  flex.kind = FlexKind::FixedLatticeShear;
  flex.k = g.k();
  flex.nverts = g.vertex_count();
  flex.t0 = 0;
  flex.t1 = 2 * kPi;
  flex.sigma = sigma_of(seq, g.vertex_count(), g.k());
  flex.params = std::move(params);
  return ConstructResult{g, std::move(flex)};
}

ConstructResult construct_balanced(const GainGraph& g) {
  if (!is_balanced(g)) throw std::invalid_argument("graph is not balanced");
  auto [g1, seq] = spanning_tree_normalize(g);
  for (const auto& e : g1.edges())
    if (!e.gain.is_zero()) throw std::logic_error("nonzero gain after balanced normalization");

  RotationParams params;
  params.p0 = injective_grid(g.vertex_count());
  params.c1 = 1.0;
  params.c2 = g.k() == 2 ? 1.0 : 0.0;

  ParametricFlex flex;
  flex.kind = FlexKind::BalancedRotation;
  flex.k = g.k();
  flex.nverts = g.vertex_count();
  flex.t0 = 0;
  flex.t1 = 2 * kPi;
  flex.sigma = sigma_of(seq, g.vertex_count(), g.k());
  flex.params = std::move(params);
  return ConstructResult{g, std::move(flex)};
}

ConstructResult construct_flexible_1lattice(const GainGraph& g, const Colouring& delta) {
  if (g.k() != 1) throw std::invalid_argument("requires gain dimension 1");
  Classification cls = classify(g, delta);
  if (!cls.flexible_1_lattice.ok)
    throw std::invalid_argument("not a flexible 1-lattice colouring: " +
                                cls.flexible_1_lattice.reason);

  auto [g2, seq] = normalize_blue_trivial(g, delta);
  std::vector<int> red = colour_edges(g2, delta, Colour::Red);
  Components rc = components_of_edges(g2, red);
  std::vector<GainVec> q = red_potential(g2, red, 2);

  Grid1Params params;
  params.row.resize(g.vertex_count());
  params.q.resize(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    params.row[v] = rc.comp_of[v];
    params.q[v] = to_i64(q[v].c[0]);
  }

  for (int e = 0; e < g2.edge_count(); ++e) {
    const GainEdge& ed = g2.edge(e);
    if (delta[e] == Colour::Red) {
      if (ed.gain.is_zero()) separation_failure("construct_flexible_1lattice");
    } else if (params.row[ed.tail] == params.row[ed.head] &&
               params.q[ed.tail] == params.q[ed.head]) {
      separation_failure("construct_flexible_1lattice");
    }
  }

  ParametricFlex flex;
  flex.kind = FlexKind::OnePeriodicGrid;
  flex.k = 1;
  flex.nverts = g.vertex_count();
  flex.t0 = 0;
  flex.t1 = 2 * kPi;
  flex.sigma = sigma_of(seq, g.vertex_count(), 1);
  flex.params = std::move(params);
  return ConstructResult{g, std::move(flex)};
}

ConstructResult construct_type1(const GainGraph& g, const Colouring& delta) {
  if (g.k() != 2) throw std::invalid_argument("requires gain dimension 2");
  Classification cls = classify(g, delta);
  if (!cls.type1.ok) throw std::invalid_argument("not a type 1 colouring: " + cls.type1.reason);

  auto [g2, seq] = normalize_blue_trivial(g, delta);
  std::vector<int> red = colour_edges(g2, delta, Colour::Red);
  Components rc = components_of_edges(g2, red);
  std::vector<GainVec> q = red_potential(g2, red, 2);

  Int maxq = 0;
  for (const auto& v : q) maxq = std::max(maxq, v.inf_norm());
  Int d = 4 * (1 + maxq + max_gain_norm(g2));

  Type1Params params;
  params.pos.resize(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    Int j = rc.comp_of[v];
    params.pos[v] = {to_i64(q[v].c[0] + j * d), to_i64(q[v].c[1] + j * d * d)};
  }

  for (int e = 0; e < g2.edge_count(); ++e) {
    const GainEdge& ed = g2.edge(e);
    if (delta[e] == Colour::Red) {
      if (ed.gain.is_zero()) separation_failure("construct_type1");
    } else if (params.pos[ed.tail] == params.pos[ed.head]) {
      separation_failure("construct_type1");
    }
  }

  ParametricFlex flex;
  flex.kind = FlexKind::Type1Grid;
  flex.k = 2;
  flex.nverts = g.vertex_count();
  flex.t0 = 0;
  flex.t1 = 2 * kPi;
  flex.sigma = sigma_of(seq, g.vertex_count(), 2);
  flex.params = std::move(params);
  return ConstructResult{g, std::move(flex)};
}

std::pair<GainGraph, SwitchingSequence> normalize_type2(const GainGraph& g, const Colouring& delta,
                                                        const GainVec& alpha,
                                                        const GainVec& beta) {
  if (g.k() != 2) throw std::invalid_argument("requires gain dimension 2");
  if (alpha.is_zero() || beta.is_zero() || alpha.cross(beta) == 0)
    throw std::invalid_argument("alpha and beta must be nonzero and linearly independent");

  auto [g1, s1] = zero_colour_gains(g, delta, Colour::Blue);
  Int den = alpha.cross(beta);
  Int aden = den < 0 ? -den : den;
  Int amax = 0;
  bool conforming = true;
  for (int e = 0; e < g1.edge_count(); ++e) {
    if (delta[e] != Colour::Red) continue;
    Int num = g1.edge(e).gain.cross(beta);
    if (num == 0) conforming = false;
    if (num < 0) num = -num;
    amax = std::max(amax, num);
  }

  // An input whose red alpha-coefficients are already nonzero needs no
  // component shifts; this keeps conforming examples unchanged.
  SwitchingSequence s2;
  if (!conforming) {
    Int n = amax / aden + 1;  // n > |a| for every red alpha-coefficient a
    GainVec mu = n * (alpha + beta);
    Components bc = components_of_edges(g1, colour_edges(g1, delta, Colour::Blue));
    for (int v = 0; v < g1.vertex_count(); ++v) {
      Int i = bc.comp_of[v];
      if (i != 0) s2.emplace_back(v, i * mu);
    }
  }
  GainGraph g2 = apply_switching(g1, s2);

  Subgroup zbeta = hnf(2, {beta});
  for (int e = 0; e < g2.edge_count(); ++e) {
    const GainEdge& ed = g2.edge(e);
    if (delta[e] == Colour::Blue) {
      if (!contains(zbeta, ed.gain)) throw std::logic_error("blue gain left the beta line");
    } else if (ed.gain.cross(beta) == 0) {
      throw std::logic_error("red edge with zero alpha-coefficient after normalization");
    }
  }
  return {std::move(g2), concat(std::move(s1), s2)};
}

ConstructResult construct_type2(const GainGraph& g, const Colouring& delta, const GainVec& alpha,
                                const GainVec& beta) {
  if (g.k() != 2) throw std::invalid_argument("requires gain dimension 2");
  Classification cls = classify(g, delta);
  if (!cls.type2.ok) throw std::invalid_argument("not a type 2 colouring: " + cls.type2.reason);
  if (alpha.is_zero())
    throw std::invalid_argument("alpha must be nonzero (swap colours for the mirror case)");

  GainVec beta_eff = beta;
  if (beta_eff.is_zero()) {
    // Trivial blue span: any direction independent of alpha works as long as
    // no red edge inside a blue component has its gain on that line (switching
    // cannot change those). Prefer the smallest such direction so downstream
    // scissor detection sees the pair; fall back to a direction beyond every
    // gain coordinate, which no achievable gain can parallel.
    auto [g1, s1] = zero_colour_gains(g, delta, Colour::Blue);
    (void)s1;
    Components bc = components_of_edges(g1, colour_edges(g1, delta, Colour::Blue));
    std::vector<GainVec> blocked;
    for (int e = 0; e < g1.edge_count(); ++e) {
      if (delta[e] != Colour::Red) continue;
      const GainEdge& ed = g1.edge(e);
      if (bc.comp_of[ed.tail] == bc.comp_of[ed.head]) blocked.push_back(ed.gain);
    }
    const long long cand[][2] = {{0, 1}, {1, 0}, {1, 1}, {1, -1},
                                 {1, 2}, {2, 1}, {1, -2}, {2, -1}};
    for (const auto& c : cand) {
      GainVec b = GainVec(Int(c[0]), Int(c[1]));
      if (alpha.cross(b) == 0) continue;
      bool clear = true;
      for (const auto& gv : blocked)
        if (gv.cross(b) == 0) clear = false;
      if (clear) {
        beta_eff = b;
        break;
      }
    }
    if (beta_eff.is_zero()) beta_eff = GainVec(1, max_gain_norm(g1) + 1);
  }

  auto [g2, seq] = normalize_type2(g, delta, alpha, beta_eff);
  Int den = alpha.cross(beta_eff);

  std::vector<int> red = colour_edges(g2, delta, Colour::Red);
  Components rc = components_of_edges(g2, red);

  // Scaled potential: qs(tail) - qs(head) = b_num on red edges, q = qs / den.
  std::vector<std::vector<std::tuple<int, int, bool>>> adj(g2.vertex_count());
  for (int e : red) {
    const GainEdge& ed = g2.edge(e);
    if (ed.tail == ed.head) continue;
    adj[ed.tail].emplace_back(ed.head, e, true);
    adj[ed.head].emplace_back(ed.tail, e, false);
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());
  std::vector<Int> qs(g2.vertex_count(), Int(0));
  std::vector<bool> seen(g2.vertex_count(), false);
  for (const auto& comp : rc.members) {
    int root = comp.front();
    seen[root] = true;
    std::queue<int> bfs;
    bfs.push(root);
    while (!bfs.empty()) {
      int v = bfs.front();
      bfs.pop();
      for (const auto& [w, e, fwd] : adj[v]) {
        if (seen[w]) continue;
        seen[w] = true;
        Int b_num = alpha.cross(g2.traversal_gain(e, fwd));
        qs[w] = qs[v] - b_num;
        bfs.push(w);
      }
    }
  }
  for (int e : red) {
    const GainEdge& ed = g2.edge(e);
    Int b_num = alpha.cross(ed.gain);
    if (qs[ed.tail] - qs[ed.head] != b_num)
      throw std::logic_error("type 2 potential inconsistent on a chord");
    if (ed.gain.cross(beta_eff) == 0) separation_failure("construct_type2");
  }
  for (int e = 0; e < g2.edge_count(); ++e) {
    if (delta[e] != Colour::Blue) continue;
    const GainEdge& ed = g2.edge(e);
    if (rc.comp_of[ed.tail] != rc.comp_of[ed.head]) continue;
    // blue gain = c*beta; need q(tail) - q(head) != c, i.e. scaled difference != c*den
    Int c_num = alpha.cross(ed.gain);  // = c * den
    if (qs[ed.tail] - qs[ed.head] == c_num) separation_failure("construct_type2");
  }

  Type2Params params;
  params.alpha = to_ivec(alpha);
  params.beta = to_ivec(beta_eff);
  params.q_den = to_i64(den);
  params.row.resize(g.vertex_count());
  params.q_num.resize(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    params.row[v] = rc.comp_of[v];
    params.q_num[v] = to_i64(qs[v]);
  }

  ParametricFlex flex;
  flex.kind = FlexKind::Type2Scissor;
  flex.k = 2;
  flex.nverts = g.vertex_count();
  flex.t0 = 0;
  flex.t1 = 2 * kPi;
  flex.sigma = sigma_of(seq, g.vertex_count(), 2);
  flex.params = std::move(params);
  return ConstructResult{g, std::move(flex)};
}

ConstructResult construct_rank_deficient(const GainGraph& g) {
  if (g.k() != 2) throw std::invalid_argument("requires gain dimension 2");
  if (graph_rank(g) > 1) throw std::invalid_argument("gain span has rank 2");

  auto [g1, seq] = spanning_tree_normalize(g);
  Subgroup s = span_joint(g1);
  GainVec alpha = s.is_trivial() ? GainVec(Int(1), Int(0)) : primitive_direction(s.rows[0]);
  GainVec beta = alpha.cross(GainVec(Int(0), Int(1))) != 0 ? GainVec(Int(0), Int(1))
                                                           : GainVec(Int(1), Int(0));

  Subgroup zalpha = hnf(2, {alpha});
  for (const auto& e : g1.edges())
    if (!contains(zalpha, e.gain)) throw std::logic_error("gain off the span line");

  ScaleParams params;
  params.alpha = to_ivec(alpha);
  params.beta = to_ivec(beta);
  params.p0 = injective_grid(g.vertex_count());
  params.c1 = kC1;
  params.c2 = kC2;

  ParametricFlex flex;
  flex.kind = FlexKind::RankDeficientScale;
  flex.k = 2;
  flex.nverts = g.vertex_count();
  flex.t0 = 0;
  flex.t1 = 1;
  flex.sigma = sigma_of(seq, g.vertex_count(), 2);
  flex.params = std::move(params);
  return ConstructResult{g, std::move(flex)};
}

ConstructResult extend_flex_henneberg(const GainGraph& g, const ParametricFlex& flex, int v1,
                                      const GainVec& gamma) {
  if (v1 < 0 || v1 >= g.vertex_count()) throw std::invalid_argument("unknown vertex");
  if (gamma.k != g.k()) throw std::invalid_argument("gain dimension mismatch");
  if (flex.nverts != g.vertex_count()) throw std::invalid_argument("flex does not fit the graph");

  const int probes = 256;
  double max_half = 0;
  for (int i = 0; i < probes; ++i) {
    double t = flex.t0 + (flex.t1 - flex.t0) * i / (probes - 1);
    PlacementLattice pl = flex.sample(t);
    auto lg = pl.lattice_apply(static_cast<double>(to_i64(gamma.c[0])),
                               static_cast<double>(to_i64(gamma.c[1])));
    double n = std::hypot(lg[0], lg[1]);
    if (n < 1e-9) throw std::invalid_argument("lattice image of gamma vanishes along the flex");
    max_half = std::max(max_half, 0.5 * n);
  }

  // The second edge is stored from v1 to the new vertex so that the printed
  // angle formula closes the circle exactly for both edges.
  GainGraph extended = henneberg1_extend(g, v1, v1, GainVec::zero(g.k()), -gamma);

  HennebergParams params;
  params.inner = std::make_shared<ParametricFlex>(flex);
  params.v1 = v1;
  params.gamma = to_ivec(gamma);
  params.r = 1.0 + max_half;

  ParametricFlex out;
  out.kind = FlexKind::HennebergCircle;
  out.k = flex.k;
  out.nverts = flex.nverts + 1;
  out.t0 = flex.t0;
  out.t1 = flex.t1;
  out.sigma.assign(out.nverts, IVec2{0, 0});
  out.params = std::move(params);
  return ConstructResult{std::move(extended), std::move(out)};
}

BuildOutcome construct_for_colouring(const GainGraph& g, const Colouring& delta) {
  Classification cls = classify(g, delta);
  BuildOutcome out;
  out.colouring = delta;
  if (cls.fixed_lattice.ok) {
    out.recipe = Recipe::FixedLatticeShear;
    out.result = construct_fixed_lattice(g, delta);
    return out;
  }
  if (cls.type2.ok) {
    Colouring d = delta;
    GainVec alpha = cls.type2_alpha, beta = cls.type2_beta;
    if (alpha.is_zero()) {
      for (auto& c : d) c = other(c);  // mirror case: swap colours
      std::swap(alpha, beta);
    }
    out.recipe = Recipe::Type2Scissor;
    out.colouring = d;
    out.result = construct_type2(g, d, alpha, beta);
    return out;
  }
  if (cls.flexible_1_lattice.ok) {
    out.recipe = Recipe::OnePeriodicGrid;
    out.result = construct_flexible_1lattice(g, delta);
    return out;
  }
  if (cls.type1.ok) {
    out.recipe = Recipe::Type1Grid;
    out.result = construct_type1(g, delta);
    return out;
  }
  throw std::invalid_argument("colouring does not classify into a constructible class");
}

AutoOutcome construct_auto(const GainGraph& g) {
  AutoOutcome out;
  if (is_balanced(g)) {
    out.status = AutoOutcome::Built;
    out.build = BuildOutcome{Recipe::BalancedRotation, std::nullopt, construct_balanced(g)};
    return out;
  }
  if (g.k() == 2 && graph_rank(g) < 2) {
    out.status = AutoOutcome::Built;
    out.build =
        BuildOutcome{Recipe::RankDeficientScale, std::nullopt, construct_rank_deficient(g)};
    return out;
  }
  std::optional<Colouring> best;
  int best_pref = 99;
  bool saw_type3 = false;
  auto pref_of = [](const Classification& c) {
    if (c.fixed_lattice.ok) return 0;
    if (c.type2.ok || c.flexible_1_lattice.ok) return 1;
    if (c.type1.ok) return 2;
    return 99;
  };
  enumerate_colourings(g, ColourClass::Nbac, std::numeric_limits<std::uint64_t>::max(),
                       [&](const Colouring& col, const Classification& c) {
                         if (c.type3.ok) saw_type3 = true;
                         int p = pref_of(c);
                         if (p < best_pref) {
                           best_pref = p;
                           best = col;
                         }
                         return best_pref > 0;  // stop once the top preference is found
                       });
  if (best) {
    out.status = AutoOutcome::Built;
    out.build = construct_for_colouring(g, *best);
    return out;
  }
  out.status = saw_type3 ? AutoOutcome::OnlyType3 : AutoOutcome::Nothing;
  return out;
}

ConstructResult construct_from_decision(const GainGraph& g, const Decision& d) {
  switch (d.recipe) {
    case Recipe::BalancedRotation: return construct_balanced(g);
    case Recipe::RankDeficientScale: return construct_rank_deficient(g);
    case Recipe::FixedLatticeShear:
      return construct_fixed_lattice(g, d.witness_colouring.value());
    case Recipe::OnePeriodicGrid:
      return construct_flexible_1lattice(g, d.witness_colouring.value());
    case Recipe::Type1Grid: return construct_type1(g, d.witness_colouring.value());
    case Recipe::Type2Scissor:
      return construct_for_colouring(g, d.witness_colouring.value()).result;
    case Recipe::None: break;
  }
  throw std::invalid_argument("decision carries no constructible recipe");
}

}  // namespace periflex
