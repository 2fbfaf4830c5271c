#include "periflex/verify.hpp"

#include <cmath>
#include <numeric>
#include <unordered_set>

namespace periflex {

namespace {

constexpr double kVaryEps = 1e-6;  // a quantity "varies" once its range beats 10x this

std::array<double, 2> edge_vector(const GainGraph& g, int e, const PlacementLattice& pl) {
  const GainEdge& ed = g.edge(e);
  auto lg = pl.lattice_apply(static_cast<double>(to_i64(ed.gain.c[0])),
                             static_cast<double>(to_i64(ed.gain.c[1])));
  return {pl.p[ed.tail][0] - pl.p[ed.head][0] - lg[0], pl.p[ed.tail][1] - pl.p[ed.head][1] - lg[1]};
}

double sq(double x) { return x * x; }

}  // namespace

double edge_residual(const GainGraph& g, const FlexPath& path, int samples) {
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");
  std::vector<double> base(g.edge_count());
  PlacementLattice pl0 = path.at(path.t0);
  for (int e = 0; e < g.edge_count(); ++e) {
    auto v = edge_vector(g, e, pl0);
    base[e] = sq(v[0]) + sq(v[1]);
  }
  double worst = 0;
  for (double t : path.grid(samples)) {
    PlacementLattice pl = path.at(t);
    for (int e = 0; e < g.edge_count(); ++e) {
      auto v = edge_vector(g, e, pl);
      worst = std::max(worst, std::abs(sq(v[0]) + sq(v[1]) - base[e]));
    }
  }
  return worst;
}

double min_edge_separation(const GainGraph& g, const FlexPath& path, int samples) {
  double best = std::numeric_limits<double>::infinity();
  for (double t : path.grid(samples)) {
    PlacementLattice pl = path.at(t);
    for (int e = 0; e < g.edge_count(); ++e) {
      auto v = edge_vector(g, e, pl);
      best = std::min(best, std::hypot(v[0], v[1]));
    }
  }
  return best;
}

double angle_function(const GainGraph& g, int e1, int e2, const PlacementLattice& pl) {
  auto a = edge_vector(g, e1, pl);
  auto b = edge_vector(g, e2, pl);
  return a[0] * b[0] + a[1] * b[1];
}

namespace {

struct RangeTracker {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void feed(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double range() const { return hi - lo; }
};

}  // namespace

NontrivialityReport nontriviality(const GainGraph& g, const FlexPath& path, int samples) {
  if (samples < 8) throw std::invalid_argument("need at least 8 samples");
  const int k = path.at(path.t0).k;
  long long bound = 1;
  for (const auto& e : g.edges()) bound = std::max(bound, to_i64(e.gain.inf_norm()));
  bound += 1;

  struct Probe {
    int v, w;
    long long g0, g1;
  };
  std::vector<Probe> probes;
  const int n = static_cast<int>(path.at(path.t0).p.size());
  long long lo1 = k == 2 ? -bound : -bound;
  for (int v = 0; v < n; ++v) {
    for (int w = v; w < n; ++w) {
      for (long long a = -bound; a <= bound; ++a) {
        long long b_from = k == 2 ? -bound : 0, b_to = k == 2 ? bound : 0;
        for (long long b = b_from; b <= b_to; ++b) {
          if (v == w) {
            // (v,v,g) and (v,v,-g) probe the same quantity; keep one, skip zero
            if (a < 0 || (a == 0 && b <= 0)) continue;
          }
          probes.push_back(Probe{v, w, a, b});
        }
      }
    }
  }
  (void)lo1;

  std::vector<RangeTracker> pr(probes.size());
  RangeTracker gram[3];
  for (double t : path.grid(samples)) {
    PlacementLattice pl = path.at(t);
    for (size_t i = 0; i < probes.size(); ++i) {
      const Probe& q = probes[i];
      auto lg = pl.lattice_apply(static_cast<double>(q.g0), static_cast<double>(q.g1));
      pr[i].feed(sq(pl.p[q.v][0] - pl.p[q.w][0] - lg[0]) + sq(pl.p[q.v][1] - pl.p[q.w][1] - lg[1]));
    }
    gram[0].feed(pl.L[0][0] * pl.L[0][0] + pl.L[0][1] * pl.L[0][1]);
    if (k == 2) {
      gram[1].feed(pl.L[1][0] * pl.L[1][0] + pl.L[1][1] * pl.L[1][1]);
      gram[2].feed(pl.L[0][0] * pl.L[1][0] + pl.L[0][1] * pl.L[1][1]);
    }
  }

  NontrivialityReport rep;
  const double threshold = 10 * kVaryEps;
  for (size_t i = 0; i < probes.size(); ++i) {
    if (pr[i].range() > threshold && pr[i].range() > rep.range) {
      const Probe& q = probes[i];
      rep.nontrivial = true;
      rep.range = pr[i].range();
      rep.witness = "squared distance of vertex pair (" + std::to_string(q.v) + "," +
                    std::to_string(q.w) + ") at gain (" + std::to_string(q.g0) +
                    (k == 2 ? "," + std::to_string(q.g1) : "") + ")";
    }
  }
  const char* gram_names[3] = {"gram(0,0)", "gram(1,1)", "gram(0,1)"};
  for (int i = 0; i < (k == 2 ? 3 : 1); ++i) {
    if (gram[i].range() > threshold && gram[i].range() > rep.range) {
      rep.nontrivial = true;
      rep.range = gram[i].range();
      rep.witness = gram_names[i];
    }
  }
  return rep;
}

namespace {

// Best rational approximation p/q of x with q <= qmax (continued fractions).
std::pair<long long, long long> rationalize(double x, long long qmax) {
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 40; ++it) {
    double fl = std::floor(v);
    long long a = static_cast<long long>(fl);
    long long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > qmax || q2 < 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = v - fl;
    if (frac < 1e-12) break;
    v = 1.0 / frac;
  }
  return {p1, std::max(1ll, q1)};
}

}  // namespace

ScissorReport scissor_detect(const FlexPath& path, int k, int samples) {
  ScissorReport rep;
  rep.alpha = GainVec::zero(k);
  rep.beta = GainVec::zero(k);
  if (k != 2) return rep;

  auto ts = path.grid(samples);
  std::vector<PlacementLattice> frames;
  frames.reserve(ts.size());
  for (double t : ts) frames.push_back(path.at(t));

  auto try_pairs = [&](std::vector<std::array<long long, 2>> cands) -> bool {
    std::sort(cands.begin(), cands.end(), [](const auto& x, const auto& y) {
      auto n = [](const auto& v) { return v[0] * v[0] + v[1] * v[1]; };
      if (n(x) != n(y)) return n(x) < n(y);
      return x < y;
    });
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    std::vector<RangeTracker> norms(cands.size());
    std::vector<std::vector<std::array<double, 2>>> imgs(cands.size());
    for (const PlacementLattice& pl : frames) {
      for (size_t i = 0; i < cands.size(); ++i) {
        auto lg = pl.lattice_apply(static_cast<double>(cands[i][0]),
                                   static_cast<double>(cands[i][1]));
        imgs[i].push_back(lg);
        norms[i].feed(sq(lg[0]) + sq(lg[1]));
      }
    }
    std::vector<size_t> constant;
    for (size_t i = 0; i < cands.size(); ++i) {
      double scale = std::max(1.0, norms[i].hi);
      if (norms[i].range() < kVaryEps * scale) constant.push_back(i);
    }
    for (size_t ii = 0; ii < constant.size(); ++ii) {
      for (size_t jj = ii + 1; jj < constant.size(); ++jj) {
        size_t i = constant[ii], j = constant[jj];
        long long cross = cands[i][0] * cands[j][1] - cands[i][1] * cands[j][0];
        if (cross == 0) continue;
        RangeTracker dot;
        for (size_t s = 0; s < imgs[i].size(); ++s)
          dot.feed(imgs[i][s][0] * imgs[j][s][0] + imgs[i][s][1] * imgs[j][s][1]);
        if (dot.range() > 10 * kVaryEps) {
          rep.scissor = true;
          rep.alpha = GainVec(Int(cands[i][0]), Int(cands[i][1]));
          rep.beta = GainVec(Int(cands[j][0]), Int(cands[j][1]));
          rep.offdiag_range = dot.range();
          return true;
        }
      }
    }
    return false;
  };

  // First pass: the small box.
  std::vector<std::array<long long, 2>> box;
  for (long long a = 0; a <= 2; ++a)
    for (long long b = -2; b <= 2; ++b) {
      if (a == 0 && b <= 0) continue;  // lex-positive half, skip zero
      box.push_back({a, b});
    }
  if (try_pairs(box)) return rep;

  // Second pass: directions with constant squared length are null directions
  // of the Gram drift D_t = G_t - G_0; solve the quadratic form at the sample
  // of largest drift and rationalize its roots.
  auto gram = [](const PlacementLattice& pl) {
    std::array<double, 3> g;  // g11, g12, g22
    g[0] = pl.L[0][0] * pl.L[0][0] + pl.L[0][1] * pl.L[0][1];
    g[1] = pl.L[0][0] * pl.L[1][0] + pl.L[0][1] * pl.L[1][1];
    g[2] = pl.L[1][0] * pl.L[1][0] + pl.L[1][1] * pl.L[1][1];
    return g;
  };
  std::array<double, 3> g0 = gram(frames.front());
  std::array<double, 3> best{0, 0, 0};
  double best_mag = 0;
  for (const PlacementLattice& pl : frames) {
    std::array<double, 3> gt = gram(pl);
    std::array<double, 3> d{gt[0] - g0[0], gt[1] - g0[1], gt[2] - g0[2]};
    double mag = std::abs(d[0]) + 2 * std::abs(d[1]) + std::abs(d[2]);
    if (mag > best_mag) {
      best_mag = mag;
      best = d;
    }
  }
  if (best_mag < 10 * kVaryEps) return rep;  // lattice Gram does not move at all

  // d0 x^2 + 2 d1 x y + d2 y^2 = 0: roots in the slope y/x (plus x = 0).
  std::vector<std::array<long long, 2>> cands;
  const long long qmax = 64;
  auto add_slope = [&](double slope) {
    auto [p, q] = rationalize(slope, qmax);
    long long g = std::abs(std::gcd(p, q));
    if (g > 0) {
      p /= g;
      q /= g;
    }
    if (q < 0) {
      p = -p;
      q = -q;
    }
    std::array<long long, 2> v{q, p};
    if (v[0] < 0 || (v[0] == 0 && v[1] < 0)) {
      v[0] = -v[0];
      v[1] = -v[1];
    }
    if (v[0] != 0 || v[1] != 0) cands.push_back(v);
  };
  double scale = std::max({std::abs(best[0]), std::abs(best[1]), std::abs(best[2])});
  if (std::abs(best[2]) < 1e-9 * scale) {
    cands.push_back({0, 1});
    if (std::abs(best[1]) > 1e-9 * scale) add_slope(-best[0] / (2 * best[1]));
  } else {
    double disc = best[1] * best[1] - best[0] * best[2];
    if (disc >= 0) {
      double root = std::sqrt(disc);
      add_slope((-best[1] + root) / best[2]);
      add_slope((-best[1] - root) / best[2]);
    }
  }
  try_pairs(std::move(cands));
  return rep;
}

FlexReport verify_flex(const GainGraph& g, const FlexPath& path, int samples, double tol) {
  FlexReport rep;
  rep.samples = samples;
  rep.tolerance = tol;
  rep.max_edge_residual = edge_residual(g, path, samples);
  rep.min_separation = min_edge_separation(g, path, samples);
  const int k = path.at(path.t0).k;
  RangeTracker gram[3];
  for (double t : path.grid(samples)) {
    PlacementLattice pl = path.at(t);
    gram[0].feed(pl.L[0][0] * pl.L[0][0] + pl.L[0][1] * pl.L[0][1]);
    if (k == 2) {
      gram[1].feed(pl.L[1][0] * pl.L[1][0] + pl.L[1][1] * pl.L[1][1]);
      gram[2].feed(pl.L[0][0] * pl.L[1][0] + pl.L[0][1] * pl.L[1][1]);
    }
  }
  rep.gram.push_back(GramRange{0, 0, gram[0].lo, gram[0].hi});
  if (k == 2) {
    rep.gram.push_back(GramRange{1, 1, gram[1].lo, gram[1].hi});
    rep.gram.push_back(GramRange{0, 1, gram[2].lo, gram[2].hi});
  }
  rep.nontrivial = nontriviality(g, path, std::max(samples, 8));
  rep.scissor = scissor_detect(path, k, samples);
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

struct OracleSearch {
  const GainGraph& g;
  const Colouring& delta;
  Colour colour;
  OracleCondition cond;
  int bound;
  std::uint64_t budget;
  bool exhausted = false;
  long long a0 = 0, a1 = 0;  // line direction

  struct Arc {
    int to;
    int edge;
    bool fwd;
    long long g0, g1;
  };
  std::vector<std::vector<Arc>> incidence;  // same-colour arcs per vertex
  std::vector<int> use_count;
  Walk steps;
  // Dedup on (vertex, per-edge use counts, accumulated gain): a pruned arrival
  // has the same residual capacities and gain as the first one, so it cannot
  // reach anything new. Gains stay tiny (<= bound * sum of |gains|), so the
  // whole state packs into one word.
  std::unordered_set<std::uint64_t> seen;

  OracleSearch(const GainGraph& g_, const Colouring& d_, Colour c_, OracleCondition cond_,
               const GainVec& a_, int bound_, std::uint64_t budget_)
      : g(g_), delta(d_), colour(c_), cond(cond_), bound(bound_), budget(budget_) {
    if (g.edge_count() > 12) throw std::invalid_argument("oracle supports at most 12 edges");
    if (bound_ > 3) throw std::invalid_argument("oracle multiplicity bound is at most 3");
    a0 = to_i64(a_.c[0]);
    a1 = to_i64(a_.c[1]);
    if (std::abs(a0) >= (1 << 20) || std::abs(a1) >= (1 << 20))
      throw std::invalid_argument("oracle line direction too large");
    Int reach = 0;
    for (int e = 0; e < g.edge_count(); ++e) reach += Int(bound_) * g.edge(e).gain.inf_norm();
    if (reach >= 4096) throw std::invalid_argument("oracle gains too large");
    use_count.assign(g.edge_count(), 0);
    incidence.resize(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e) {
      if (delta[e] != colour) continue;
      const GainEdge& ed = g.edge(e);
      long long g0 = to_i64(ed.gain.c[0]), g1 = to_i64(ed.gain.c[1]);
      incidence[ed.tail].push_back(Arc{ed.head, e, true, g0, g1});
      incidence[ed.head].push_back(Arc{ed.tail, e, false, -g0, -g1});
    }
  }

  bool gain_matches(long long t0, long long t1) const {
    switch (cond) {
      case OracleCondition::Balanced: return t0 == 0 && t1 == 0;
      case OracleCondition::AnyGain: return true;
      case OracleCondition::InLine:
        // t = c * alpha for an integer c
        if (a0 == 0 && a1 == 0) return t0 == 0 && t1 == 0;
        if (t0 * a1 != t1 * a0) return false;
        if (a0 != 0) return t0 % a0 == 0;
        return t1 % a1 == 0;
    }
    return false;
  }

  std::uint64_t encode(int at, long long c0, long long c1) const {
    std::uint64_t x = static_cast<unsigned>(at);
    for (int e = 0; e < g.edge_count(); ++e) x = (x << 2) | static_cast<unsigned>(use_count[e]);
    // per-coordinate gains are bounded by 3 * 12 * (max gain); offset into 12 bits
    x = (x << 13) | static_cast<std::uint64_t>(c0 + 4096);
    x = (x << 13) | static_cast<std::uint64_t>(c1 + 4096);
    return x;
  }

  bool dfs(int at, int target, long long c0, long long c1, long long og0, long long og1) {
    if (!seen.insert(encode(at, c0, c1)).second) return false;
    if (budget == 0) {
      exhausted = true;
      return false;
    }
    --budget;
    if (at == target && gain_matches(og0 + c0, og1 + c1)) return true;
    for (const Arc& a : incidence[at]) {
      if (use_count[a.edge] >= bound) continue;
      ++use_count[a.edge];
      steps.push_back(WalkStep{a.edge, a.fwd});
      if (dfs(a.to, target, c0 + a.g0, c1 + a.g1, og0, og1)) return true;
      steps.pop_back();
      --use_count[a.edge];
      if (exhausted) return false;
    }
    return false;
  }

  OracleResult run() {
    OracleResult out;
    for (int e = 0; e < g.edge_count(); ++e) {
      if (delta[e] == colour) continue;
      const GainEdge& ed = g.edge(e);
      std::fill(use_count.begin(), use_count.end(), 0);
      steps.clear();
      seen.clear();
      steps.push_back(WalkStep{e, true});
      if (dfs(ed.head, ed.tail, 0, 0, to_i64(ed.gain.c[0]), to_i64(ed.gain.c[1]))) {
        AlmostWitness w;
        w.opposite_edge = e;
        w.walk = steps;
        w.gain = circuit_gain(g, w.walk);
        out.found = true;
        out.witness = std::move(w);
        out.budget_exhausted = exhausted;
        return out;
      }
      if (exhausted) break;
    }
    out.budget_exhausted = exhausted;
    return out;
  }
};

}  // namespace

OracleResult bounded_walk_oracle(const GainGraph& g, const Colouring& delta, Colour colour,
                                 OracleCondition cond, const GainVec& alpha,
                                 int multiplicity_bound, std::uint64_t node_budget) {
  if (multiplicity_bound < 1) throw std::invalid_argument("multiplicity bound must be >= 1");
  if (static_cast<int>(delta.size()) != g.edge_count())
    throw std::invalid_argument("colouring is not total");
  OracleSearch s(g, delta, colour, cond, alpha, multiplicity_bound, node_budget);
  return s.run();
}

}  // namespace periflex
