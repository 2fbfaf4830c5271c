#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "testutil.hpp"

using namespace periflex;

namespace {

GainVec v2(long long a, long long b) { return GainVec(Int(a), Int(b)); }
GainVec v1(long long a) { return GainVec(Int(a)); }

FlexPath constant_path(const PlacementLattice& pl) {
  return FlexPath{0.0, 1.0, [pl](double) { return pl; }};
}

// Applies a rigid motion (rotation by w*t plus translation) to every frame.
FlexPath rigid_motion_wrap(const FlexPath& base, double w, double tx, double ty) {
  auto at = base.at;
  return FlexPath{base.t0, base.t1, [at, w, tx, ty](double t) {
                    PlacementLattice pl = at(t);
                    double c = std::cos(w * t), s = std::sin(w * t);
                    auto rot = [&](std::array<double, 2> v) {
                      return std::array<double, 2>{c * v[0] - s * v[1], s * v[0] + c * v[1]};
                    };
                    for (auto& p : pl.p) {
                      p = rot(p);
                      p[0] += tx * t;
                      p[1] += ty * t;
                    }
                    pl.L[0] = rot(pl.L[0]);
                    pl.L[1] = rot(pl.L[1]);
                    return pl;
                  }};
}

}  // namespace

TEST_CASE("edge residual") {
  // constant flex has residual zero
  GainGraph g(2, 2);
  g.add_edge(0, 1, v2(1, 0));
  PlacementLattice pl;
  pl.k = 2;
  pl.p = {{0, 0}, {3, 0}};
  pl.L = {{{1, 0}, {0, 1}}};
  CHECK(edge_residual(g, constant_path(pl), 16) == 0.0);

  // construction outputs stay below tolerance
  auto f = fixtures::z2_row_grid();
  GraphDocument doc = fixtures::doc_of(f);
  ConstructResult r = construct_type1(doc.graph, fixtures::colouring_of(f, "printed"));
  CHECK(edge_residual(r.graph, FlexPath::of(r.flex), 64) < 1e-9);

  // fault injection: perturbing one vertex shows up in the residual
  FlexPath base = FlexPath::of(r.flex);
  auto at = base.at;
  FlexPath bad{base.t0, base.t1, [at](double t) {
                 PlacementLattice pl = at(t);
                 pl.p[0][0] += 1e-3 * t;
                 return pl;
               }};
  CHECK(edge_residual(r.graph, bad, 64) > 1e-6);

  CHECK_THROWS_AS(edge_residual(g, constant_path(pl), 1), std::invalid_argument);
}

TEST_CASE("angle function") {
  GainGraph g(2, 3);
  int e1 = g.add_edge(0, 1, v2(0, 0));
  int e2 = g.add_edge(0, 2, v2(0, 0));
  PlacementLattice pl;
  pl.k = 2;
  pl.p = {{0, 0}, {2, 0}, {0, 5}};
  pl.L = {{{1, 0}, {0, 1}}};

  // self inner product equals the squared edge length
  CHECK(angle_function(g, e1, e1, pl) == doctest::Approx(4.0));
  // perpendicular edges
  CHECK(angle_function(g, e1, e2, pl) == doctest::Approx(0.0));

  // invariance under a global rotation of placement and lattice
  double c = std::cos(0.7), s = std::sin(0.7);
  PlacementLattice rot = pl;
  auto apply = [&](std::array<double, 2>& v) {
    v = {c * v[0] - s * v[1], s * v[0] + c * v[1]};
  };
  for (auto& p : rot.p) apply(p);
  apply(rot.L[0]);
  apply(rot.L[1]);
  CHECK(angle_function(g, e1, e2, rot) == doctest::Approx(angle_function(g, e1, e2, pl)));
}

TEST_CASE("nontriviality detection") {
  // rotation flex on two or more placed vertices is nontrivial
  GainGraph g(2, 2);
  g.add_edge(0, 1, v2(0, 0));
  ConstructResult rot = construct_balanced(g);
  CHECK(nontriviality(rot.graph, FlexPath::of(rot.flex), 64).nontrivial);

  // a rigid motion of a constant placement is trivial
  PlacementLattice pl;
  pl.k = 2;
  pl.p = {{0, 0}, {3, 1}};
  pl.L = {{{1, 0}, {0, 1}}};
  FlexPath rigid = rigid_motion_wrap(constant_path(pl), 0.9, 0.3, -0.2);
  CHECK_FALSE(nontriviality(g, rigid, 64).nontrivial);

  // shear construction is detected via a cross-component pair
  auto f = fixtures::z2_double_square_apex();
  GraphDocument doc = fixtures::doc_of(f);
  ConstructResult shear = construct_fixed_lattice(doc.graph, fixtures::colouring_of(f, "printed"));
  NontrivialityReport rep = nontriviality(shear.graph, FlexPath::of(shear.flex), 64);
  CHECK(rep.nontrivial);
  CHECK_FALSE(rep.witness.empty());
}

TEST_CASE("verdicts are invariant under rigid motions of every frame") {
  auto f = fixtures::z2_row_scissor();
  GraphDocument doc = fixtures::doc_of(f);
  ConstructResult r =
      construct_type2(doc.graph, fixtures::colouring_of(f, "printed"), v2(1, 0), v2(0, 1));
  FlexPath base = FlexPath::of(r.flex);
  FlexPath moved = rigid_motion_wrap(base, 1.3, 0.5, 0.25);
  CHECK(edge_residual(r.graph, moved, 64) < 1e-9);
  CHECK(nontriviality(r.graph, moved, 64).nontrivial ==
        nontriviality(r.graph, base, 64).nontrivial);
}

TEST_CASE("scissor detection") {
  auto f = fixtures::z2_row_scissor();
  GraphDocument doc = fixtures::doc_of(f);
  ConstructResult t2 =
      construct_type2(doc.graph, fixtures::colouring_of(f, "printed"), v2(1, 0), v2(0, 1));
  ScissorReport rep = scissor_detect(FlexPath::of(t2.flex), 2, 64);
  CHECK(rep.scissor);
  CHECK(rep.offdiag_range > 1.9);
  CHECK(rep.alpha.cross(rep.beta) != 0);

  GainGraph g(2, 2);
  g.add_edge(0, 1, v2(0, 0));
  ConstructResult rot = construct_balanced(g);
  CHECK_FALSE(scissor_detect(FlexPath::of(rot.flex), 2, 64).scissor);

  GainGraph loop(2, 1);
  loop.add_edge(0, 0, v2(1, 0));
  ConstructResult scale = construct_rank_deficient(loop);
  CHECK_FALSE(scissor_detect(FlexPath::of(scale.flex), 2, 64).scissor);
}

TEST_CASE("bounded walk oracle basics") {
  GainGraph tri(2, 3);
  tri.add_edge(0, 1, v2(0, 0));
  tri.add_edge(1, 2, v2(0, 0));
  tri.add_edge(0, 2, v2(0, 0));
  Colouring delta = {Colour::Red, Colour::Red, Colour::Blue};
  OracleResult r = bounded_walk_oracle(tri, delta, Colour::Red, OracleCondition::Balanced,
                                       GainVec::zero(2), 1);
  REQUIRE(r.found);
  CHECK(r.witness->gain.is_zero());

  auto f = fixtures::z2_parallel_loop();
  GraphDocument doc = fixtures::doc_of(f);
  Colouring printed = fixtures::colouring_of(f, "printed");
  for (Colour colour : {Colour::Red, Colour::Blue}) {
    OracleResult none = bounded_walk_oracle(doc.graph, printed, colour,
                                            OracleCondition::Balanced, GainVec::zero(2), 3);
    CHECK_FALSE(none.found);
    CHECK_FALSE(none.budget_exhausted);
  }
}

TEST_CASE("oracle and coset checks agree on random instances") {
  std::mt19937_64 rng(811);
  int done = 0;
  for (int trial = 0; done < 120; ++trial) {
    int k = trial % 2 ? 1 : 2;
    GainGraph g = testutil::random_graph(rng, k, 5, 8, 2);
    if (g.edge_count() == 0) continue;
    ++done;
    Colouring delta(g.edge_count());
    for (auto& c : delta) c = rng() & 1 ? Colour::Blue : Colour::Red;
    std::vector<GainVec> alphas = {GainVec::zero(k)};
    alphas.push_back(k == 1 ? v1(1) : v2(1, 0));
    alphas.push_back(k == 1 ? v1(2) : v2(1, -1));
    for (Colour colour : {Colour::Red, Colour::Blue}) {
      struct Case {
        OracleCondition cond;
        GainVec alpha;
      };
      std::vector<Case> cases = {{OracleCondition::Balanced, GainVec::zero(k)},
                                 {OracleCondition::AnyGain, GainVec::zero(k)}};
      for (const auto& a : alphas) cases.push_back({OracleCondition::InLine, a});
      for (const auto& cse : cases) {
        std::optional<AlmostWitness> impl;
        switch (cse.cond) {
          case OracleCondition::Balanced: impl = balanced_almost_circuit(g, delta, colour); break;
          case OracleCondition::AnyGain: impl = almost_circuit_any_gain(g, delta, colour); break;
          case OracleCondition::InLine:
            impl = almost_circuit_gain_in_line(g, delta, colour, cse.alpha);
            break;
        }
        OracleResult oracle = bounded_walk_oracle(g, delta, colour, cse.cond, cse.alpha, 3);
        if (oracle.found) CHECK(impl.has_value());
        if (impl) {
          int opposite = 0;
          for (const WalkStep& s : impl->walk)
            if (delta[s.edge] != colour) ++opposite;
          CHECK(opposite == 1);
          CHECK(circuit_gain(g, impl->walk) == impl->gain);
          if (cse.cond == OracleCondition::Balanced) CHECK(impl->gain.is_zero());
          if (cse.cond == OracleCondition::InLine)
            CHECK(contains(hnf(k, {cse.alpha}), impl->gain));
        }
      }
    }
  }
}

TEST_CASE("verify_flex assembles a coherent report") {
  auto f = fixtures::z1_row_grid();
  GraphDocument doc = fixtures::doc_of(f);
  ConstructResult r = construct_flexible_1lattice(doc.graph, fixtures::colouring_of(f, "printed"));
  FlexReport rep = verify_flex(r.graph, FlexPath::of(r.flex), 64, 1e-9);
  CHECK(rep.max_edge_residual < 1e-9);
  CHECK(rep.min_separation > 0.5);
  CHECK(rep.nontrivial.nontrivial);
  CHECK(rep.samples == 64);
  CHECK(rep.gram.size() == 1);           // k = 1: a single Gram entry
  CHECK(rep.gram[0].hi - rep.gram[0].lo > 1.0);  // the lattice column length moves
  // scissor implies nontrivial (vacuously false here)
  if (rep.scissor.scissor) CHECK(rep.nontrivial.nontrivial);
}
