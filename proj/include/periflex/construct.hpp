#pragma once

#include <array>
#include <memory>
#include <variant>

#include "periflex/colouring.hpp"

namespace periflex {

// Vertex positions plus lattice matrix, stored column-wise; column 1 is zero
// when k == 1. Realizes one frame of a motion.
struct PlacementLattice {
  int k = 1;
  std::vector<std::array<double, 2>> p;
  std::array<std::array<double, 2>, 2> L{{{0.0, 0.0}, {0.0, 0.0}}};  // L[j] = column j

  std::array<double, 2> lattice_apply(double g0, double g1) const {
    return {L[0][0] * g0 + L[1][0] * g1, L[0][1] * g0 + L[1][1] * g1};
  }
};

enum class FlexKind {
  FixedLatticeShear,
  BalancedRotation,
  OnePeriodicGrid,
  Type1Grid,
  Type2Scissor,
  RankDeficientScale,
  HennebergCircle
};
const char* flex_kind_name(FlexKind k);
std::optional<FlexKind> flex_kind_from_name(const std::string& name);

using IVec2 = std::array<long long, 2>;

struct ShearParams {
  std::vector<long long> x, y;  // balanced / unbalanced component indices
  double c1 = 0, c2 = 0;        // lattice diagonal (c2 unused for k == 1)
};
struct RotationParams {
  std::vector<IVec2> p0;
  double c1 = 1, c2 = 1;  // base lattice diagonal
};
struct Grid1Params {
  std::vector<long long> row, q;
};
struct Type1Params {
  std::vector<IVec2> pos;  // potential + component offset, exact integers
};
struct Type2Params {
  IVec2 alpha{0, 0}, beta{0, 0};
  std::vector<long long> row;
  std::vector<long long> q_num;  // potential scaled by q_den
  long long q_den = 1;           // = alpha x beta, nonzero
};
struct ScaleParams {
  IVec2 alpha{0, 0}, beta{0, 0};
  std::vector<IVec2> p0;
  double c1 = 0, c2 = 0;
};
struct ParametricFlex;
struct HennebergParams {
  std::shared_ptr<const ParametricFlex> inner;
  int v1 = 0;
  IVec2 gamma{0, 0};
  double r = 1;
};

// Closed-form motion: sample(t0) is the base placement-lattice, sample is
// continuous in t, and every construction keeps all edge lengths of its graph
// constant along the whole domain.
struct ParametricFlex {
  FlexKind kind = FlexKind::BalancedRotation;
  int k = 1;
  int nverts = 0;
  double t0 = 0, t1 = 0;
  std::vector<IVec2> sigma;  // per-vertex switching offsets mapping back to the input graph
  std::variant<ShearParams, RotationParams, Grid1Params, Type1Params, Type2Params, ScaleParams,
               HennebergParams>
      params;

  PlacementLattice sample(double t) const;
  PlacementLattice base() const { return sample(t0); }
};

struct ConstructResult {
  GainGraph graph;  // graph the flex preserves (the input, or its Henneberg extension)
  ParametricFlex flex;
};

// Gain-equivalent graph where every blue edge has trivial gain and no red edge
// has trivial gain. Requires a flexible 1-lattice or type 1 colouring.
std::pair<GainGraph, SwitchingSequence> normalize_blue_trivial(const GainGraph& g,
                                                               const Colouring& delta);

// Integer potential q with q(head) - q(tail) = factor * gain on every edge of
// the subgraph; consistency is checked on every chord.
std::vector<GainVec> red_potential(const GainGraph& g, const std::vector<int>& edge_ids,
                                   const Int& factor);

// Gain-equivalent graph where each red gain is a*alpha + b*beta with a != 0 and
// each blue gain lies in Z*beta. alpha, beta must be independent and nonzero.
std::pair<GainGraph, SwitchingSequence> normalize_type2(const GainGraph& g, const Colouring& delta,
                                                        const GainVec& alpha, const GainVec& beta);

ConstructResult construct_fixed_lattice(const GainGraph& g, const Colouring& delta);
ConstructResult construct_balanced(const GainGraph& g);
ConstructResult construct_flexible_1lattice(const GainGraph& g, const Colouring& delta);
ConstructResult construct_type1(const GainGraph& g, const Colouring& delta);
ConstructResult construct_type2(const GainGraph& g, const Colouring& delta, const GainVec& alpha,
                                const GainVec& beta);
ConstructResult construct_rank_deficient(const GainGraph& g);

// Henneberg-1 circle rider: extends the graph at v1 and places the new vertex
// so that both new edges keep length r along the whole flex.
ConstructResult extend_flex_henneberg(const GainGraph& g, const ParametricFlex& flex, int v1,
                                      const GainVec& gamma);

// Recipe dispatch for one colouring, preferring fixed-lattice, then type2 /
// flexible-1-lattice, then type1. Throws if the colouring is not constructible.
struct BuildOutcome {
  Recipe recipe = Recipe::None;
  std::optional<Colouring> colouring;
  ConstructResult result;
};
BuildOutcome construct_for_colouring(const GainGraph& g, const Colouring& delta);

// Graph-level automatic choice: balanced / rank-deficient recipes first, then
// the first constructible colouring in enumeration order.
struct AutoOutcome {
  enum Status { Built, OnlyType3, Nothing } status = Nothing;
  std::optional<BuildOutcome> build;
};
AutoOutcome construct_auto(const GainGraph& g);

ConstructResult construct_from_decision(const GainGraph& g, const Decision& d);

}  // namespace periflex
