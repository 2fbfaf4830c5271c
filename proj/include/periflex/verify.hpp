#pragma once

#include "periflex/construct.hpp"

namespace periflex {

// Generic sampled motion so that verification also applies to wrapped or
// externally produced paths, not just ParametricFlex.
struct FlexPath {
  double t0 = 0, t1 = 0;
  std::function<PlacementLattice(double)> at;

  static FlexPath of(const ParametricFlex& f) {
    return FlexPath{f.t0, f.t1, [&f](double t) { return f.sample(t); }};
  }

  std::vector<double> grid(int samples) const {
    std::vector<double> ts(samples);
    for (int i = 0; i < samples; ++i)
      ts[i] = samples == 1 ? t0 : t0 + (t1 - t0) * i / (samples - 1);
    return ts;
  }
};

// max over edges and samples of | ||p(v)-p(w)-L.g||^2 - lambda^2 |, lambda
// taken at the start of the domain.
double edge_residual(const GainGraph& g, const FlexPath& path, int samples);

// min over edges and samples of ||p(v)-p(w)-L.g|| (placement validity margin).
double min_edge_separation(const GainGraph& g, const FlexPath& path, int samples);

// (p(v1)-p(w1)-L.g1) . (p(v2)-p(w2)-L.g2)
double angle_function(const GainGraph& g, int e1, int e2, const PlacementLattice& pl);

struct NontrivialityReport {
  bool nontrivial = false;
  std::string witness;
  double range = 0;
};

// Probes all vertex-pair distances over gains with |g|_inf <= 1 + max input
// gain, plus the lattice Gram entries; any quantity whose range beats the
// threshold certifies a non-congruent pair of frames. Sound but finite,
// documented as such.
NontrivialityReport nontriviality(const GainGraph& g, const FlexPath& path, int samples);

struct ScissorReport {
  bool scissor = false;
  GainVec alpha, beta;
  double offdiag_range = 0;
};

// Linearly independent alpha, beta with constant ||L.alpha||, ||L.beta|| but
// varying (L.alpha).(L.beta), searched over |g|_inf <= 2.
ScissorReport scissor_detect(const FlexPath& path, int k, int samples);

struct GramRange {
  int i = 0, j = 0;
  double lo = 0, hi = 0;
};

struct FlexReport {
  double max_edge_residual = 0;
  double min_separation = 0;
  std::vector<GramRange> gram;
  NontrivialityReport nontrivial;
  ScissorReport scissor;
  int samples = 0;
  double tolerance = 0;
};

FlexReport verify_flex(const GainGraph& g, const FlexPath& path, int samples, double tol);

enum class OracleCondition { Balanced, AnyGain, InLine };

struct OracleResult {
  bool found = false;
  std::optional<AlmostWitness> witness;
  bool budget_exhausted = false;  // surfaced, never coerced into a verdict
};

// Exhaustive search over closed walks with exactly one opposite-colour edge
// and every edge used at most `multiplicity_bound` times. Test oracle for the
// coset-based checks; small graphs only.
OracleResult bounded_walk_oracle(const GainGraph& g, const Colouring& delta, Colour colour,
                                 OracleCondition cond, const GainVec& alpha,
                                 int multiplicity_bound,
                                 std::uint64_t node_budget = 2000000);

}  // namespace periflex
