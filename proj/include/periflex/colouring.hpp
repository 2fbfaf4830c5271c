#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "periflex/gaincore.hpp"

namespace periflex {

enum class Colour : std::uint8_t { Red, Blue };
inline Colour other(Colour c) { return c == Colour::Red ? Colour::Blue : Colour::Red; }
inline const char* colour_name(Colour c) { return c == Colour::Red ? "red" : "blue"; }

using Colouring = std::vector<Colour>;  // indexed by edge id, total by construction

// Walk-gain system of one colour class: BFS forest potentials plus the
// fundamental subgroup per component. The gains of monochromatic walks a -> b
// inside one component form exactly the coset (phi(b) - phi(a)) + span, which
// turns the quantification over all circuits into coset arithmetic.
struct ColourSystem {
  Colour colour = Colour::Red;
  Components comps;  // components of the colour subgraph over all vertices
  std::vector<GainVec> phi;
  std::vector<int> parent, parent_edge;
  std::vector<bool> parent_fwd;
  struct CompInfo {
    Subgroup span;
    std::vector<int> chord_edges;
    std::vector<std::vector<Int>> combo;  // HNF row -> chord coefficients
  };
  std::vector<CompInfo> info;  // per component

  // Coset of gains of colour-walks from a to b (same component required).
  Coset walk_coset(int a, int b) const;
};

ColourSystem build_walk_gain_system(const GainGraph& g, const Colouring& delta, Colour colour);

// An explicit circuit with exactly one edge of the opposite colour; the walk
// and its gain are re-verified against the graph before being returned.
struct AlmostWitness {
  int opposite_edge = -1;
  Walk walk;
  GainVec gain;
};

// Almost-<colour> circuits: all edges of `colour` except exactly one.
std::optional<AlmostWitness> balanced_almost_circuit(const GainGraph& g, const Colouring& delta,
                                                     Colour colour);
std::optional<AlmostWitness> almost_circuit_any_gain(const GainGraph& g, const Colouring& delta,
                                                     Colour colour);
std::optional<AlmostWitness> almost_circuit_gain_in_line(const GainGraph& g,
                                                         const Colouring& delta, Colour colour,
                                                         const GainVec& alpha);

// Flag plus the first failure reason; circuits are attached whenever the
// failure is itself the existence of a circuit.
struct FlagResult {
  bool ok = false;
  std::string reason;
  std::vector<AlmostWitness> almost_witnesses;
  std::vector<std::pair<Walk, GainVec>> mono_witnesses;  // monochromatic circuits
};

struct Classification {
  int k = 1;
  bool surjective = false;
  FlagResult nbac, fixed_lattice, flexible_1_lattice, type1, type2, type3;
  GainVec type2_alpha, type2_beta;  // valid when type2.ok
  GainVec type3_alpha;              // valid when type3.ok
  Subgroup span_red, span_blue;

  bool is_nbac() const { return nbac.ok; }
  bool constructible() const {
    return fixed_lattice.ok || flexible_1_lattice.ok || type1.ok || type2.ok;
  }
};

Classification classify(const GainGraph& g, const Colouring& delta);

enum class ColourClass { Nbac, FixedLattice, Flexible1Lattice, Type1, Type2, Type3 };
bool matches(const Classification& c, ColourClass cls);
std::optional<ColourClass> colour_class_from_name(const std::string& name);

struct EnumStats {
  bool complete = true;
  std::uint64_t emitted = 0;
};

// Depth-first search over edges in BFS order, first edge fixed Red (global
// colour swap symmetry), branches abandoned as soon as a balanced almost
// monochromatic circuit is forced. Deterministic output order, also under
// jobs > 1 (prefix partition + ordered merge).
EnumStats enumerate_colourings(
    const GainGraph& g, ColourClass cls, std::uint64_t limit,
    const std::function<bool(const Colouring&, const Classification&)>& sink, int jobs = 1);

enum class Verdict { Flexible, NotFlexible, Unknown };
enum class Mode { FixedLattice, FlexibleLattice1, FlexibleLattice2 };
enum class Recipe {
  None,
  BalancedRotation,
  FixedLatticeShear,
  OnePeriodicGrid,
  Type1Grid,
  Type2Scissor,
  RankDeficientScale
};
const char* recipe_name(Recipe r);
const char* verdict_name(Verdict v);
std::optional<Mode> mode_from_name(const std::string& name);

struct Decision {
  Verdict verdict = Verdict::Unknown;
  Mode mode = Mode::FixedLattice;
  Recipe recipe = Recipe::None;
  std::optional<Colouring> witness_colouring;
  std::optional<Classification> witness_class;
  std::string note;
};

// Theorem-level decision procedures. Requires a connected graph and a mode
// matching the graph's gain dimension.
Decision decide(const GainGraph& g, Mode mode);

}  // namespace periflex
