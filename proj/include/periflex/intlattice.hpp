#pragma once

#include <optional>
#include <vector>

#include "periflex/gain_vector.hpp"

namespace periflex {

// Finitely generated subgroup of Z^k in row Hermite normal form. The HNF is
// unique, so structural equality is subgroup equality.
//
// Row layout for k == 2:  [(a, b)] with (a, b) lex-positive (rank 1), or
// [(a, b), (0, d)] with a > 0, d > 0, 0 <= b < d (rank 2).
struct Subgroup {
  int k = 1;
  std::vector<GainVec> rows;

  static Subgroup trivial(int k) { return Subgroup{k, {}}; }
  int rank() const { return static_cast<int>(rows.size()); }
  bool is_trivial() const { return rows.empty(); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.k == b.k && a.rows == b.rows;
  }
  friend bool operator!=(const Subgroup& a, const Subgroup& b) { return !(a == b); }
};

Subgroup hnf(int k, const std::vector<GainVec>& generators);

// HNF plus, for each basis row, its integer combination over the input
// generators (used to rebuild explicit witness circuits).
struct HnfWithTransform {
  Subgroup sub;
  std::vector<std::vector<Int>> combo;  // combo[i][j]: coefficient of generators[j] in rows[i]
};
HnfWithTransform hnf_with_transform(int k, const std::vector<GainVec>& generators);

bool contains(const Subgroup& s, const GainVec& g);

// Coefficients over the HNF rows when g lies in the subgroup.
std::optional<std::vector<Int>> solve_in_basis(const Subgroup& s, const GainVec& g);

Subgroup join(const Subgroup& a, const Subgroup& b);

// offset + subgroup, with the offset reduced to the canonical representative so
// that equal cosets compare equal structurally.
struct Coset {
  GainVec offset;
  Subgroup sub;

  friend bool operator==(const Coset& a, const Coset& b) {
    return a.offset == b.offset && a.sub == b.sub;
  }
};
Coset make_coset(GainVec offset, Subgroup sub);
bool coset_contains(const Coset& c, const GainVec& g);

// Some integer c with c*alpha in the coset, if one exists. alpha == 0 asks
// whether the coset contains 0 (then c == 0 is returned). Any returned value is
// verified by coset membership before being handed back.
std::optional<Int> coset_intersects_line(const Coset& c, const GainVec& alpha);

struct LineResult {
  enum Kind { Trivial, Line, Full } kind = Trivial;
  GainVec alpha;  // primitive, lex-positive; only meaningful for kind == Line
};

// Primitive direction alpha with S <= Z*alpha for rank-1 S; Trivial / Full markers otherwise.
LineResult line_containing(const Subgroup& s);

GainVec primitive_direction(const GainVec& v);  // v != 0; gcd-reduced, lex-positive

}  // namespace periflex
