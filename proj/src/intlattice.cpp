#include "periflex/intlattice.hpp"

#include <algorithm>

namespace periflex {

namespace {

struct WorkRow {
  GainVec v;
  std::vector<Int> combo;
};

WorkRow scale_add(const WorkRow& a, const Int& ca, const WorkRow& b, const Int& cb) {
  WorkRow r;
  r.v = ca * a.v + cb * b.v;
  r.combo.resize(a.combo.size());
  for (size_t i = 0; i < a.combo.size(); ++i) r.combo[i] = ca * a.combo[i] + cb * b.combo[i];
  return r;
}

void negate(WorkRow& r) {
  r.v = -r.v;
  for (auto& c : r.combo) c = -c;
}

}  // namespace

HnfWithTransform hnf_with_transform(int k, const std::vector<GainVec>& generators) {
  std::vector<WorkRow> rows;
  for (size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].k != k) throw std::invalid_argument("generator dimension mismatch");
    if (generators[i].is_zero()) continue;
    WorkRow r;
    r.v = generators[i];
    r.combo.assign(generators.size(), Int(0));
    r.combo[i] = 1;
    rows.push_back(std::move(r));
  }

  // Column 0: fold everything with a nonzero first coordinate into one pivot.
  std::optional<WorkRow> pivot0;
  std::vector<WorkRow> rest;
  for (auto& r : rows) {
    if (r.v.c[0] == 0) {
      rest.push_back(std::move(r));
      continue;
    }
    if (!pivot0) {
      pivot0 = std::move(r);
      continue;
    }
    Int a = pivot0->v.c[0], b = r.v.c[0];
    auto [g, x, y] = xgcd(a, b);
    WorkRow np = scale_add(*pivot0, x, r, y);                       // first coord g
    WorkRow nr = scale_add(r, a / g, *pivot0, -(b / g));            // first coord 0
    pivot0 = std::move(np);
    if (!nr.v.is_zero()) rest.push_back(std::move(nr));
  }
  if (pivot0 && !pivot0->v.lex_positive()) negate(*pivot0);

  // Column 1 among rows with first coordinate zero.
  std::optional<WorkRow> pivot1;
  for (auto& r : rest) {
    if (r.v.is_zero()) continue;
    if (!pivot1) {
      pivot1 = std::move(r);
      continue;
    }
    Int a = pivot1->v.c[1], b = r.v.c[1];
    auto [g, x, y] = xgcd(a, b);
    WorkRow np = scale_add(*pivot1, x, r, y);
    pivot1 = std::move(np);
  }
  if (pivot1 && pivot1->v.c[1] < 0) negate(*pivot1);

  // Reduce the pivot row above the second pivot: 0 <= b < d.
  if (pivot0 && pivot1) {
    Int q = floordiv(pivot0->v.c[1], pivot1->v.c[1]);
    if (q != 0) *pivot0 = scale_add(*pivot0, Int(1), *pivot1, -q);
  }

  HnfWithTransform out;
  out.sub.k = k;
  if (pivot0) {
    out.sub.rows.push_back(pivot0->v);
    out.combo.push_back(pivot0->combo);
  }
  if (pivot1) {
    out.sub.rows.push_back(pivot1->v);
    out.combo.push_back(pivot1->combo);
  }
  return out;
}

Subgroup hnf(int k, const std::vector<GainVec>& generators) {
  return hnf_with_transform(k, generators).sub;
}

std::optional<std::vector<Int>> solve_in_basis(const Subgroup& s, const GainVec& g) {
  if (g.k != s.k) throw std::invalid_argument("dimension mismatch");
  if (s.rows.empty()) {
    if (g.is_zero()) return std::vector<Int>{};
    return std::nullopt;
  }
  if (s.rows.size() == 1) {
    const GainVec& r = s.rows[0];
    std::optional<Int> c;
    if (r.c[0] != 0) {
      c = exact_div(g.c[0], r.c[0]);
    } else {
      if (g.c[0] != 0) return std::nullopt;
      c = exact_div(g.c[1], r.c[1]);
    }
    if (!c || *c * r != g) return std::nullopt;
    return std::vector<Int>{*c};
  }
  // rows [(a,b),(0,d)]
  const GainVec& r0 = s.rows[0];
  const GainVec& r1 = s.rows[1];
  auto x = exact_div(g.c[0], r0.c[0]);
  if (!x) return std::nullopt;
  auto y = exact_div(g.c[1] - *x * r0.c[1], r1.c[1]);
  if (!y) return std::nullopt;
  return std::vector<Int>{*x, *y};
}

bool contains(const Subgroup& s, const GainVec& g) { return solve_in_basis(s, g).has_value(); }

Subgroup join(const Subgroup& a, const Subgroup& b) {
  if (a.k != b.k) throw std::invalid_argument("dimension mismatch");
  std::vector<GainVec> gens = a.rows;
  gens.insert(gens.end(), b.rows.begin(), b.rows.end());
  return hnf(a.k, gens);
}

Coset make_coset(GainVec offset, Subgroup sub) {
  if (offset.k != sub.k) throw std::invalid_argument("dimension mismatch");
  for (const GainVec& r : sub.rows) {
    if (r.c[0] != 0) {
      Int q = floordiv(offset.c[0], r.c[0]);
      offset -= q * r;
    } else if (r.c[1] != 0) {
      Int q = floordiv(offset.c[1], r.c[1]);
      offset -= q * r;
    }
  }
  return Coset{std::move(offset), std::move(sub)};
}

bool coset_contains(const Coset& c, const GainVec& g) { return contains(c.sub, g - c.offset); }

std::optional<Int> coset_intersects_line(const Coset& coset, const GainVec& alpha) {
  const Subgroup& s = coset.sub;
  const GainVec& o = coset.offset;
  if (alpha.k != s.k) throw std::invalid_argument("dimension mismatch");

  auto verified = [&](Int c) -> std::optional<Int> {
    if (!coset_contains(coset, c * alpha)) throw std::logic_error("line witness failed verification");
    return c;
  };

  if (alpha.is_zero()) {
    if (coset_contains(coset, GainVec::zero(s.k))) return verified(0);
    return std::nullopt;
  }

  // Want c with c*alpha - o in S.
  std::optional<Progression> sol;
  if (s.rows.empty()) {
    // c*alpha == o exactly.
    std::optional<Progression> p0 = solve_linear_congruence(alpha.c[0], o.c[0], 0);
    if (!p0) return std::nullopt;
    if (s.k == 1) {
      sol = p0;
    } else {
      auto p1 = solve_linear_congruence(alpha.c[1], o.c[1], 0);
      if (!p1) return std::nullopt;
      sol = intersect(*p0, *p1);
    }
  } else if (s.k == 1) {
    sol = solve_linear_congruence(alpha.c[0], o.c[0], s.rows[0].c[0]);
  } else if (s.rows.size() == 2) {
    // rows [(a,b),(0,d)]: need a | (c*a1 - o1) and a*d | a*(c*a2 - o2) - b*(c*a1 - o1).
    const Int& a = s.rows[0].c[0];
    const Int& b = s.rows[0].c[1];
    const Int& d = s.rows[1].c[1];
    auto pA = solve_linear_congruence(alpha.c[0], o.c[0], a);
    if (!pA) return std::nullopt;
    auto pB = solve_linear_congruence(a * alpha.c[1] - b * alpha.c[0], a * o.c[1] - b * o.c[0], a * d);
    if (!pB) return std::nullopt;
    sol = intersect(*pA, *pB);
  } else {
    // rank 1 in Z^2: c*alpha - o = x*(a,b).
    const GainVec& r = s.rows[0];
    Int coeff = alpha.cross(r);  // alpha x r
    Int rhs = o.cross(r);
    if (coeff != 0) {
      auto c = exact_div(rhs, coeff);
      if (!c) return std::nullopt;
      if (!coset_contains(coset, *c * alpha)) return std::nullopt;
      return verified(*c);
    }
    if (rhs != 0) return std::nullopt;
    // alpha and o both parallel to r: scalarize along the primitive direction.
    GainVec u = primitive_direction(r);
    int idx = u.c[0] != 0 ? 0 : 1;
    Int as = alpha.c[idx] / u.c[idx];
    Int os = o.c[idx] / u.c[idx];
    Int ss = r.c[idx] / u.c[idx];
    if (ss < 0) ss = -ss;
    sol = solve_linear_congruence(as, os, ss);
  }
  if (!sol) return std::nullopt;
  return verified(smallest_representative(*sol));
}

GainVec primitive_direction(const GainVec& v) {
  if (v.is_zero()) throw std::invalid_argument("zero vector has no direction");
  Int g = gcd_nonneg(v.c[0], v.c[1]);
  GainVec u = v;
  u.c[0] /= g;
  u.c[1] /= g;
  if (!u.lex_positive()) u = -u;
  return u;
}

LineResult line_containing(const Subgroup& s) {
  LineResult out;
  if (s.rows.empty()) {
    out.kind = LineResult::Trivial;
    out.alpha = GainVec::zero(s.k);
    return out;
  }
  if (s.rows.size() >= 2) {
    out.kind = LineResult::Full;
    out.alpha = GainVec::zero(s.k);
    return out;
  }
  out.kind = LineResult::Line;
  out.alpha = primitive_direction(s.rows[0]);
  return out;
}

}  // namespace periflex
