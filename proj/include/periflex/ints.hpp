#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>

namespace periflex {

// Exact integers everywhere; switching sequences and basis reduction can grow
// entries past any fixed word size.
using Int = boost::multiprecision::cpp_int;

Int gcd_nonneg(Int a, Int b);

struct XgcdResult {
  Int g;  // gcd(a,b) >= 0
  Int x;  // a*x + b*y == g
  Int y;
};
XgcdResult xgcd(const Int& a, const Int& b);

// Floor division/remainder; for m != 0 the remainder lies in [0, |m|).
Int floordiv(const Int& a, const Int& m);
Int floormod(const Int& a, const Int& m);

// a/b when b divides a exactly (b != 0), nullopt otherwise.
std::optional<Int> exact_div(const Int& a, const Int& b);

// Arithmetic progression { r + s*t : t in Z }; s == 0 denotes the single value r.
struct Progression {
  Int r;
  Int s;  // >= 0
};

// Solutions c of a*c == b (mod m) with m >= 0; m == 0 means the exact equation.
std::optional<Progression> solve_linear_congruence(const Int& a, const Int& b, const Int& m);

// Intersection of two progressions.
std::optional<Progression> intersect(const Progression& p, const Progression& q);

// Deterministic representative: smallest absolute value, ties to the non-negative one.
Int smallest_representative(const Progression& p);

long long to_i64(const Int& v);  // throws std::overflow_error if out of range

}  // namespace periflex
