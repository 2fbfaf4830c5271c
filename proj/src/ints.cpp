#include "periflex/ints.hpp"

#include <limits>

namespace periflex {

Int gcd_nonneg(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

XgcdResult xgcd(const Int& a, const Int& b) {
  Int r0 = a, r1 = b;
  Int x0 = 1, x1 = 0;
  Int y0 = 0, y1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;  // truncated division is fine, invariants hold for any quotient
    Int r2 = r0 - q * r1;
    Int x2 = x0 - q * x1;
    Int y2 = y0 - q * y1;
    r0 = r1; r1 = r2;
    x0 = x1; x1 = x2;
    y0 = y1; y1 = y2;
  }
  if (r0 < 0) {
    r0 = -r0;
    x0 = -x0;
    y0 = -y0;
  }
  return {r0, x0, y0};
}

Int floordiv(const Int& a, const Int& m) {
  if (m == 0) throw std::domain_error("floordiv by zero");
  Int q = a / m;
  if ((a % m != 0) && ((a < 0) != (m < 0))) q -= 1;
  return q;
}

Int floormod(const Int& a, const Int& m) {
  if (m == 0) throw std::domain_error("floormod by zero");
  Int r = a - floordiv(a, m) * m;
  if (r < 0) r += (m < 0 ? -m : m);
  return r;
}

std::optional<Int> exact_div(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("exact_div by zero");
  if (a % b != 0) return std::nullopt;
  return a / b;
}

std::optional<Progression> solve_linear_congruence(const Int& a, const Int& b, const Int& m) {
  if (m < 0) throw std::domain_error("negative modulus");
  if (m == 0) {
    if (a == 0) {
      if (b == 0) return Progression{0, 1};  // every integer
      return std::nullopt;
    }
    auto c = exact_div(b, a);
    if (!c) return std::nullopt;
    return Progression{*c, 0};
  }
  if (a == 0) {
    if (floormod(b, m) != 0) return std::nullopt;
    return Progression{0, 1};
  }
  auto [g, x, y] = xgcd(a, m);
  (void)y;
  if (floormod(b, g) != 0) return std::nullopt;
  Int step = m / g;
  Int c0 = floormod(x * (b / g), step);
  return Progression{c0, step};
}

std::optional<Progression> intersect(const Progression& p, const Progression& q) {
  if (p.s == 0 && q.s == 0) {
    if (p.r == q.r) return p;
    return std::nullopt;
  }
  if (p.s == 0) {
    if (floormod(p.r - q.r, q.s) == 0) return p;
    return std::nullopt;
  }
  if (q.s == 0) {
    if (floormod(q.r - p.r, p.s) == 0) return q;
    return std::nullopt;
  }
  // r = p.r + p.s * t == q.r (mod q.s)
  auto t = solve_linear_congruence(p.s, q.r - p.r, q.s);
  if (!t) return std::nullopt;
  Int step = t->s == 0 ? Int(0) : p.s * t->s;
  Int r = p.r + p.s * t->r;
  if (step != 0) r = floormod(r, step);
  return Progression{r, step};
}

Int smallest_representative(const Progression& p) {
  if (p.s == 0) return p.r;
  Int lo = floormod(p.r, p.s);       // in [0, s)
  Int hi = lo - p.s;                 // in [-s, 0)
  return (lo <= -hi) ? lo : hi;
}

long long to_i64(const Int& v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw std::overflow_error("integer out of 64-bit range");
  return static_cast<long long>(v);
}

}  // namespace periflex
