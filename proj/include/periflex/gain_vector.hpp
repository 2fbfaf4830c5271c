#pragma once

#include <array>
#include <string>

#include "periflex/ints.hpp"

namespace periflex {

// Element of Z^k, k in {1,2}. Coordinate c[1] is identically zero when k == 1.
struct GainVec {
  int k = 1;
  std::array<Int, 2> c{Int(0), Int(0)};

  GainVec() = default;
  explicit GainVec(Int a) : k(1), c{std::move(a), Int(0)} {}
  GainVec(Int a, Int b) : k(2), c{std::move(a), std::move(b)} {}

  static GainVec zero(int k) {
    GainVec v;
    v.k = k;
    return v;
  }

  bool is_zero() const { return c[0] == 0 && c[1] == 0; }

  GainVec operator-() const {
    GainVec v = *this;
    v.c[0] = -v.c[0];
    v.c[1] = -v.c[1];
    return v;
  }
  GainVec& operator+=(const GainVec& o) {
    check_dim(o);
    c[0] += o.c[0];
    c[1] += o.c[1];
    return *this;
  }
  GainVec& operator-=(const GainVec& o) {
    check_dim(o);
    c[0] -= o.c[0];
    c[1] -= o.c[1];
    return *this;
  }
  friend GainVec operator+(GainVec a, const GainVec& b) { return a += b; }
  friend GainVec operator-(GainVec a, const GainVec& b) { return a -= b; }
  friend GainVec operator*(const Int& s, GainVec v) {
    v.c[0] *= s;
    v.c[1] *= s;
    return v;
  }
  friend bool operator==(const GainVec& a, const GainVec& b) {
    return a.k == b.k && a.c[0] == b.c[0] && a.c[1] == b.c[1];
  }
  friend bool operator!=(const GainVec& a, const GainVec& b) { return !(a == b); }
  friend bool operator<(const GainVec& a, const GainVec& b) {
    if (a.c[0] != b.c[0]) return a.c[0] < b.c[0];
    return a.c[1] < b.c[1];
  }

  // First nonzero coordinate is positive.
  bool lex_positive() const {
    if (c[0] != 0) return c[0] > 0;
    return c[1] > 0;
  }

  // 2D cross product a.x*b.y - a.y*b.x (zero for k == 1 inputs).
  Int cross(const GainVec& o) const { return c[0] * o.c[1] - c[1] * o.c[0]; }

  Int inf_norm() const {
    Int a = c[0] < 0 ? -c[0] : c[0];
    Int b = c[1] < 0 ? -c[1] : c[1];
    return a > b ? a : b;
  }

  std::string str() const {
    if (k == 1) return c[0].str();
    return "(" + c[0].str() + "," + c[1].str() + ")";
  }

 private:
  void check_dim(const GainVec& o) const {
    if (k != o.k) throw std::invalid_argument("gain dimension mismatch");
  }
};

}  // namespace periflex
