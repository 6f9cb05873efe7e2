#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "pcx/config.hpp"

namespace pcx {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline Int ipow(const Int& base, int e) {
  if (e < 0) fail(Errc::precondition, "ipow: negative exponent");
  return boost::multiprecision::pow(base, static_cast<unsigned>(e));
}

inline Int imod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += boost::multiprecision::abs(m);
  return r;
}

// Inverse of a mod m, for gcd(a, m) = 1.
inline Int inv_mod(const Int& a, const Int& m) {
  Int old_r = imod(a, m), r = m;
  Int old_s = 1, s = 0;
  while (r != 0) {
    Int q = old_r / r;
    Int t = old_r - q * r; old_r = r; r = t;
    t = old_s - q * s; old_s = s; s = t;
  }
  if (old_r != 1) fail(Errc::precondition, "inv_mod: arguments not coprime");
  return imod(old_s, m);
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// n^k for signed k, as a rational.
inline Rat rat_npow(int n, int k) {
  Int p = ipow(Int(n), k >= 0 ? k : -k);
  return k >= 0 ? Rat(p) : Rat(1, p);
}

// True iff q has an n-smooth denominator, i.e. q lies in Z[1/n].
inline bool is_nadic_rational(const Rat& q, int n) {
  Int d = den(q);
  while (d != 1) {
    Int g = gcd(d, Int(n));
    if (g == 1) return false;
    d /= g;
  }
  return true;
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Int rat_floor(const Rat& q) { return floor_div(num(q), den(q)); }

}  // namespace pcx
