#pragma once

#include <compare>
#include <string>
#include <variant>
#include <vector>

#include "pcx/rational.hpp"
#include "pcx/system.hpp"

namespace pcx {

// Cylinder Z(w) of infinite paths starting with the admissible word w ("" = whole space).
struct PathCell {
  std::vector<int> word;  // letters 1..n
  friend auto operator<=>(const PathCell&, const PathCell&) = default;
};

// N-adic interval [p/n^k ^+, (p+1)/n^k ^-]; doubled endpoints make these clopen and
// pairwise disjoint for fixed k. Equivalent to the base-n digit word of p padded to k digits.
struct NAdicCell {
  Int p;
  int k = 0;
  friend bool operator==(const NAdicCell&, const NAdicCell&) = default;
};

// Residue class: the set {x : x_{a/b} = c/b + (a/b)Z}, gcd(a,b) = 1, 0 <= c < a.
// Equals the integer-modulus class {x : x_a = b^{-1}c (mod a)}; canonical form uses b = 1.
struct ResidueCell {
  Int a = 1;
  Int b = 1;
  Int c = 0;
  friend bool operator==(const ResidueCell&, const ResidueCell&) = default;
};

using Cell = std::variant<PathCell, NAdicCell, ResidueCell>;

inline Model cell_model(const Cell& c) {
  switch (c.index()) {
    case 0: return Model::pathspace;
    case 1: return Model::nadic;
    default: return Model::residue;
  }
}

// Left endpoint p1/n^k1 vs p2/n^k2, then level; equals base-n digit-word order.
inline bool nadic_cell_less(const NAdicCell& x, const NAdicCell& y, int n) {
  Int lhs = x.p * ipow(Int(n), y.k);
  Int rhs = y.p * ipow(Int(n), x.k);
  if (lhs != rhs) return lhs < rhs;
  return x.k < y.k;
}

inline bool residue_cell_less(const ResidueCell& x, const ResidueCell& y) {
  if (x.a != y.a) return x.a < y.a;
  if (x.b != y.b) return x.b < y.b;
  return x.c < y.c;
}

// Total order used for canonical cell lists ("lexicographic on cell encoding").
inline bool cell_less(const Cell& x, const Cell& y, const PartialSystem& sys) {
  if (x.index() != y.index()) return x.index() < y.index();
  switch (x.index()) {
    case 0: return std::get<PathCell>(x).word < std::get<PathCell>(y).word;
    case 1: return nadic_cell_less(std::get<NAdicCell>(x), std::get<NAdicCell>(y), sys.n);
    default: return residue_cell_less(std::get<ResidueCell>(x), std::get<ResidueCell>(y));
  }
}

inline bool word_admissible(const AdjacencyMatrix& A, const std::vector<int>& w) {
  int n = A.size();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 1 || w[i] > n) return false;
    if (i > 0 && !A.edge(w[i - 1], w[i])) return false;
  }
  return true;
}

inline void validate_cell(const PartialSystem& sys, const Cell& c) {
  require_same_model(sys.model, cell_model(c), "cell");
  switch (sys.model) {
    case Model::pathspace: {
      const auto& w = std::get<PathCell>(c).word;
      if (!word_admissible(sys.matrix, w))
        fail(Errc::inadmissible, "path cell: inadmissible word");
      break;
    }
    case Model::nadic: {
      const auto& nc = std::get<NAdicCell>(c);
      if (nc.k < 0) fail(Errc::precondition, "nadic cell: negative level");
      if (nc.p < 0 || nc.p >= ipow(Int(sys.n), nc.k))
        fail(Errc::precondition, "nadic cell: p out of range [0, n^k)");
      break;
    }
    case Model::residue: {
      const auto& rc = std::get<ResidueCell>(c);
      if (rc.a < 1 || rc.b < 1) fail(Errc::precondition, "residue cell: a, b must be positive");
      if (gcd(rc.a, rc.b) != 1) fail(Errc::precondition, "residue cell: gcd(a,b) != 1");
      if (rc.c < 0 || rc.c >= rc.a) fail(Errc::precondition, "residue cell: c out of range [0, a)");
      break;
    }
  }
}

inline std::vector<int> nadic_digits(const NAdicCell& c, int n) {
  std::vector<int> d(static_cast<std::size_t>(c.k));
  Int p = c.p;
  for (int i = c.k - 1; i >= 0; --i) {
    d[static_cast<std::size_t>(i)] = static_cast<int>(p % n);
    p /= n;
  }
  return d;
}

inline NAdicCell nadic_from_digits(const std::vector<int>& d, int n) {
  Int p = 0;
  for (int x : d) p = p * n + x;
  return NAdicCell{p, static_cast<int>(d.size())};
}

}  // namespace pcx
