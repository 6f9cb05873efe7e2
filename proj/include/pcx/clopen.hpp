#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pcx/cell.hpp"

namespace pcx {

// Canonical form: cells pairwise disjoint, maximally merged, sorted by cell_less.
// Equal sets always have identical representations.
struct ClopenSet {
  Model model = Model::pathspace;
  std::vector<Cell> cells;

  bool empty() const { return cells.empty(); }
  friend bool operator==(const ClopenSet&, const ClopenSet&) = default;
};

namespace detail {

using Word = std::vector<int>;

// Path space and the n-adic interval share one prefix algebra: n-adic cells are
// base-n digit words (letters d+1), path cells are admissible words of A.
struct PrefixSpace {
  int n;
  const AdjacencyMatrix* A;  // null: full shift

  bool edge(int i, int j) const { return A == nullptr || A->edge(i, j); }
  std::vector<int> children(const Word& w) const {
    std::vector<int> out;
    for (int j = 1; j <= n; ++j)
      if (w.empty() || edge(w.back(), j)) out.push_back(j);
    return out;
  }
};

inline bool is_prefix(const Word& p, const Word& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

inline void merge_words(const PrefixSpace& sp, std::set<Word>& s) {
  bool changed = true;
  while (changed) {
    changed = false;
    // Drop words covered by a proper prefix already present.
    for (auto it = s.begin(); it != s.end();) {
      bool covered = false;
      Word p;
      for (std::size_t i = 0; i < it->size() && !covered; ++i) {
        covered = s.count(p) > 0;
        p.push_back((*it)[i]);
      }
      if (covered) changed = true;
      it = covered ? s.erase(it) : std::next(it);
    }
    // Replace full sibling families by their parent.
    std::map<Word, int> family;
    for (const auto& w : s)
      if (!w.empty()) family[Word(w.begin(), std::prev(w.end()))]++;
    for (const auto& [parent, count] : family) {
      auto kids = sp.children(parent);
      if (count != static_cast<int>(kids.size()) || kids.empty()) continue;
      bool all = true;
      for (int j : kids) {
        Word child = parent;
        child.push_back(j);
        all &= s.count(child) > 0;
      }
      if (!all) continue;
      for (int j : kids) {
        Word child = parent;
        child.push_back(j);
        s.erase(child);
      }
      s.insert(parent);
      changed = true;
    }
  }
}

inline std::vector<Word> canonical_words(const PrefixSpace& sp, std::vector<Word> in) {
  std::set<Word> s(in.begin(), in.end());
  merge_words(sp, s);
  check_budget(s.size());
  return {s.begin(), s.end()};
}

inline bool any_extends(const std::vector<Word>& ws, const Word& p) {
  for (const auto& w : ws)
    if (w.size() > p.size() && is_prefix(p, w)) return true;
  return false;
}

inline bool contains_word(const std::vector<Word>& ws, const Word& w) {
  return std::binary_search(ws.begin(), ws.end(), w);
}

inline void complement_rec(const PrefixSpace& sp, const std::vector<Word>& ws, const Word& at,
                           std::vector<Word>& out) {
  if (contains_word(ws, at)) return;
  if (!any_extends(ws, at)) {
    out.push_back(at);
    check_budget(out.size());
    return;
  }
  for (int j : sp.children(at)) {
    Word next = at;
    next.push_back(j);
    complement_rec(sp, ws, next, out);
  }
}

inline std::vector<Word> complement_words(const PrefixSpace& sp, const std::vector<Word>& ws) {
  std::vector<Word> out;
  complement_rec(sp, ws, {}, out);
  return out;
}

inline std::vector<Word> intersect_words(const PrefixSpace& sp, const std::vector<Word>& xs,
                                         const std::vector<Word>& ys) {
  std::vector<Word> out;
  for (const auto& x : xs)
    for (const auto& y : ys) {
      if (is_prefix(x, y)) out.push_back(y);
      else if (is_prefix(y, x)) out.push_back(x);
      check_budget(out.size());
    }
  return canonical_words(sp, std::move(out));
}

inline bool covered_rec(const PrefixSpace& sp, const std::vector<Word>& by, const Word& at) {
  Word p;
  if (contains_word(by, p)) return true;
  for (std::size_t i = 0; i < at.size(); ++i) {
    p.push_back(at[i]);
    if (contains_word(by, p)) return true;
  }
  if (!any_extends(by, at)) return false;
  for (int j : sp.children(at)) {
    Word next = at;
    next.push_back(j);
    if (!covered_rec(sp, by, next)) return false;
  }
  return true;
}

inline void extend_to_depth(const PrefixSpace& sp, const Word& w, std::size_t depth,
                            std::vector<Word>& out) {
  if (w.size() == depth) {
    out.push_back(w);
    check_budget(out.size());
    return;
  }
  for (int j : sp.children(w)) {
    Word next = w;
    next.push_back(j);
    extend_to_depth(sp, next, depth, out);
  }
}

// Residue sets normalized to an integer modulus: subset of Z/M.
struct RModSet {
  Int M = 1;
  std::vector<Int> rs;  // sorted, unique, in [0, M)
};

inline Int integer_residue(const ResidueCell& c) { return imod(inv_mod(c.b, c.a) * c.c, c.a); }

inline RModSet rmod_lift(const RModSet& s, const Int& M) {
  if (M == s.M) return s;
  RModSet out{M, {}};
  Int count = Int(M / s.M) * s.rs.size();
  if (count > Int(cell_budget().load())) fail(Errc::budget_exceeded, "residue lift exceeds cell budget");
  for (Int base = 0; base < M; base += s.M)
    for (const Int& r : s.rs) out.rs.push_back(base + r);
  std::sort(out.rs.begin(), out.rs.end());
  return out;
}

inline RModSet rmod_from_cells(const std::vector<Cell>& cells) {
  Int M = 1;
  for (const auto& c : cells) M = lcm(M, std::get<ResidueCell>(c).a);
  if (M > Int(cell_budget().load())) fail(Errc::budget_exceeded, "residue modulus exceeds cell budget");
  RModSet out{M, {}};
  std::set<Int> acc;
  for (const auto& c : cells) {
    const auto& rc = std::get<ResidueCell>(c);
    for (Int r = integer_residue(rc); r < M; r += rc.a) acc.insert(r);
  }
  out.rs.assign(acc.begin(), acc.end());
  return out;
}

inline std::vector<Int> divisors_ascending(const Int& M) {
  std::vector<Int> small, large;
  for (Int d = 1; d * d <= M; ++d)
    if (M % d == 0) {
      small.push_back(d);
      if (d * d != M) large.push_back(M / d);
    }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

inline std::vector<Cell> rmod_canonical_cells(const RModSet& s) {
  if (s.rs.empty()) return {};
  // Minimal period: smallest divisor d of M with R + d = R; then R is a union of
  // classes mod d and projects faithfully.
  std::set<Int> R(s.rs.begin(), s.rs.end());
  Int d = s.M;
  for (const Int& cand : divisors_ascending(s.M)) {
    bool inv = true;
    for (const Int& r : R)
      if (!R.count(imod(r + cand, s.M))) { inv = false; break; }
    if (inv) { d = cand; break; }
  }
  std::set<Int> P;
  for (const Int& r : R) P.insert(imod(r, d));
  // Greedy merge, coarsest divisor first: extract any full class mod e as one cell.
  std::vector<Cell> out;
  for (const Int& e : divisors_ascending(d)) {
    for (Int c = 0; c < e; ++c) {
      bool full = true;
      for (Int r = c; r < d; r += e)
        if (!P.count(r)) { full = false; break; }
      if (!full) continue;
      for (Int r = c; r < d; r += e) P.erase(r);
      out.push_back(ResidueCell{e, 1, c});
    }
    if (P.empty()) break;
  }
  std::sort(out.begin(), out.end(), [](const Cell& x, const Cell& y) {
    return residue_cell_less(std::get<ResidueCell>(x), std::get<ResidueCell>(y));
  });
  check_budget(out.size());
  return out;
}

inline PrefixSpace prefix_space(const PartialSystem& sys) {
  if (sys.model == Model::pathspace) return PrefixSpace{sys.matrix.size(), &sys.matrix};
  return PrefixSpace{sys.n, nullptr};
}

inline Word cell_to_word(const PartialSystem& sys, const Cell& c) {
  if (sys.model == Model::pathspace) return std::get<PathCell>(c).word;
  auto d = nadic_digits(std::get<NAdicCell>(c), sys.n);
  for (int& x : d) ++x;
  return d;
}

inline Cell word_to_cell(const PartialSystem& sys, const Word& w) {
  if (sys.model == Model::pathspace) return PathCell{w};
  std::vector<int> d = w;
  for (int& x : d) --x;
  return nadic_from_digits(d, sys.n);
}

inline std::vector<Word> set_to_words(const PartialSystem& sys, const ClopenSet& s) {
  std::vector<Word> ws;
  ws.reserve(s.cells.size());
  for (const auto& c : s.cells) ws.push_back(cell_to_word(sys, c));
  std::sort(ws.begin(), ws.end());
  return ws;
}

inline ClopenSet set_from_words(const PartialSystem& sys, const std::vector<Word>& ws) {
  ClopenSet out{sys.model, {}};
  out.cells.reserve(ws.size());
  for (const auto& w : ws) out.cells.push_back(word_to_cell(sys, w));
  return out;
}

inline RModSet set_to_rmod(const ClopenSet& s) { return rmod_from_cells(s.cells); }

inline ClopenSet set_from_rmod(const RModSet& r) {
  return ClopenSet{Model::residue, rmod_canonical_cells(r)};
}

}  // namespace detail

inline ClopenSet canonicalize(const PartialSystem& sys, const std::vector<Cell>& cells) {
  for (const auto& c : cells) validate_cell(sys, c);
  if (sys.model == Model::residue) return detail::set_from_rmod(detail::rmod_from_cells(cells));
  auto sp = detail::prefix_space(sys);
  std::vector<detail::Word> ws;
  ws.reserve(cells.size());
  for (const auto& c : cells) ws.push_back(detail::cell_to_word(sys, c));
  return detail::set_from_words(sys, detail::canonical_words(sp, std::move(ws)));
}

inline ClopenSet empty_set(const PartialSystem& sys) { return ClopenSet{sys.model, {}}; }

inline ClopenSet whole_space(const PartialSystem& sys) {
  switch (sys.model) {
    case Model::pathspace: return ClopenSet{sys.model, {PathCell{{}}}};
    case Model::nadic: return ClopenSet{sys.model, {NAdicCell{0, 0}}};
    default: return ClopenSet{sys.model, {ResidueCell{1, 1, 0}}};
  }
}

inline ClopenSet set_union(const PartialSystem& sys, const ClopenSet& a, const ClopenSet& b) {
  require_same_model(a.model, b.model, "set_union");
  require_same_model(sys.model, a.model, "set_union");
  std::vector<Cell> all = a.cells;
  all.insert(all.end(), b.cells.begin(), b.cells.end());
  return canonicalize(sys, all);
}

inline ClopenSet set_intersect(const PartialSystem& sys, const ClopenSet& a, const ClopenSet& b) {
  require_same_model(a.model, b.model, "set_intersect");
  require_same_model(sys.model, a.model, "set_intersect");
  if (sys.model == Model::residue) {
    auto x = detail::set_to_rmod(a), y = detail::set_to_rmod(b);
    Int M = lcm(x.M, y.M);
    auto xl = detail::rmod_lift(x, M), yl = detail::rmod_lift(y, M);
    detail::RModSet out{M, {}};
    std::set_intersection(xl.rs.begin(), xl.rs.end(), yl.rs.begin(), yl.rs.end(),
                          std::back_inserter(out.rs));
    return detail::set_from_rmod(out);
  }
  auto sp = detail::prefix_space(sys);
  return detail::set_from_words(
      sys, detail::intersect_words(sp, detail::set_to_words(sys, a), detail::set_to_words(sys, b)));
}

inline ClopenSet set_complement(const PartialSystem& sys, const ClopenSet& a) {
  require_same_model(sys.model, a.model, "set_complement");
  if (sys.model == Model::residue) {
    auto x = detail::set_to_rmod(a);
    detail::RModSet out{x.M, {}};
    for (Int r = 0; r < x.M; ++r)
      if (!std::binary_search(x.rs.begin(), x.rs.end(), r)) out.rs.push_back(r);
    return detail::set_from_rmod(out);
  }
  auto sp = detail::prefix_space(sys);
  return detail::set_from_words(sys,
                                detail::complement_words(sp, detail::set_to_words(sys, a)));
}

inline ClopenSet set_diff(const PartialSystem& sys, const ClopenSet& a, const ClopenSet& b) {
  return set_intersect(sys, a, set_complement(sys, b));
}

inline bool is_empty(const ClopenSet& a) { return a.cells.empty(); }

inline bool is_subset(const PartialSystem& sys, const ClopenSet& a, const ClopenSet& b) {
  require_same_model(a.model, b.model, "is_subset");
  require_same_model(sys.model, a.model, "is_subset");
  if (sys.model == Model::residue) {
    auto x = detail::set_to_rmod(a), y = detail::set_to_rmod(b);
    Int M = lcm(x.M, y.M);
    auto xl = detail::rmod_lift(x, M), yl = detail::rmod_lift(y, M);
    return std::includes(yl.rs.begin(), yl.rs.end(), xl.rs.begin(), xl.rs.end());
  }
  auto sp = detail::prefix_space(sys);
  auto bw = detail::set_to_words(sys, b);
  for (const auto& w : detail::set_to_words(sys, a))
    if (!detail::covered_rec(sp, bw, w)) return false;
  return true;
}

inline bool set_equals(const PartialSystem& sys, const ClopenSet& a, const ClopenSet& b) {
  require_same_model(a.model, b.model, "set_equals");
  require_same_model(sys.model, a.model, "set_equals");
  return a.cells == b.cells;
}

// All cells of `a` refined to the requested granularity: word depth (pathspace),
// level (nadic), or integer modulus (residue).
inline std::vector<Cell> refine(const PartialSystem& sys, const ClopenSet& a, const Int& level) {
  require_same_model(sys.model, a.model, "refine");
  std::vector<Cell> out;
  if (sys.model == Model::residue) {
    if (level < 1) fail(Errc::precondition, "refine: modulus must be positive");
    for (const auto& c : a.cells) {
      const auto& rc = std::get<ResidueCell>(c);
      if (rc.b != 1 || level % rc.a != 0)
        fail(Errc::precondition, "refine: modulus is not a multiple of cell modulus");
      for (Int r = detail::integer_residue(rc); r < level; r += rc.a) {
        out.push_back(ResidueCell{level, 1, r});
        check_budget(out.size());
      }
    }
    std::sort(out.begin(), out.end(), [](const Cell& x, const Cell& y) {
      return residue_cell_less(std::get<ResidueCell>(x), std::get<ResidueCell>(y));
    });
    return out;
  }
  if (level < 0) fail(Errc::precondition, "refine: negative depth");
  std::size_t depth = static_cast<std::size_t>(level);
  auto sp = detail::prefix_space(sys);
  std::vector<detail::Word> ws;
  for (const auto& c : a.cells) {
    auto w = detail::cell_to_word(sys, c);
    if (w.size() > depth) fail(Errc::precondition, "refine: depth above cell granularity");
    detail::extend_to_depth(sp, w, depth, ws);
    check_budget(ws.size());
  }
  std::sort(ws.begin(), ws.end());
  for (const auto& w : ws) out.push_back(detail::word_to_cell(sys, w));
  return out;
}

// Intersection of two single cells is again a single cell (or empty) in all three models.
inline std::optional<Cell> cell_intersect(const PartialSystem& sys, const Cell& x, const Cell& y) {
  require_same_model(cell_model(x), cell_model(y), "cell_intersect");
  require_same_model(sys.model, cell_model(x), "cell_intersect");
  if (sys.model == Model::residue) {
    const auto& cx = std::get<ResidueCell>(x);
    const auto& cy = std::get<ResidueCell>(y);
    Int r1 = detail::integer_residue(cx), r2 = detail::integer_residue(cy);
    Int g = gcd(cx.a, cy.a);
    if (imod(r1 - r2, g) != 0) return std::nullopt;
    Int m = lcm(cx.a, cy.a);
    Int step = cy.a / g;
    Int k = imod((r2 - r1) / g * inv_mod(cx.a / g, step), step);
    return Cell{ResidueCell{m, 1, imod(r1 + cx.a * k, m)}};
  }
  auto wx = detail::cell_to_word(sys, x);
  auto wy = detail::cell_to_word(sys, y);
  if (detail::is_prefix(wx, wy)) return y;
  if (detail::is_prefix(wy, wx)) return x;
  return std::nullopt;
}

// General residue refinement to a rational modulus a/b (cells keep the requested label form).
inline std::vector<Cell> refine_to_modulus(const PartialSystem& sys, const ClopenSet& s,
                                           const Rat& modulus) {
  require_model(sys, Model::residue, "refine_to_modulus");
  if (modulus <= 0) fail(Errc::precondition, "refine_to_modulus: modulus must be positive");
  Int A = num(modulus), B = den(modulus);
  std::vector<Cell> out;
  for (const auto& c : s.cells) {
    const auto& rc = std::get<ResidueCell>(c);
    // a/b <= A/B needs r = (A*b)/(B*a) to be a positive integer.
    if ((A * rc.b) % (B * rc.a) != 0)
      fail(Errc::precondition, "refine_to_modulus: not a refinement of cell modulus");
    Int base = imod(B * detail::integer_residue(rc), B * rc.a);
    for (Int cc = base; cc < A; cc += B * rc.a) {
      out.push_back(ResidueCell{A, B, cc});
      check_budget(out.size());
    }
  }
  std::sort(out.begin(), out.end(), [](const Cell& x, const Cell& y) {
    return residue_cell_less(std::get<ResidueCell>(x), std::get<ResidueCell>(y));
  });
  return out;
}

// Greedy decomposition of [lo, hi] (n-adic endpoints, within [0,1]) into maximal aligned cells.
inline ClopenSet nadic_interval(const PartialSystem& sys, Rat lo, Rat hi) {
  require_model(sys, Model::nadic, "nadic_interval");
  if (lo < 0) lo = 0;
  if (hi > 1) hi = 1;
  if (lo >= hi) return empty_set(sys);
  if (!is_nadic_rational(lo, sys.n) || !is_nadic_rational(hi, sys.n))
    fail(Errc::precondition, "nadic_interval: endpoints must be n-adic rationals");
  std::vector<Cell> cells;
  while (lo < hi) {
    int k = 0;
    while (den(lo * ipow(Int(sys.n), k)) != 1 || lo + Rat(1, ipow(Int(sys.n), k)) > hi) ++k;
    cells.push_back(NAdicCell{num(lo * ipow(Int(sys.n), k)), k});
    check_budget(cells.size());
    lo += Rat(1, ipow(Int(sys.n), k));
  }
  return canonicalize(sys, cells);
}

}  // namespace pcx
