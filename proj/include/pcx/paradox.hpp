#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcx/algebra.hpp"
#include "pcx/graph.hpp"

namespace pcx {

// Certificate that V is paradoxical: the first n parts and the last m parts each
// cover V exactly, each part moves inside V, and all n+m images are pairwise
// disjoint. Nothing is assumed; verify_witness checks every condition.
struct Witness {
  ClopenSet V;
  int n = 0;
  int m = 0;
  std::vector<std::pair<ClopenSet, GroupElem>> parts;  // length n + m
};

struct ConditionVerdict {
  bool ok = true;
  std::string detail;
  std::optional<Cell> counterexample;
};

struct WitnessVerdict {
  ConditionVerdict covers_twice, domains, images_inside, images_disjoint;
  bool pass() const {
    return covers_twice.ok && domains.ok && images_inside.ok && images_disjoint.ok;
  }
};

namespace detail {

inline void check_witness_shape(const PartialSystem& sys, const Witness& w) {
  require_same_model(sys.model, w.V.model, "witness");
  if (w.n < 1 || w.m < 1) fail(Errc::precondition, "witness: n and m must be positive");
  if (static_cast<int>(w.parts.size()) != w.n + w.m)
    fail(Errc::precondition, "witness: expected n+m parts");
  for (const auto& [s, t] : w.parts) {
    require_same_model(sys.model, s.model, "witness part");
    validate_group_elem(sys, t);
  }
  if (is_empty(w.V)) fail(Errc::empty_set, "witness: V is empty");
}

}  // namespace detail

inline WitnessVerdict verify_witness(const PartialSystem& sys, const Witness& w) {
  detail::check_witness_shape(sys, w);
  WitnessVerdict verdict;

  auto check_cover = [&](int from, int to, const char* which) {
    ClopenSet u = empty_set(sys);
    for (int i = from; i < to; ++i) u = set_union(sys, u, w.parts[static_cast<std::size_t>(i)].first);
    if (set_equals(sys, u, w.V)) return;
    verdict.covers_twice.ok = false;
    if (!verdict.covers_twice.counterexample) {
      ClopenSet gap = set_diff(sys, w.V, u);
      ClopenSet excess = set_diff(sys, u, w.V);
      const ClopenSet& bad = is_empty(gap) ? excess : gap;
      verdict.covers_twice.counterexample = bad.cells.front();
      verdict.covers_twice.detail = std::string(which) +
                                    (is_empty(gap) ? " half covers outside V" : " half misses part of V");
    }
  };
  check_cover(0, w.n, "first");
  check_cover(w.n, w.n + w.m, "second");

  std::vector<std::optional<ClopenSet>> images(w.parts.size());
  for (std::size_t i = 0; i < w.parts.size(); ++i) {
    const auto& [s, t] = w.parts[i];
    ClopenSet dom = domain_of(sys, t);
    if (!is_subset(sys, s, dom)) {
      if (verdict.domains.ok) {
        verdict.domains.ok = false;
        verdict.domains.counterexample = set_diff(sys, s, dom).cells.front();
        verdict.domains.detail = "part " + std::to_string(i + 1) + " leaves the domain of its element";
      }
      continue;
    }
    images[i] = apply(sys, t, s);
    ClopenSet outside = set_diff(sys, *images[i], w.V);
    if (!is_empty(outside) && verdict.images_inside.ok) {
      verdict.images_inside.ok = false;
      verdict.images_inside.counterexample = outside.cells.front();
      verdict.images_inside.detail = "image of part " + std::to_string(i + 1) + " leaves V";
    }
  }
  for (std::size_t i = 0; i < w.parts.size() && verdict.images_disjoint.ok; ++i)
    for (std::size_t j = i + 1; j < w.parts.size() && verdict.images_disjoint.ok; ++j) {
      if (!images[i] || !images[j]) continue;
      ClopenSet overlap = set_intersect(sys, *images[i], *images[j]);
      if (!is_empty(overlap)) {
        verdict.images_disjoint.ok = false;
        verdict.images_disjoint.counterexample = overlap.cells.front();
        verdict.images_disjoint.detail =
            "images of parts " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " overlap";
      }
    }
  return verdict;
}

// Witness for theta_s(V) from a witness for V, when V sits inside the domain of s:
// sets move through theta_s, elements conjugate to s t s^{-1}.
inline Witness conjugate_witness(const PartialSystem& sys, const Witness& w, const GroupElem& s) {
  detail::check_witness_shape(sys, w);
  if (!is_subset(sys, w.V, domain_of(sys, s)))
    fail(Errc::precondition, "conjugate_witness: V not inside the domain of s");
  Witness out;
  out.V = apply(sys, s, w.V);
  out.n = w.n;
  out.m = w.m;
  GroupElem sinv = g_inv(sys, s);
  for (const auto& [set, t] : w.parts)
    out.parts.emplace_back(apply(sys, s, set), g_mul(sys, g_mul(sys, s, t), sinv));
  return out;
}

// Concatenation witness for a disjoint union: halves are merged blockwise.
inline Witness witness_disjoint_union(const PartialSystem& sys, const Witness& a,
                                      const Witness& b) {
  detail::check_witness_shape(sys, a);
  detail::check_witness_shape(sys, b);
  if (!is_empty(set_intersect(sys, a.V, b.V)))
    fail(Errc::precondition, "witness_disjoint_union: sets overlap");
  Witness out;
  out.V = set_union(sys, a.V, b.V);
  out.n = a.n + b.n;
  out.m = a.m + b.m;
  for (int i = 0; i < a.n; ++i) out.parts.push_back(a.parts[static_cast<std::size_t>(i)]);
  for (int i = 0; i < b.n; ++i) out.parts.push_back(b.parts[static_cast<std::size_t>(i)]);
  for (int i = a.n; i < a.n + a.m; ++i) out.parts.push_back(a.parts[static_cast<std::size_t>(i)]);
  for (int i = b.n; i < b.n + b.m; ++i) out.parts.push_back(b.parts[static_cast<std::size_t>(i)]);
  return out;
}

namespace detail {

// Doubling construction for the path space. All 2N images are packed into
// pairwise disjoint subcylinders Z(u B Q) of the least cell: u extends that
// cell to a vertex v* on a loop, B ranges over length-d concatenations of two
// incomparable loops at v* (digit 0 -> first loop, MSB first), and Q routes
// v* back to each cell's terminal vertex so the domain condition is automatic.
inline Witness find_witness_pathspace(const PartialSystem& sys, const ClopenSet& V) {
  const AdjacencyMatrix& A = sys.matrix;
  if (!condition_K(A).holds)
    fail(Errc::hypothesis_failed, "find_witness: path space matrix fails condition (K)");

  if (set_equals(sys, V, whole_space(sys))) {
    std::vector<int> full;
    for (int i = 1; i <= sys.n; ++i) {
      bool f = true;
      for (int j = 1; j <= sys.n; ++j) f &= A.edge(i, j);
      if (f) full.push_back(i);
      if (full.size() == 2) {
        Witness w;
        w.V = V;
        w.n = w.m = 1;
        w.parts.emplace_back(V, FreeWord{{full[0]}});
        w.parts.emplace_back(V, FreeWord{{full[1]}});
        return w;
      }
    }
  }

  std::vector<std::vector<int>> cells;
  if (set_equals(sys, V, whole_space(sys)))
    for (int j = 1; j <= sys.n; ++j) cells.push_back({j});
  else
    for (const auto& c : V.cells) cells.push_back(std::get<PathCell>(c).word);
  int N = static_cast<int>(cells.size());

  // Walk from the least cell's end along smallest successors until a vertex
  // repeats; v* lies on a loop and u extends the least cell up to it.
  std::vector<int> walk{cells.front().back()};
  std::vector<char> visited(static_cast<std::size_t>(sys.n) + 1, 0);
  visited[static_cast<std::size_t>(walk[0])] = 1;
  int vstar = 0;
  while (vstar == 0) {
    int v = walk.back(), next = 0;
    for (int j = 1; j <= sys.n && next == 0; ++j)
      if (A.edge(v, j)) next = j;
    if (visited[static_cast<std::size_t>(next)]) vstar = next;
    else {
      visited[static_cast<std::size_t>(next)] = 1;
      walk.push_back(next);
    }
  }
  std::vector<int> u = cells.front();
  auto at = std::find(walk.begin(), walk.end(), vstar);
  u.insert(u.end(), walk.begin() + 1, at + 1);

  auto loops = two_loops_at(A, vstar);
  if (!loops) fail(Errc::hypothesis_failed, "find_witness: no incomparable loop pair");

  int d = 1;
  while ((1 << d) < 2 * N) ++d;

  std::vector<char> all(static_cast<std::size_t>(sys.n) + 1, 1);
  Witness w;
  w.V = V;
  w.n = w.m = N;
  for (int i = 0; i < 2 * N; ++i) {
    const std::vector<int>& cell = cells[static_cast<std::size_t>(i % N)];
    std::vector<int> mu = u;
    for (int bit = d - 1; bit >= 0; --bit) {
      const auto& loop = ((i >> bit) & 1) ? loops->second : loops->first;
      mu.insert(mu.end(), loop.begin(), loop.end());
    }
    auto route = path_within(A, all, vstar, cell.back());
    if (!route)
      fail(Errc::search_exhausted,
           "find_witness: no path from the doubling vertex to vertex " +
               std::to_string(cell.back()) + " (searched all paths of length < " +
               std::to_string(sys.n) + ")");
    mu.insert(mu.end(), route->begin(), route->end());
    std::vector<int> inv;
    for (auto it = cell.rbegin(); it != cell.rend(); ++it) inv.push_back(-*it);
    w.parts.emplace_back(canonicalize(sys, {PathCell{cell}}),
                         GroupElem{reduce_concat(mu, inv)});
  }
  return w;
}

// theta_{(0,1)} and theta_{(1/n,1)} halve X onto [0,1/n] and [1/n,2/n]; a general
// cell [p/n^k,(p+1)/n^k] is first carried onto X by s = (-p,-k).
inline Witness find_witness_nadic(const PartialSystem& sys, const ClopenSet& V) {
  Witness acc;
  bool have = false;
  for (const auto& c : V.cells) {
    const auto& cell = std::get<NAdicCell>(c);
    Witness base;
    base.V = whole_space(sys);
    base.n = base.m = 1;
    base.parts.emplace_back(whole_space(sys), NAdicElem{Rat(0), 1});
    base.parts.emplace_back(whole_space(sys), NAdicElem{Rat(1, sys.n), 1});
    GroupElem s{NAdicElem{Rat(-cell.p), -cell.k}};
    Witness piece = is_identity(s) ? base : conjugate_witness(sys, base, g_inv(sys, s));
    acc = have ? witness_disjoint_union(sys, acc, piece) : piece;
    have = true;
  }
  return acc;
}

// A residue class x = c (mod a) splits as c and c+a (mod 2a); the two affine
// maps x -> 2x - c and x -> 2x - c + a are defined everywhere and realize it.
inline Witness find_witness_residue(const PartialSystem& sys, const ClopenSet& V) {
  Witness acc;
  bool have = false;
  for (const auto& c : V.cells) {
    const auto& cell = std::get<ResidueCell>(c);
    Witness piece;
    piece.V = canonicalize(sys, {c});
    piece.n = piece.m = 1;
    piece.parts.emplace_back(piece.V, AffineElem{Rat(-cell.c), Rat(2)});
    piece.parts.emplace_back(piece.V, AffineElem{Rat(cell.a - cell.c), Rat(2)});
    acc = have ? witness_disjoint_union(sys, acc, piece) : piece;
    have = true;
  }
  return acc;
}

}  // namespace detail

inline Witness find_witness(const PartialSystem& sys, const ClopenSet& V) {
  require_same_model(sys.model, V.model, "find_witness");
  if (is_empty(V)) fail(Errc::empty_set, "find_witness: V is empty");
  switch (sys.model) {
    case Model::pathspace: return detail::find_witness_pathspace(sys, V);
    case Model::nadic: return detail::find_witness_nadic(sys, V);
    default: return detail::find_witness_residue(sys, V);
  }
}

struct Isometries {
  AlgElem x, y, p;
};

// x = sum a_i delta_{t_i} over the first half with the cover disjointified
// (a_i the indicator of theta_{t_i} of the i-th new piece), y likewise over the
// second half, p = 1_V delta_e.
inline Isometries witness_to_isometries(const PartialSystem& sys, const Witness& w) {
  WitnessVerdict verdict = verify_witness(sys, w);
  if (!verdict.pass()) fail(Errc::hypothesis_failed, "witness_to_isometries: witness fails verification");

  auto half = [&](int from, int to) {
    std::vector<std::pair<GroupElem, LCFunction>> terms;
    ClopenSet running = empty_set(sys);
    for (int i = from; i < to; ++i) {
      const auto& [set, t] = w.parts[static_cast<std::size_t>(i)];
      ClopenSet piece = set_diff(sys, set, running);
      running = set_union(sys, running, set);
      if (is_empty(piece)) continue;
      terms.emplace_back(t, indicator(sys, apply(sys, t, piece)));
    }
    return make_alg(sys, terms);
  };
  Isometries iso;
  iso.x = half(0, w.n);
  iso.y = half(w.n, w.n + w.m);
  iso.p = a_monomial(sys, indicator(sys, w.V), identity_elem(sys));
  return iso;
}

struct ProperInfiniteVerdict {
  bool xstar_x_is_p = false;
  bool ystar_y_is_p = false;
  bool ystar_x_is_zero = false;
  bool p_x_is_x = false;
  bool p_y_is_y = false;
  bool trivial = false;  // p = 0: identities hold vacuously
  bool pass() const {
    return xstar_x_is_p && ystar_y_is_p && ystar_x_is_zero && p_x_is_x && p_y_is_y;
  }
};

inline ProperInfiniteVerdict verify_proper_infinite(const PartialSystem& sys, const AlgElem& x,
                                                    const AlgElem& y, const AlgElem& p) {
  ProperInfiniteVerdict v;
  v.xstar_x_is_p = a_equals(a_mul(sys, a_star(sys, x), x), p);
  v.ystar_y_is_p = a_equals(a_mul(sys, a_star(sys, y), y), p);
  v.ystar_x_is_zero = a_mul(sys, a_star(sys, y), x).is_zero();
  v.p_x_is_x = a_equals(a_mul(sys, p, x), x);
  v.p_y_is_y = a_equals(a_mul(sys, p, y), y);
  v.trivial = p.is_zero();
  return v;
}

}  // namespace pcx
