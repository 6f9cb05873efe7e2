#pragma once

#include <map>

#include "pcx/action.hpp"

namespace pcx {

// Locally constant rational-valued function: finitely many disjoint cells with
// nonzero values. Canonical form groups cells by value (each level set canonical),
// sorted by cell; equal functions have identical representations.
struct LCFunction {
  Model model = Model::pathspace;
  std::vector<std::pair<Cell, Rat>> pieces;

  bool is_zero() const { return pieces.empty(); }
  friend bool operator==(const LCFunction&, const LCFunction&) = default;
};

inline LCFunction make_function(const PartialSystem& sys,
                                const std::vector<std::pair<Cell, Rat>>& pieces) {
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    validate_cell(sys, pieces[i].first);
    for (std::size_t j = i + 1; j < pieces.size(); ++j)
      if (cell_intersect(sys, pieces[i].first, pieces[j].first))
        fail(Errc::precondition, "function: cells must be pairwise disjoint");
  }
  std::map<Rat, std::vector<Cell>> levels;
  for (const auto& [c, v] : pieces)
    if (v != 0) levels[v].push_back(c);
  LCFunction out{sys.model, {}};
  for (const auto& [v, cells] : levels)
    for (const auto& c : canonicalize(sys, cells).cells) out.pieces.emplace_back(c, v);
  std::sort(out.pieces.begin(), out.pieces.end(),
            [&](const auto& p, const auto& q) { return cell_less(p.first, q.first, sys); });
  return out;
}

inline LCFunction zero_function(const PartialSystem& sys) { return LCFunction{sys.model, {}}; }

inline LCFunction indicator(const PartialSystem& sys, const ClopenSet& s) {
  require_same_model(sys.model, s.model, "indicator");
  std::vector<std::pair<Cell, Rat>> pieces;
  for (const auto& c : s.cells) pieces.emplace_back(c, Rat(1));
  return make_function(sys, pieces);
}

inline ClopenSet support(const PartialSystem& sys, const LCFunction& f) {
  std::vector<Cell> cells;
  cells.reserve(f.pieces.size());
  for (const auto& [c, v] : f.pieces) cells.push_back(c);
  return canonicalize(sys, cells);
}

inline Rat sup_norm(const LCFunction& f) {
  Rat m = 0;
  for (const auto& [c, v] : f.pieces)
    if (rat_abs(v) > m) m = rat_abs(v);
  return m;
}

namespace detail {

template <class Op>
LCFunction pointwise(const PartialSystem& sys, const LCFunction& f, const LCFunction& g,
                     Op op, bool keep_lone) {
  require_same_model(f.model, g.model, "pointwise");
  require_same_model(sys.model, f.model, "pointwise");
  std::vector<std::pair<Cell, Rat>> pieces;
  ClopenSet fs = support(sys, f), gs = support(sys, g);
  for (const auto& [c, v] : f.pieces) {
    for (const auto& [d, w] : g.pieces)
      if (auto both = cell_intersect(sys, c, d)) pieces.emplace_back(*both, op(v, w));
    if (keep_lone)
      for (const auto& lone : set_diff(sys, canonicalize(sys, {c}), gs).cells)
        pieces.emplace_back(lone, op(v, Rat(0)));
  }
  if (keep_lone)
    for (const auto& [d, w] : g.pieces)
      for (const auto& lone : set_diff(sys, canonicalize(sys, {d}), fs).cells)
        pieces.emplace_back(lone, op(Rat(0), w));
  return make_function(sys, pieces);
}

}  // namespace detail

inline LCFunction f_add(const PartialSystem& sys, const LCFunction& f, const LCFunction& g) {
  return detail::pointwise(sys, f, g, [](const Rat& a, const Rat& b) { return a + b; }, true);
}

inline LCFunction f_mul(const PartialSystem& sys, const LCFunction& f, const LCFunction& g) {
  return detail::pointwise(sys, f, g, [](const Rat& a, const Rat& b) { return a * b; }, false);
}

inline LCFunction f_scale(const PartialSystem& sys, const Rat& c, const LCFunction& f) {
  std::vector<std::pair<Cell, Rat>> pieces;
  for (const auto& [cell, v] : f.pieces) pieces.emplace_back(cell, c * v);
  return make_function(sys, pieces);
}

inline LCFunction f_restrict(const PartialSystem& sys, const LCFunction& f, const ClopenSet& s) {
  return f_mul(sys, f, indicator(sys, s));
}

// alpha_t(f) = f o theta_{t^{-1}}; moves functions on X_{t^{-1}} to functions on X_t.
inline LCFunction alpha(const PartialSystem& sys, const GroupElem& t, const LCFunction& f) {
  require_same_model(sys.model, f.model, "alpha");
  if (!is_subset(sys, support(sys, f), domain_of(sys, t)))
    fail(Errc::precondition, "alpha: support not inside X_{t^{-1}}");
  std::vector<std::pair<Cell, Rat>> pieces;
  for (const auto& [c, v] : f.pieces)
    for (const auto& img : apply(sys, t, canonicalize(sys, {c})).cells) pieces.emplace_back(img, v);
  return make_function(sys, pieces);
}

}  // namespace pcx
