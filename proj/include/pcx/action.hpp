#pragma once

#include <optional>

#include "pcx/clopen.hpp"
#include "pcx/group.hpp"

namespace pcx {

namespace detail {

// X_{(u,w)} = {x : x_w = u mod (w)}, empty unless u lies in R + (w) = (1/b)Z.
inline ClopenSet residue_class_set(const PartialSystem& sys, const Rat& u, const Rat& w) {
  if (w == 0) fail(Errc::precondition, "residue class: zero modulus");
  Int a = num(rat_abs(w)), b = den(rat_abs(w));
  if (den(u * Rat(b)) != 1) return empty_set(sys);
  Int c = imod(num(u * Rat(b)), a);
  return canonicalize(sys, {ResidueCell{a, 1, imod(inv_mod(b, a) * c, a)}});
}

}  // namespace detail

// X_{t^{-1}}, the domain of theta_t.
inline ClopenSet domain_of(const PartialSystem& sys, const GroupElem& t) {
  validate_group_elem(sys, t);
  switch (sys.model) {
    case Model::pathspace: {
      if (is_identity(t)) return whole_space(sys);
      auto split = positive_negative_split(t);
      if (!split) return empty_set(sys);
      const auto& [mu, nu] = *split;
      if (!word_admissible(sys.matrix, mu) || !word_admissible(sys.matrix, nu))
        return empty_set(sys);
      if (mu.empty()) return canonicalize(sys, {PathCell{nu}});
      std::vector<Cell> cells;
      for (int j = 1; j <= sys.n; ++j) {
        if (!sys.matrix.edge(mu.back(), j)) continue;
        if (!nu.empty() && !sys.matrix.edge(nu.back(), j)) continue;
        auto w = nu;
        w.push_back(j);
        cells.push_back(PathCell{w});
      }
      return canonicalize(sys, cells);
    }
    case Model::nadic: {
      const auto& e = std::get<NAdicElem>(t);
      Rat scale = rat_npow(sys.n, e.k);
      return nadic_interval(sys, -e.r * scale, (1 - e.r) * scale);
    }
    default: {
      const auto& e = std::get<AffineElem>(t);
      return detail::residue_class_set(sys, -e.u / e.w, 1 / e.w);
    }
  }
}

// X_t, the range of theta_t.
inline ClopenSet range_of(const PartialSystem& sys, const GroupElem& t) {
  return domain_of(sys, g_inv(sys, t));
}

// theta_t(S); requires S inside the domain of theta_t.
inline ClopenSet apply(const PartialSystem& sys, const GroupElem& t, const ClopenSet& s) {
  validate_group_elem(sys, t);
  require_same_model(sys.model, s.model, "apply");
  if (is_identity(t)) return s;
  if (!is_subset(sys, s, domain_of(sys, t)))
    fail(Errc::precondition, "apply: set not inside the domain of theta_t");
  if (s.empty()) return s;
  switch (sys.model) {
    case Model::pathspace: {
      const auto [mu, nu] = *positive_negative_split(t);
      auto sp = detail::prefix_space(sys);
      std::vector<detail::Word> source;
      for (const auto& c : s.cells) {
        auto w = std::get<PathCell>(c).word;
        if (nu.empty() || w.size() > nu.size()) source.push_back(w);
        else detail::extend_to_depth(sp, w, nu.size() + 1, source);
      }
      std::vector<detail::Word> out;
      for (const auto& w : source) {
        detail::Word img = mu;
        img.insert(img.end(), w.begin() + static_cast<long>(nu.size()), w.end());
        out.push_back(img);
      }
      return detail::set_from_words(sys, detail::canonical_words(sp, std::move(out)));
    }
    case Model::nadic: {
      const auto& e = std::get<NAdicElem>(t);
      int m = 0;
      while (den(e.r * rat_npow(sys.n, m)) != 1) ++m;
      std::vector<Cell> out;
      for (const auto& c : s.cells) {
        const auto& nc = std::get<NAdicCell>(c);
        int k1 = std::max({nc.k, m - e.k, -e.k, 0});
        ClopenSet piece{sys.model, {c}};
        for (const auto& rc : refine(sys, piece, Int(k1))) {
          const auto& fine = std::get<NAdicCell>(rc);
          Int p2 = fine.p + num(e.r * rat_npow(sys.n, k1 + e.k));
          out.push_back(NAdicCell{p2, k1 + e.k});
          check_budget(out.size());
        }
      }
      return canonicalize(sys, out);
    }
    default: {
      const auto& e = std::get<AffineElem>(t);
      Int a = num(rat_abs(e.w)), b = den(rat_abs(e.w));
      auto r = detail::set_to_rmod(s);
      auto lifted = detail::rmod_lift(r, lcm(r.M, b));
      detail::RModSet img{lifted.M * a / b, {}};
      for (const Int& rho : lifted.rs) {
        Rat v = e.u + e.w * Rat(rho);
        img.rs.push_back(imod(num(v), img.M));
      }
      std::sort(img.rs.begin(), img.rs.end());
      return detail::set_from_rmod(img);
    }
  }
}

// First cell (coarsest level, then lex) of K that theta_t moves entirely off itself,
// or that misses the domain of theta_t.
inline std::optional<Cell> separating_cell(const PartialSystem& sys, const GroupElem& t,
                                           const ClopenSet& k, int depth) {
  validate_group_elem(sys, t);
  require_same_model(sys.model, k.model, "separating_cell");
  if (is_empty(k)) return std::nullopt;
  ClopenSet dom = domain_of(sys, t);
  Int base = 0;
  if (sys.model == Model::residue) {
    base = 1;
    for (const auto& c : k.cells) base = lcm(base, std::get<ResidueCell>(c).a);
  } else {
    for (const auto& c : k.cells) {
      Int d(sys.model == Model::pathspace
                ? static_cast<long>(std::get<PathCell>(c).word.size())
                : static_cast<long>(std::get<NAdicCell>(c).k));
      if (d > base) base = d;
    }
  }
  for (int step = 0; step <= depth; ++step) {
    Int level = sys.model == Model::residue ? Int(base * (step + 1)) : Int(base + step);
    for (const auto& c : refine(sys, k, level)) {
      ClopenSet cell_set{sys.model, {c}};
      cell_set = canonicalize(sys, cell_set.cells);
      if (is_empty(set_intersect(sys, cell_set, dom))) return c;
      if (!is_subset(sys, cell_set, dom)) continue;
      if (is_empty(set_intersect(sys, apply(sys, t, cell_set), cell_set))) return c;
    }
  }
  return std::nullopt;
}

}  // namespace pcx
