#pragma once

#include <string>

#include "pcx/function.hpp"

namespace pcx {

inline bool group_less(const GroupElem& a, const GroupElem& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  switch (a.index()) {
    case 0: return std::get<FreeWord>(a).letters < std::get<FreeWord>(b).letters;
    case 1: {
      const auto& x = std::get<NAdicElem>(a);
      const auto& y = std::get<NAdicElem>(b);
      if (x.r != y.r) return x.r < y.r;
      return x.k < y.k;
    }
    default: {
      const auto& x = std::get<AffineElem>(a);
      const auto& y = std::get<AffineElem>(b);
      if (x.u != y.u) return x.u < y.u;
      return x.w < y.w;
    }
  }
}

// Finite formal sum sum_t f_t delta_t with f_t supported in X_t; terms sorted by
// group element, zero coefficients dropped. The dense *-algebra of the crossed product.
struct AlgElem {
  Model model = Model::pathspace;
  std::vector<std::pair<GroupElem, LCFunction>> terms;

  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const AlgElem&, const AlgElem&) = default;
};

inline AlgElem make_alg(const PartialSystem& sys,
                        const std::vector<std::pair<GroupElem, LCFunction>>& terms) {
  std::vector<std::pair<GroupElem, LCFunction>> acc;
  for (const auto& [t, f] : terms) {
    validate_group_elem(sys, t);
    require_same_model(sys.model, f.model, "algebra element");
    auto it = std::find_if(acc.begin(), acc.end(),
                           [&](const auto& p) { return p.first == t; });
    if (it == acc.end()) acc.emplace_back(t, f);
    else it->second = f_add(sys, it->second, f);
  }
  AlgElem out{sys.model, {}};
  for (auto& [t, f] : acc) {
    if (f.is_zero()) continue;
    if (!is_subset(sys, support(sys, f), range_of(sys, t)))
      fail(Errc::precondition, "algebra element: coefficient support not inside X_t");
    out.terms.emplace_back(t, std::move(f));
  }
  std::sort(out.terms.begin(), out.terms.end(),
            [](const auto& p, const auto& q) { return group_less(p.first, q.first); });
  return out;
}

inline AlgElem a_zero(const PartialSystem& sys) { return AlgElem{sys.model, {}}; }

inline AlgElem a_monomial(const PartialSystem& sys, const LCFunction& f, const GroupElem& t) {
  return make_alg(sys, {{t, f}});
}

inline AlgElem a_one(const PartialSystem& sys) {
  return a_monomial(sys, indicator(sys, whole_space(sys)), identity_elem(sys));
}

inline AlgElem a_add(const PartialSystem& sys, const AlgElem& x, const AlgElem& y) {
  require_same_model(x.model, y.model, "a_add");
  auto terms = x.terms;
  terms.insert(terms.end(), y.terms.begin(), y.terms.end());
  return make_alg(sys, terms);
}

inline AlgElem a_scale(const PartialSystem& sys, const Rat& c, const AlgElem& x) {
  std::vector<std::pair<GroupElem, LCFunction>> terms;
  for (const auto& [t, f] : x.terms) terms.emplace_back(t, f_scale(sys, c, f));
  return make_alg(sys, terms);
}

inline AlgElem a_sub(const PartialSystem& sys, const AlgElem& x, const AlgElem& y) {
  return a_add(sys, x, a_scale(sys, Rat(-1), y));
}

// (f delta_t)(h delta_s) = alpha_t(alpha_{t^{-1}}(f) h) delta_{ts}.
inline AlgElem a_mul(const PartialSystem& sys, const AlgElem& x, const AlgElem& y) {
  require_same_model(x.model, y.model, "a_mul");
  std::vector<std::pair<GroupElem, LCFunction>> terms;
  for (const auto& [t, f] : x.terms) {
    GroupElem tinv = g_inv(sys, t);
    LCFunction pulled = alpha(sys, tinv, f);
    for (const auto& [s, h] : y.terms) {
      LCFunction prod = f_mul(sys, pulled, h);
      if (prod.is_zero()) continue;
      terms.emplace_back(g_mul(sys, t, s), alpha(sys, t, prod));
    }
  }
  return make_alg(sys, terms);
}

// (f delta_t)^* = alpha_{t^{-1}}(f) delta_{t^{-1}} for real-valued coefficients.
inline AlgElem a_star(const PartialSystem& sys, const AlgElem& x) {
  std::vector<std::pair<GroupElem, LCFunction>> terms;
  for (const auto& [t, f] : x.terms) {
    GroupElem tinv = g_inv(sys, t);
    terms.emplace_back(tinv, alpha(sys, tinv, f));
  }
  return make_alg(sys, terms);
}

inline bool a_equals(const AlgElem& x, const AlgElem& y) { return x == y; }

// Conditional expectation onto C(X): the coefficient at the identity.
inline LCFunction expectation(const PartialSystem& sys, const AlgElem& x) {
  GroupElem e = identity_elem(sys);
  for (const auto& [t, f] : x.terms)
    if (t == e) return f;
  return zero_function(sys);
}

inline Rat l1_norm(const AlgElem& x) {
  Rat s = 0;
  for (const auto& [t, f] : x.terms) s += sup_norm(f);
  return s;
}

inline bool is_projection(const PartialSystem& sys, const AlgElem& x) {
  return a_equals(a_mul(sys, x, x), x) && a_equals(a_star(sys, x), x);
}

// s_i = 1_{Z(i)} delta_{g_i}, the Cuntz-Krieger partial isometries.
inline std::vector<AlgElem> cuntz_krieger_generators(const PartialSystem& sys) {
  require_model(sys, Model::pathspace, "cuntz_krieger_generators");
  std::vector<AlgElem> out;
  for (int i = 1; i <= sys.n; ++i) {
    ClopenSet zi = canonicalize(sys, {PathCell{{i}}});
    out.push_back(a_monomial(sys, indicator(sys, zi), FreeWord{{i}}));
  }
  return out;
}

// u^j = 1_X delta_{(j,1)}; s_m = 1_{X_{(0,m)}} delta_{(0,m)}, m != 0.
inline AlgElem residue_unitary(const PartialSystem& sys, const Int& j) {
  require_model(sys, Model::residue, "residue_unitary");
  return a_monomial(sys, indicator(sys, whole_space(sys)), AffineElem{Rat(j), 1});
}

inline AlgElem residue_isometry(const PartialSystem& sys, const Int& m) {
  require_model(sys, Model::residue, "residue_isometry");
  if (m == 0) fail(Errc::precondition, "residue_isometry: m must be nonzero");
  AffineElem t{0, Rat(m)};
  return a_monomial(sys, indicator(sys, range_of(sys, t)), t);
}

// Named generator family per model (the n-adic model has no distinguished family).
inline std::vector<std::pair<std::string, AlgElem>> standard_generators(const PartialSystem& sys,
                                                                        int max_m = 3,
                                                                        int max_n = 2) {
  std::vector<std::pair<std::string, AlgElem>> out;
  switch (sys.model) {
    case Model::pathspace: {
      auto gens = cuntz_krieger_generators(sys);
      for (int i = 1; i <= sys.n; ++i)
        out.emplace_back("s_" + std::to_string(i), gens[static_cast<std::size_t>(i - 1)]);
      return out;
    }
    case Model::residue: {
      for (int j = -max_n; j <= max_n; ++j)
        out.emplace_back("u^" + std::to_string(j), residue_unitary(sys, Int(j)));
      for (int m = 2; m <= max_m; ++m)
        out.emplace_back("s_" + std::to_string(m), residue_isometry(sys, Int(m)));
      return out;
    }
    default:
      fail(Errc::precondition, "standard_generators: no distinguished family for the nadic model");
  }
}

}  // namespace pcx
