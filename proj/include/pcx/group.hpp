#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "pcx/rational.hpp"
#include "pcx/system.hpp"

namespace pcx {

// Reduced word in F_n: letter +i is g_i, -i is g_i^{-1}; no x followed by -x.
struct FreeWord {
  std::vector<int> letters;
  friend auto operator<=>(const FreeWord&, const FreeWord&) = default;
};

// (r, k) in Z[1/n] x| Z, acting by x -> x/n^k + r;
// (s,j)(r,k) = (r/n^j + s, j+k), (r,k)^{-1} = (-n^k r, -k).
struct NAdicElem {
  Rat r;
  int k = 0;
  friend bool operator==(const NAdicElem&, const NAdicElem&) = default;
};

// (u, w) in Q x| Q^x, acting by x -> u + w x;
// (u,w)(u',w') = (u + w u', w w'), (u,w)^{-1} = (-u/w, 1/w).
struct AffineElem {
  Rat u;
  Rat w = 1;
  friend bool operator==(const AffineElem&, const AffineElem&) = default;
};

using GroupElem = std::variant<FreeWord, NAdicElem, AffineElem>;

inline Model group_model(const GroupElem& g) {
  switch (g.index()) {
    case 0: return Model::pathspace;
    case 1: return Model::nadic;
    default: return Model::residue;
  }
}

inline void validate_group_elem(const PartialSystem& sys, const GroupElem& g) {
  require_same_model(sys.model, group_model(g), "group element");
  switch (sys.model) {
    case Model::pathspace: {
      const auto& w = std::get<FreeWord>(g);
      for (std::size_t i = 0; i < w.letters.size(); ++i) {
        int l = w.letters[i];
        if (l == 0 || l < -sys.n || l > sys.n)
          fail(Errc::precondition, "free word: letter out of range");
        if (i > 0 && w.letters[i - 1] == -l)
          fail(Errc::precondition, "free word: not reduced");
      }
      break;
    }
    case Model::nadic:
      if (!is_nadic_rational(std::get<NAdicElem>(g).r, sys.n))
        fail(Errc::precondition, "nadic element: r not in Z[1/n]");
      break;
    case Model::residue: {
      const auto& a = std::get<AffineElem>(g);
      if (a.w == 0) fail(Errc::precondition, "affine element: w must be nonzero");
      if (sys.positive_only && a.w <= 0)
        fail(Errc::precondition, "affine element: w must be positive in Q x| Q^x_+");
      break;
    }
  }
}

inline GroupElem identity_elem(const PartialSystem& sys) {
  switch (sys.model) {
    case Model::pathspace: return FreeWord{};
    case Model::nadic: return NAdicElem{0, 0};
    default: return AffineElem{0, 1};
  }
}

inline bool is_identity(const GroupElem& g) {
  switch (g.index()) {
    case 0: return std::get<FreeWord>(g).letters.empty();
    case 1: return std::get<NAdicElem>(g) == NAdicElem{0, 0};
    default: return std::get<AffineElem>(g) == AffineElem{0, 1};
  }
}

// a must already be reduced; b may be arbitrary (folded in letter by letter).
inline FreeWord reduce_concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out = a;
  for (int l : b) {
    if (!out.empty() && out.back() == -l) out.pop_back();
    else out.push_back(l);
  }
  return FreeWord{out};
}

inline GroupElem g_mul(const PartialSystem& sys, const GroupElem& a, const GroupElem& b) {
  validate_group_elem(sys, a);
  validate_group_elem(sys, b);
  switch (sys.model) {
    case Model::pathspace:
      return reduce_concat(std::get<FreeWord>(a).letters, std::get<FreeWord>(b).letters);
    case Model::nadic: {
      const auto& x = std::get<NAdicElem>(a);
      const auto& y = std::get<NAdicElem>(b);
      return NAdicElem{y.r / rat_npow(sys.n, x.k) + x.r, x.k + y.k};
    }
    default: {
      const auto& x = std::get<AffineElem>(a);
      const auto& y = std::get<AffineElem>(b);
      return AffineElem{x.u + x.w * y.u, x.w * y.w};
    }
  }
}

inline GroupElem g_inv(const PartialSystem& sys, const GroupElem& g) {
  validate_group_elem(sys, g);
  switch (sys.model) {
    case Model::pathspace: {
      const auto& w = std::get<FreeWord>(g);
      std::vector<int> out(w.letters.rbegin(), w.letters.rend());
      for (int& l : out) l = -l;
      return FreeWord{out};
    }
    case Model::nadic: {
      const auto& x = std::get<NAdicElem>(g);
      return NAdicElem{-rat_npow(sys.n, x.k) * x.r, -x.k};
    }
    default: {
      const auto& x = std::get<AffineElem>(g);
      return AffineElem{-x.u / x.w, 1 / x.w};
    }
  }
}

inline int word_length(const GroupElem& g) {
  if (group_model(g) != Model::pathspace)
    fail(Errc::precondition, "word_length: free-group elements only");
  return static_cast<int>(std::get<FreeWord>(g).letters.size());
}

// t = mu nu^{-1} with mu, nu positive words, if the reduced word has that shape.
inline std::optional<std::pair<std::vector<int>, std::vector<int>>> positive_negative_split(
    const GroupElem& g) {
  if (group_model(g) != Model::pathspace)
    fail(Errc::precondition, "positive_negative_split: free-group elements only");
  const auto& w = std::get<FreeWord>(g).letters;
  std::vector<int> mu, nu_rev;
  std::size_t i = 0;
  while (i < w.size() && w[i] > 0) mu.push_back(w[i++]);
  while (i < w.size() && w[i] < 0) nu_rev.push_back(-w[i++]);
  if (i != w.size()) return std::nullopt;
  return std::make_pair(mu, std::vector<int>(nu_rev.rbegin(), nu_rev.rend()));
}

}  // namespace pcx
