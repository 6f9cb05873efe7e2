#pragma once

#include <string>

#include "pcx/matrix.hpp"

namespace pcx {

enum class Model { pathspace, nadic, residue };

inline const char* model_name(Model m) {
  switch (m) {
    case Model::pathspace: return "pathspace";
    case Model::nadic: return "nadic";
    case Model::residue: return "residue";
  }
  return "?";
}

// Space model plus acting group:
//   pathspace: admissible one-sided paths of A, free group F_n acting by prepend/remove
//   nadic:     [0,1] with doubled n-adic points, Z[1/n] x| Z acting by x -> x/n^k + r
//   residue:   inverse limit of Z/(w), Q x| Q^x (or Q^x_+) acting by x -> u + w x
struct PartialSystem {
  Model model;
  AdjacencyMatrix matrix;      // pathspace
  int n = 0;                   // nadic base; pathspace alphabet size (matrix.size())
  bool positive_only = true;   // residue: restrict to w > 0

  static PartialSystem pathspace(AdjacencyMatrix A) {
    if (A.has_zero_row())
      fail(Errc::precondition, "pathspace: zero row (a vertex with no outgoing edge)");
    PartialSystem s{Model::pathspace, std::move(A), 0, true};
    s.n = s.matrix.size();
    return s;
  }

  static PartialSystem nadic(int n) {
    if (n < 2 || n > kMaxVertices)
      fail(Errc::precondition, "nadic: base must be 2.." + std::to_string(kMaxVertices));
    PartialSystem s{Model::nadic, {}, n, true};
    return s;
  }

  static PartialSystem residue(bool positive_only = true) {
    return PartialSystem{Model::residue, {}, 0, positive_only};
  }
};

inline void require_model(const PartialSystem& sys, Model m, const char* what) {
  if (sys.model != m)
    fail(Errc::mixed_model, std::string(what) + ": requires " + model_name(m) + " model, got " +
                                model_name(sys.model));
}

inline void require_same_model(Model a, Model b, const char* what) {
  if (a != b)
    fail(Errc::mixed_model, std::string(what) + ": mixed models " + model_name(a) + " vs " +
                                model_name(b));
}

}  // namespace pcx
