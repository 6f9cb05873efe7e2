#pragma once

#include <string>
#include <vector>

#include "pcx/config.hpp"

namespace pcx {

inline constexpr int kMaxVertices = 20;

// 0/1 adjacency matrix over vertices 1..n; a(i,j) = 1 means edge i -> j.
struct AdjacencyMatrix {
  std::vector<std::vector<int>> a;

  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(std::vector<std::vector<int>> rows) : a(std::move(rows)) {
    int n = static_cast<int>(a.size());
    if (n < 1 || n > kMaxVertices)
      fail(Errc::precondition, "adjacency matrix: size must be 1.." + std::to_string(kMaxVertices));
    for (const auto& row : a) {
      if (static_cast<int>(row.size()) != n)
        fail(Errc::precondition, "adjacency matrix: not square");
      for (int v : row)
        if (v != 0 && v != 1) fail(Errc::precondition, "adjacency matrix: entries must be 0/1");
    }
  }

  bool has_zero_row() const {
    for (const auto& row : a) {
      bool nonzero = false;
      for (int v : row) nonzero |= v == 1;
      if (!nonzero) return true;
    }
    return false;
  }

  int size() const { return static_cast<int>(a.size()); }
  // Vertices are 1-based.
  bool edge(int i, int j) const { return a[i - 1][j - 1] == 1; }
  int out_degree(int i) const {
    int d = 0;
    for (int v : a[i - 1]) d += v;
    return d;
  }

  friend bool operator==(const AdjacencyMatrix& x, const AdjacencyMatrix& y) { return x.a == y.a; }
};

}  // namespace pcx
