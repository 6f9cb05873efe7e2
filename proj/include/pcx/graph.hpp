#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pcx/action.hpp"

namespace pcx {

namespace detail {

inline void require_no_zero_rows(const AdjacencyMatrix& A, const char* what) {
  if (A.has_zero_row()) fail(Errc::precondition, std::string(what) + ": zero-row matrix");
}

// Kosaraju; component ids are assigned in a deterministic order.
inline std::vector<int> scc_of(const AdjacencyMatrix& A) {
  int n = A.size();
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> order;
  auto dfs1 = [&](auto&& self, int v) -> void {
    seen[static_cast<std::size_t>(v)] = 1;
    for (int j = 1; j <= n; ++j)
      if (A.edge(v, j) && !seen[static_cast<std::size_t>(j)]) self(self, j);
    order.push_back(v);
  };
  for (int v = 1; v <= n; ++v)
    if (!seen[static_cast<std::size_t>(v)]) dfs1(dfs1, v);

  std::vector<int> comp(static_cast<std::size_t>(n) + 1, -1);
  int c = 0;
  auto dfs2 = [&](auto&& self, int v, int id) -> void {
    comp[static_cast<std::size_t>(v)] = id;
    for (int j = 1; j <= n; ++j)
      if (A.edge(j, v) && comp[static_cast<std::size_t>(j)] < 0) self(self, j, id);
  };
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (comp[static_cast<std::size_t>(*it)] < 0) dfs2(dfs2, *it, c++);
  return comp;
}

// Shortest path from -> to with edges restricted to vertices in `allowed`;
// returned as the vertex sequence after `from` up to and including `to`
// (empty when from == to). BFS with ascending tie-break.
inline std::optional<std::vector<int>> path_within(const AdjacencyMatrix& A,
                                                   const std::vector<char>& allowed, int from,
                                                   int to) {
  if (from == to) return std::vector<int>{};
  int n = A.size();
  std::vector<int> prev(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> queue{from};
  prev[static_cast<std::size_t>(from)] = from;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    int v = queue[h];
    for (int j = 1; j <= n; ++j) {
      if (!A.edge(v, j) || !allowed[static_cast<std::size_t>(j)]) continue;
      if (prev[static_cast<std::size_t>(j)] != 0) continue;
      prev[static_cast<std::size_t>(j)] = v;
      if (j == to) {
        std::vector<int> path;
        for (int u = to; u != from; u = prev[static_cast<std::size_t>(u)]) path.push_back(u);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(j);
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline bool vertex_on_loop(const AdjacencyMatrix& A, int v, const std::vector<int>& comp) {
  if (A.edge(v, v)) return true;
  for (int u = 1; u <= A.size(); ++u)
    if (u != v && comp[static_cast<std::size_t>(u)] == comp[static_cast<std::size_t>(v)])
      return true;
  return false;
}

// Two loops based at v, neither an initial subpart of the other, written as the
// vertex sequences after v (each ends back at v). Fails exactly when the strongly
// connected component of v is a single simple cycle.
inline std::optional<std::pair<std::vector<int>, std::vector<int>>> two_loops_at(
    const AdjacencyMatrix& A, int v) {
  auto comp = detail::scc_of(A);
  if (!vertex_on_loop(A, v, comp)) return std::nullopt;
  int n = A.size();
  std::vector<char> in_c(static_cast<std::size_t>(n) + 1, 0);
  for (int u = 1; u <= n; ++u)
    in_c[static_cast<std::size_t>(u)] =
        comp[static_cast<std::size_t>(u)] == comp[static_cast<std::size_t>(v)];

  int branch = 0, x = 0, y = 0;
  for (int b = 1; b <= n && branch == 0; ++b) {
    if (!in_c[static_cast<std::size_t>(b)]) continue;
    std::vector<int> succ;
    for (int j = 1; j <= n; ++j)
      if (A.edge(b, j) && in_c[static_cast<std::size_t>(j)]) succ.push_back(j);
    if (succ.size() >= 2) {
      branch = b;
      x = succ[0];
      y = succ[1];
    }
  }
  if (branch == 0) return std::nullopt;

  auto to_branch = detail::path_within(A, in_c, v, branch);
  auto back_x = detail::path_within(A, in_c, x, v);
  auto back_y = detail::path_within(A, in_c, y, v);

  std::vector<int> first = *to_branch;
  first.push_back(x);
  first.insert(first.end(), back_x->begin(), back_x->end());
  std::vector<int> second = *to_branch;
  second.push_back(y);
  second.insert(second.end(), back_y->begin(), back_y->end());
  return std::make_pair(std::move(first), std::move(second));
}

// The unique cycle through v when its component is a single simple cycle,
// as the vertex sequence after v.
inline std::vector<int> single_cycle_at(const AdjacencyMatrix& A, int v) {
  auto comp = detail::scc_of(A);
  std::vector<int> cycle;
  int u = v;
  do {
    int next = 0;
    for (int j = 1; j <= A.size() && next == 0; ++j)
      if (A.edge(u, j) && comp[static_cast<std::size_t>(j)] == comp[static_cast<std::size_t>(v)])
        next = j;
    cycle.push_back(next);
    u = next;
  } while (u != v);
  return cycle;
}

struct LoopEvidence {
  int vertex = 0;
  std::vector<int> first, second;
};

struct ConditionKReport {
  bool holds = true;
  std::vector<LoopEvidence> evidence;          // one entry per vertex lying on a loop
  std::optional<LoopEvidence> culprit;         // first failing vertex; .first holds its only cycle
};

// Condition (K): every vertex on a loop admits two loops, neither an initial
// subpart of the other.
inline ConditionKReport condition_K(const AdjacencyMatrix& A) {
  detail::require_no_zero_rows(A, "condition_K");
  ConditionKReport report;
  auto comp = detail::scc_of(A);
  for (int v = 1; v <= A.size(); ++v) {
    if (!vertex_on_loop(A, v, comp)) continue;
    auto loops = two_loops_at(A, v);
    if (loops) {
      report.evidence.push_back({v, loops->first, loops->second});
    } else {
      report.holds = false;
      if (!report.culprit) report.culprit = LoopEvidence{v, single_cycle_at(A, v), {}};
    }
  }
  return report;
}

struct CycleExitReport {
  bool holds = true;
  std::vector<int> culprit_cycle;  // a cycle all of whose vertices have out-degree 1
};

inline CycleExitReport every_cycle_has_exit(const AdjacencyMatrix& A) {
  detail::require_no_zero_rows(A, "every_cycle_has_exit");
  int n = A.size();
  std::vector<char> state(static_cast<std::size_t>(n) + 1, 0);  // 0 new, 1 on walk, 2 done
  for (int start = 1; start <= n; ++start) {
    if (state[static_cast<std::size_t>(start)] != 0 || A.out_degree(start) != 1) continue;
    std::vector<int> walk;
    int v = start;
    while (A.out_degree(v) == 1 && state[static_cast<std::size_t>(v)] == 0) {
      state[static_cast<std::size_t>(v)] = 1;
      walk.push_back(v);
      for (int j = 1; j <= n; ++j)
        if (A.edge(v, j)) {
          v = j;
          break;
        }
    }
    if (A.out_degree(v) == 1 && state[static_cast<std::size_t>(v)] == 1) {
      auto at = std::find(walk.begin(), walk.end(), v);
      std::vector<int> cycle(at, walk.end());
      std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
      return {false, cycle};
    }
    for (int u : walk) state[static_cast<std::size_t>(u)] = 2;
  }
  return {true, {}};
}

struct TopfreeReport {
  bool free_at_bounds = true;
  std::optional<FreeWord> culprit;     // reduced nu gamma nu^{-1} acting as the identity ...
  std::optional<PathCell> fixed_cell;  // ... pointwise on this cylinder
};

namespace detail {

// Cycles of the out-degree-1 subgraph: the only candidates for periodic tails
// gamma with every continuation forced.
inline std::vector<std::vector<int>> degree_one_cycles(const AdjacencyMatrix& A) {
  int n = A.size();
  std::vector<std::vector<int>> cycles;
  std::vector<char> state(static_cast<std::size_t>(n) + 1, 0);
  for (int start = 1; start <= n; ++start) {
    if (state[static_cast<std::size_t>(start)] != 0 || A.out_degree(start) != 1) continue;
    std::vector<int> walk;
    int v = start;
    while (A.out_degree(v) == 1 && state[static_cast<std::size_t>(v)] == 0) {
      state[static_cast<std::size_t>(v)] = 1;
      walk.push_back(v);
      for (int j = 1; j <= n; ++j)
        if (A.edge(v, j)) {
          v = j;
          break;
        }
    }
    if (A.out_degree(v) == 1 && state[static_cast<std::size_t>(v)] == 1) {
      auto at = std::find(walk.begin(), walk.end(), v);
      cycles.emplace_back(at, walk.end());
    }
    for (int u : walk) state[static_cast<std::size_t>(u)] = 2;
  }
  return cycles;
}

// Minimal cylinder depth pinning nu gamma^infty: everything after the last
// out-degree->=2 position of nu is forced.
inline int forced_depth(const AdjacencyMatrix& A, const std::vector<int>& nu) {
  int jstar = 0;
  for (int j = 0; j < static_cast<int>(nu.size()); ++j)
    if (A.out_degree(nu[static_cast<std::size_t>(j)]) >= 2) jstar = j + 1;
  if (jstar >= 1) return jstar + 1;
  return A.size() == 1 ? 0 : 1;
}

}  // namespace detail

// Bounded decision of topological freeness: false iff some reduced word
// t = nu gamma nu^{-1} with |t| <= max_word_len fixes a depth-<=depth cylinder
// pointwise. Search order: gamma over out-degree-1 cycles (discovery order,
// then rotation), nu by length then lexicographically.
inline TopfreeReport topfree_bruteforce(const PartialSystem& sys, int max_word_len, int depth) {
  require_model(sys, Model::pathspace, "topfree_bruteforce");
  const AdjacencyMatrix& A = sys.matrix;
  if (max_word_len <= 0) return {};

  auto report_hit = [&](const std::vector<int>& nu,
                        const std::vector<int>& gamma) -> TopfreeReport {
    FreeWord t;
    t.letters = nu;
    t.letters.insert(t.letters.end(), gamma.begin(), gamma.end());
    for (auto it = nu.rbegin(); it != nu.rend(); ++it) t.letters.push_back(-*it);
    std::vector<int> stream = nu;
    while (static_cast<int>(stream.size()) < detail::forced_depth(A, nu))
      stream.insert(stream.end(), gamma.begin(), gamma.end());
    stream.resize(static_cast<std::size_t>(detail::forced_depth(A, nu)));
    return {false, t, PathCell{stream}};
  };

  std::size_t examined = 0;
  for (const auto& base : detail::degree_one_cycles(A)) {
    int c = static_cast<int>(base.size());
    if (c > max_word_len) continue;
    for (int rot = 0; rot < c; ++rot) {
      std::vector<int> gamma(base.begin(), base.end());
      std::rotate(gamma.begin(), gamma.begin() + rot, gamma.end());
      if (detail::forced_depth(A, {}) <= depth) return report_hit({}, gamma);
      int max_nu = (max_word_len - c) / 2;
      std::vector<std::vector<int>> frontier{{}};
      for (int len = 1; len <= max_nu; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& stem : frontier) {
          for (int j = 1; j <= A.size(); ++j) {
            if (!stem.empty() && !A.edge(stem.back(), j)) continue;
            check_budget(++examined);
            auto nu = stem;
            nu.push_back(j);
            if (A.edge(nu.back(), gamma.front()) && nu.back() != gamma.back() &&
                detail::forced_depth(A, nu) <= depth)
              return report_hit(nu, gamma);
            next.push_back(std::move(nu));
          }
        }
        frontier = std::move(next);
      }
    }
  }
  return {};
}

// All vertex sets closed under edge targets (hereditary) and forced by
// saturation; brute force over subsets, ascending as bitmasks.
inline std::vector<std::vector<int>> hereditary_saturated_sets(const AdjacencyMatrix& A) {
  detail::require_no_zero_rows(A, "hereditary_saturated_sets");
  int n = A.size();
  std::vector<unsigned> targets(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 1; v <= n; ++v)
    for (int j = 1; j <= n; ++j)
      if (A.edge(v, j)) targets[static_cast<std::size_t>(v)] |= 1u << (j - 1);

  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (int v = 1; v <= n && ok; ++v) {
      unsigned tv = targets[static_cast<std::size_t>(v)];
      bool in = (mask >> (v - 1)) & 1u;
      if (in && (tv & ~mask) != 0) ok = false;        // hereditary
      if (!in && (tv & ~mask) == 0) ok = false;       // saturated
    }
    if (!ok) continue;
    std::vector<int> set;
    for (int v = 1; v <= n; ++v)
      if ((mask >> (v - 1)) & 1u) set.push_back(v);
    out.push_back(std::move(set));
  }
  return out;
}

// All unions S of depth-D cylinders with theta_g(S cap X_{g^{-1}}) inside S for
// every generator and inverse. Cylinder words are nodes of a digraph whose
// closed sets (under prepend-truncate and remove-extend edges) are exactly the
// invariant unions; enumerated through the condensation.
inline std::vector<ClopenSet> invariant_clopen_sets(const PartialSystem& sys, int depth) {
  require_model(sys, Model::pathspace, "invariant_clopen_sets");
  if (depth < 0 || depth > 6) fail(Errc::precondition, "invariant_clopen_sets: depth must be 0..6");
  if (depth == 0) return {empty_set(sys), whole_space(sys)};
  const AdjacencyMatrix& A = sys.matrix;

  std::vector<std::vector<int>> words;
  std::vector<std::vector<int>> frontier{{}};
  for (int len = 1; len <= depth; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& stem : frontier)
      for (int j = 1; j <= A.size(); ++j) {
        if (!stem.empty() && !A.edge(stem.back(), j)) continue;
        check_budget(words.size() + next.size() + 1);
        auto w = stem;
        w.push_back(j);
        next.push_back(std::move(w));
      }
    frontier = std::move(next);
  }
  words = std::move(frontier);
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < static_cast<int>(words.size()); ++i)
    index[words[static_cast<std::size_t>(i)]] = i;

  int W = static_cast<int>(words.size());
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(W));
  for (int i = 0; i < W; ++i) {
    const auto& w = words[static_cast<std::size_t>(i)];
    for (int g = 1; g <= A.size(); ++g) {
      if (!A.edge(g, w.front())) continue;
      std::vector<int> pre{g};
      pre.insert(pre.end(), w.begin(), w.end() - 1);
      succ[static_cast<std::size_t>(i)].push_back(index.at(pre));
    }
    for (int j = 1; j <= A.size(); ++j) {
      if (!A.edge(w.back(), j)) continue;
      std::vector<int> rem(w.begin() + 1, w.end());
      rem.push_back(j);
      succ[static_cast<std::size_t>(i)].push_back(index.at(rem));
    }
  }

  // Condensation (Kosaraju over the word digraph).
  std::vector<char> seen(static_cast<std::size_t>(W), 0);
  std::vector<int> order;
  auto dfs1 = [&](auto&& self, int v) -> void {
    seen[static_cast<std::size_t>(v)] = 1;
    for (int j : succ[static_cast<std::size_t>(v)])
      if (!seen[static_cast<std::size_t>(j)]) self(self, j);
    order.push_back(v);
  };
  for (int v = 0; v < W; ++v)
    if (!seen[static_cast<std::size_t>(v)]) dfs1(dfs1, v);
  std::vector<std::vector<int>> pred(static_cast<std::size_t>(W));
  for (int v = 0; v < W; ++v)
    for (int j : succ[static_cast<std::size_t>(v)]) pred[static_cast<std::size_t>(j)].push_back(v);
  std::vector<int> comp(static_cast<std::size_t>(W), -1);
  int C = 0;
  auto dfs2 = [&](auto&& self, int v, int id) -> void {
    comp[static_cast<std::size_t>(v)] = id;
    for (int j : pred[static_cast<std::size_t>(v)])
      if (comp[static_cast<std::size_t>(j)] < 0) self(self, j, id);
  };
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (comp[static_cast<std::size_t>(*it)] < 0) dfs2(dfs2, *it, C++);

  if (C > 20) fail(Errc::budget_exceeded, "invariant_clopen_sets: too many components");
  std::vector<unsigned> comp_succ(static_cast<std::size_t>(C), 0);
  for (int v = 0; v < W; ++v)
    for (int j : succ[static_cast<std::size_t>(v)])
      if (comp[static_cast<std::size_t>(v)] != comp[static_cast<std::size_t>(j)])
        comp_succ[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])] |=
            1u << comp[static_cast<std::size_t>(j)];

  std::vector<ClopenSet> out;
  for (unsigned mask = 0; mask < (1u << C); ++mask) {
    bool closed = true;
    for (int c = 0; c < C && closed; ++c)
      if (((mask >> c) & 1u) && (comp_succ[static_cast<std::size_t>(c)] & ~mask) != 0)
        closed = false;
    if (!closed) continue;
    std::vector<Cell> cells;
    for (int v = 0; v < W; ++v)
      if ((mask >> comp[static_cast<std::size_t>(v)]) & 1u)
        cells.push_back(PathCell{words[static_cast<std::size_t>(v)]});
    out.push_back(canonicalize(sys, cells));
  }
  std::sort(out.begin(), out.end(), [&](const ClopenSet& a, const ClopenSet& b) {
    return std::lexicographical_compare(
        a.cells.begin(), a.cells.end(), b.cells.begin(), b.cells.end(),
        [&](const Cell& x, const Cell& y) { return cell_less(x, y, sys); });
  });
  return out;
}

struct GraphReport {
  bool zero_rows = false;
  ConditionKReport condition_k;
  CycleExitReport cycle_exit;
  std::vector<std::vector<int>> hereditary_saturated;
};

inline GraphReport graph_check(const AdjacencyMatrix& A) {
  GraphReport r;
  r.zero_rows = A.has_zero_row();
  if (r.zero_rows) return r;
  r.condition_k = condition_K(A);
  r.cycle_exit = every_cycle_has_exit(A);
  r.hereditary_saturated = hereditary_saturated_sets(A);
  return r;
}

}  // namespace pcx
