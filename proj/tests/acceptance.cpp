// Acceptance gate: nine timed criteria, one PASS/FAIL line each, exit 0 only
// when every criterion passes. argv[1] is the path to the pcx CLI binary.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pcx/pcx.hpp"

using namespace pcx;

namespace {

std::string g_cli;
std::filesystem::path g_dir;

PartialSystem full_system(int n) {
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n),
                                     std::vector<int>(static_cast<std::size_t>(n), 1));
  return PartialSystem::pathspace(AdjacencyMatrix(rows));
}

PartialSystem fib_system() { return PartialSystem::pathspace(AdjacencyMatrix({{1, 1}, {1, 0}})); }

bool cuntz_relations(const PartialSystem& sys) {
  auto s = cuntz_krieger_generators(sys);
  AlgElem sum = a_zero(sys);
  for (const auto& si : s) sum = a_add(sys, sum, a_mul(sys, si, a_star(sys, si)));
  bool ok = a_equals(sum, a_one(sys));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      AlgElem prod = a_mul(sys, a_star(sys, s[i]), s[j]);
      if (i == j)
        ok = ok && a_equals(prod, a_one(sys));
      else
        ok = ok && prod.is_zero();
    }
  return ok;
}

bool criterion1(std::string& note) {
  bool ok = cuntz_relations(full_system(2)) && cuntz_relations(full_system(3));
  note = "Cuntz relations for the full 2- and 3-letter systems";
  return ok;
}

bool criterion2(std::string& note) {
  auto sys = fib_system();
  auto s = cuntz_krieger_generators(sys);
  AlgElem sum = a_zero(sys);
  for (const auto& si : s) sum = a_add(sys, sum, a_mul(sys, si, a_star(sys, si)));
  bool ok = a_equals(sum, a_one(sys));
  for (int i = 1; i <= sys.n; ++i) {
    AlgElem rhs = a_zero(sys);
    for (int j = 1; j <= sys.n; ++j)
      if (sys.matrix.edge(i, j))
        rhs = a_add(sys, rhs,
                    a_mul(sys, s[static_cast<std::size_t>(j - 1)],
                          a_star(sys, s[static_cast<std::size_t>(j - 1)])));
    ok = ok && a_equals(a_mul(sys, a_star(sys, s[static_cast<std::size_t>(i - 1)]),
                              s[static_cast<std::size_t>(i - 1)]),
                        rhs);
  }
  note = "range projections of the Fibonacci system satisfy the matrix relations";
  return ok;
}

bool criterion3(std::string& note) {
  auto sys = PartialSystem::residue();
  bool ok = a_equals(a_mul(sys, residue_isometry(sys, 2), residue_isometry(sys, 3)),
                     residue_isometry(sys, 6));
  ok = ok && a_equals(a_mul(sys, residue_unitary(sys, 1), residue_unitary(sys, 2)),
                      residue_unitary(sys, 3));
  ok = ok && a_equals(a_mul(sys, residue_isometry(sys, 2), residue_unitary(sys, 1)),
                      a_mul(sys, residue_unitary(sys, 2), residue_isometry(sys, 2)));
  AlgElem sum = a_zero(sys);
  for (int l = 0; l < 2; ++l) {
    AlgElem term = a_mul(sys, residue_unitary(sys, l),
                         a_mul(sys, residue_isometry(sys, 2),
                               a_mul(sys, a_star(sys, residue_isometry(sys, 2)),
                                     residue_unitary(sys, -l))));
    sum = a_add(sys, sum, term);
  }
  ok = ok && a_equals(sum, a_one(sys));
  note = "integer multiplication-and-shift relations among u and s_m";
  return ok;
}

bool pipeline_ok(const PartialSystem& sys, const ClopenSet& v) {
  Witness w = find_witness(sys, v);
  if (!verify_witness(sys, w).pass()) return false;
  Isometries iso = witness_to_isometries(sys, w);
  auto verdict = verify_proper_infinite(sys, iso.x, iso.y, iso.p);
  return verdict.pass() && !verdict.trivial && is_projection(sys, iso.p);
}

bool criterion4(std::string& note) {
  std::vector<std::pair<PartialSystem, ClopenSet>> jobs;
  for (auto sys : {fib_system(), full_system(2)})
    for (std::size_t d = 0; d <= 3; ++d)
      for (const auto& word : oracle::all_words(sys.matrix, d))
        jobs.emplace_back(sys, canonicalize(sys, {PathCell{word}}));
  auto nad = PartialSystem::nadic(2);
  for (int k = 0; k <= 3; ++k)
    for (Int p = 0; p < oracle::npow(2, k); ++p)
      jobs.emplace_back(nad, canonicalize(nad, {NAdicCell{p, k}}));
  auto res = PartialSystem::residue();
  for (int a = 1; a <= 6; ++a)
    for (int c = 0; c < a; ++c)
      jobs.emplace_back(res, canonicalize(res, {ResidueCell{a, 1, c}}));

  bool ok = jobs.size() >= 30;
  for (const auto& [sys, v] : jobs) ok = ok && pipeline_ok(sys, v);
  note = "find/verify/lift pipeline certifies " + std::to_string(jobs.size()) + " clopen sets";
  return ok;
}

bool criterion5(std::string& note) {
  bool ok = true;
  for (int n : {2, 3}) {
    auto sys = PartialSystem::nadic(n);
    for (int k = 0; k <= 3; ++k) {
      GroupElem shift{NAdicElem{Rat(-1, oracle::npow(n, k)), 0}};
      for (Int p = 1; p < oracle::npow(n, k); ++p) {
        ClopenSet cell = canonicalize(sys, {NAdicCell{p, k}});
        ClopenSet want = canonicalize(sys, {NAdicCell{p - 1, k}});
        ok = ok && set_equals(sys, apply(sys, shift, cell), want);
      }
      GroupElem rescale{NAdicElem{Rat(0), -k}};
      ok = ok && set_equals(sys, apply(sys, rescale, canonicalize(sys, {NAdicCell{0, k}})),
                            whole_space(sys));
    }
  }
  auto res = PartialSystem::residue();
  for (int s : {2, 3})
    for (int w = 1; w <= 4; ++w)
      for (int u = 0; u < w; ++u) {
        ClopenSet base = range_of(res, AffineElem{u, w});
        ok = ok && set_equals(res, apply(res, GroupElem{AffineElem{Rat(0), Rat(s)}}, base),
                              range_of(res, AffineElem{Rat(s) * u, Rat(s) * w}));
        ok = ok && set_equals(res, apply(res, GroupElem{AffineElem{Rat(s), Rat(1)}}, base),
                              range_of(res, AffineElem{Rat(s) + u, Rat(w)}));
      }
  note = "closed-form shift, rescale, and affine images match cell for cell";
  return ok;
}

bool criterion6(std::string& note) {
  std::mt19937 rng(41);
  int checked = 0;
  bool ok = true;
  for (auto sys : {full_system(2), fib_system(), PartialSystem::nadic(2),
                   PartialSystem::residue()}) {
    int trials = sys.model == Model::pathspace ? 500 : 1000;
    for (int i = 0; i < trials; ++i) {
      GroupElem t = oracle::random_group_elem(rng, sys, 4, 8);
      GroupElem s = oracle::random_group_elem(rng, sys, 4, 8);
      ClopenSet S = oracle::random_set(rng, sys, 4, 4);
      ok = ok && oracle::action_laws_hold(sys, t, s, S);
      ++checked;
    }
  }
  note = "identity, inverse, and extension laws on " + std::to_string(checked) +
         " random pairs";
  return ok;
}

bool criterion7(std::string& note) {
  std::mt19937 rng(42);
  int elements = 0;
  bool ok = true;
  for (auto sys : {full_system(2), PartialSystem::nadic(2), PartialSystem::residue()}) {
    for (int i = 0; i < 60; ++i) {
      AlgElem x = oracle::random_alg(rng, sys, 4, 3, 4);
      AlgElem y = oracle::random_alg(rng, sys, 4, 3, 4);
      AlgElem z = oracle::random_alg(rng, sys, 4, 3, 4);
      elements += 3;
      ok = ok && a_equals(a_mul(sys, a_mul(sys, x, y), z), a_mul(sys, x, a_mul(sys, y, z)));
      ok = ok && a_equals(a_star(sys, a_mul(sys, x, y)),
                          a_mul(sys, a_star(sys, y), a_star(sys, x)));
      ok = ok && l1_norm(a_mul(sys, x, y)) <= l1_norm(x) * l1_norm(y);

      LCFunction f = oracle::random_function(rng, sys, 2, 2);
      LCFunction h = oracle::random_function(rng, sys, 2, 2);
      AlgElem fe = a_monomial(sys, f, identity_elem(sys));
      AlgElem he = a_monomial(sys, h, identity_elem(sys));
      ok = ok && expectation(sys, a_mul(sys, fe, a_mul(sys, x, he))) ==
                     f_mul(sys, f, f_mul(sys, expectation(sys, x), h));

      LCFunction diag = expectation(sys, a_mul(sys, a_star(sys, x), x));
      ok = ok && diag.is_zero() == x.is_zero();
      for (const auto& [c, v] : diag.pieces) ok = ok && v > 0;
    }
  }
  note = "star-algebra and expectation laws on " + std::to_string(elements) +
         " random elements";
  return ok;
}

bool criterion8(std::string& note) {
  std::mt19937 rng(43);
  bool ok = hereditary_saturated_sets(AdjacencyMatrix({{1, 1}, {0, 1}})) ==
            std::vector<std::vector<int>>{{}, {2}, {1, 2}};
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    AdjacencyMatrix A = oracle::random_zero_row_free(rng, n);
    ok = ok && condition_K(A).holds == oracle::condition_K_bruteforce(A);
    bool exits = every_cycle_has_exit(A).holds;
    ok = ok && exits == oracle::every_cycle_has_exit_bruteforce(A);
    auto sys = PartialSystem::pathspace(A);
    ok = ok && topfree_bruteforce(sys, 2 * n, 2 * n).free_at_bounds == exits;
  }
  note = "graph predicates agree with brute force on 1000 random matrices";
  return ok;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

// Three runs of one CLI invocation; true when all exit with `want` and print
// identical nonempty bytes.
bool stable(const std::string& args, int want = 0) {
  std::vector<std::string> outs;
  for (int i = 0; i < 3; ++i) {
    auto out = g_dir / ("run" + std::to_string(i) + ".out");
    std::string cmd = "\"" + g_cli + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
    int rc = std::system(cmd.c_str());
    if (!WIFEXITED(rc) || WEXITSTATUS(rc) != want) return false;
    outs.push_back(slurp(out));
  }
  return !outs[0].empty() && outs[0] == outs[1] && outs[0] == outs[2];
}

bool criterion9(std::string& note) {
  note = "CLI reports are byte-identical across 3 runs";
  if (g_cli.empty()) {
    note += " (no CLI path given)";
    return false;
  }
  std::filesystem::create_directories(g_dir);
  auto sys = g_dir / "fib.json";
  auto set = g_dir / "set.json";
  auto res = g_dir / "res.json";
  write_file(sys, R"({"model":"pathspace","matrix":[[1,1],[1,0]]})");
  write_file(set, R"({"model":"pathspace","cells":[{"w":"2"}]})");
  write_file(res, R"({"model":"residue"})");

  auto witness = g_dir / "w.json";
  std::string find_args = "paradox find \"" + sys.string() + "\" --set \"" + set.string() + "\"";
  bool ok = stable(find_args);
  int rc = std::system((
      "\"" + g_cli + "\" " + find_args + " --out \"" + witness.string() + "\" 2>/dev/null")
                           .c_str());
  ok = ok && WIFEXITED(rc) && WEXITSTATUS(rc) == 0;
  ok = ok && stable("paradox verify \"" + sys.string() + "\" \"" + witness.string() + "\"");
  ok = ok && stable("paradox lift \"" + sys.string() + "\" \"" + witness.string() + "\"");
  ok = ok && stable("graph check \"" + sys.string() + "\"");
  ok = ok && stable("topfree \"" + sys.string() + "\"");
  ok = ok && stable("verify-relations \"" + res.string() + "\"");
  ok = ok && stable("invariants \"" + sys.string() + "\" --depth 2");
  return ok;
}

struct Criterion {
  int number;
  std::function<bool(std::string&)> fn;
  long limit_ms;  // 0: no bound enforced
};

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli = argv[1];
  g_dir = std::filesystem::temp_directory_path() / "pcx_acceptance";

  std::vector<Criterion> table{
      {1, criterion1, 1000}, {2, criterion2, 1000}, {3, criterion3, 1000},
      {4, criterion4, 30000}, {5, criterion5, 0},   {6, criterion6, 30000},
      {7, criterion7, 30000}, {8, criterion8, 60000}, {9, criterion9, 0},
  };

  bool all = true;
  for (auto& c : table) {
    std::string note;
    bool ok = false;
    auto start = std::chrono::steady_clock::now();
    try {
      ok = c.fn(note);
    } catch (const std::exception& e) {
      note += std::string(" [exception: ") + e.what() + "]";
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    if (c.limit_ms > 0 && ms >= c.limit_ms) {
      ok = false;
      note += " [over " + std::to_string(c.limit_ms) + " ms budget]";
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.number << ": " << note << " ("
              << ms << " ms)\n";
    all = all && ok;
  }
  return all ? 0 : 1;
}
