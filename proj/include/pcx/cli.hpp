#pragma once

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pcx/serialize.hpp"

namespace pcx {

// Exit codes: 0 all checks pass / object produced, 1 a mathematical check
// failed, 2 input, parse, or precondition error.
inline int exit_code_for(Errc c) {
  switch (c) {
    case Errc::hypothesis_failed:
    case Errc::search_exhausted: return 1;
    default: return 2;
  }
}

namespace detail {

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::exception& e) {
    fail(Errc::parse, path + ": " + e.what());
  }
}

inline void emit(const Json& j, const std::string& out_path, std::ostream& out) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) fail(Errc::parse, "cannot write " + out_path);
  f << text;
}

inline int run_verify_relations(const PartialSystem& sys, int max_m, int max_n,
                                const std::string& out_path, std::ostream& out) {
  if (sys.model == Model::nadic)
    fail(Errc::precondition,
         "verify-relations: no distinguished generator family for the nadic model; "
         "use the paradox pipeline instead");
  Json relations = Json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool pass) {
    relations.push_back(Json{{"name", name}, {"pass", pass}});
    all &= pass;
  };

  if (sys.model == Model::pathspace) {
    auto s = cuntz_krieger_generators(sys);
    AlgElem sum = a_zero(sys);
    for (const auto& si : s) sum = a_add(sys, sum, a_mul(sys, si, a_star(sys, si)));
    record("sum_j s_j s_j* = 1", a_equals(sum, a_one(sys)));
    for (int i = 1; i <= sys.n; ++i) {
      AlgElem lhs = a_zero(sys);
      for (int j = 1; j <= sys.n; ++j)
        if (sys.matrix.edge(i, j))
          lhs = a_add(sys, lhs,
                      a_mul(sys, s[static_cast<std::size_t>(j - 1)],
                            a_star(sys, s[static_cast<std::size_t>(j - 1)])));
      AlgElem rhs = a_mul(sys, a_star(sys, s[static_cast<std::size_t>(i - 1)]),
                          s[static_cast<std::size_t>(i - 1)]);
      record("sum_j a_" + std::to_string(i) + "j s_j s_j* = s_" + std::to_string(i) + "* s_" +
                 std::to_string(i),
             a_equals(lhs, rhs));
    }
  } else {
    for (int m = 2; m <= max_m; ++m)
      for (int mp = 2; mp <= max_m; ++mp)
        record("s_" + std::to_string(m) + " s_" + std::to_string(mp) + " = s_" +
                   std::to_string(m * mp),
               a_equals(a_mul(sys, residue_isometry(sys, m), residue_isometry(sys, mp)),
                        residue_isometry(sys, Int(m) * mp)));
    for (int n = -max_n; n <= max_n; ++n)
      for (int np = -max_n; np <= max_n; ++np)
        record("u^" + std::to_string(n) + " u^" + std::to_string(np) + " = u^" +
                   std::to_string(n + np),
               a_equals(a_mul(sys, residue_unitary(sys, n), residue_unitary(sys, np)),
                        residue_unitary(sys, Int(n) + np)));
    for (int m = 2; m <= max_m; ++m)
      for (int n = -max_n; n <= max_n; ++n)
        record("s_" + std::to_string(m) + " u^" + std::to_string(n) + " = u^" +
                   std::to_string(m * n) + " s_" + std::to_string(m),
               a_equals(a_mul(sys, residue_isometry(sys, m), residue_unitary(sys, n)),
                        a_mul(sys, residue_unitary(sys, Int(m) * n), residue_isometry(sys, m))));
    for (int m = 2; m <= max_m; ++m) {
      AlgElem sum = a_zero(sys);
      for (int l = 0; l < m; ++l) {
        AlgElem term = a_mul(sys, residue_unitary(sys, l),
                             a_mul(sys, residue_isometry(sys, m),
                                   a_mul(sys, a_star(sys, residue_isometry(sys, m)),
                                         residue_unitary(sys, -l))));
        sum = a_add(sys, sum, term);
      }
      record("sum_l u^l s_" + std::to_string(m) + " s_" + std::to_string(m) + "* u^-l = 1",
             a_equals(sum, a_one(sys)));
    }
  }
  emit(Json{{"model", model_name(sys.model)}, {"pass", all}, {"relations", relations}}, out_path,
       out);
  return all ? 0 : 1;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (const char* env = std::getenv("PCX_MAX_CELLS")) {
    std::string v(env);
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
      err << "error: PCX_MAX_CELLS must be a nonnegative integer\n";
      return 2;
    }
    cell_budget().store(std::stoull(v));
  }

  CLI::App app{"exact certification for partial dynamical systems and their crossed products"};
  app.require_subcommand(1);

  std::string system_path, set_path, witness_path, out_path;
  int max_m = 3, max_n = 2, max_word_len = -1, depth = -1;

  auto* vr = app.add_subcommand("verify-relations", "check the generator relations of the model");
  vr->add_option("system", system_path, "system JSON file")->required();
  vr->add_option("--max-m", max_m, "largest isometry index (residue)");
  vr->add_option("--max-n", max_n, "unitary exponent bound (residue)");
  vr->add_option("--out", out_path, "write the report here instead of stdout");

  auto* paradox = app.add_subcommand("paradox", "construct and verify paradoxicality witnesses");
  paradox->require_subcommand(1);
  auto* pfind = paradox->add_subcommand("find", "construct a witness for a clopen set");
  pfind->add_option("system", system_path, "system JSON file")->required();
  pfind->add_option("--set", set_path, "clopen set JSON file")->required();
  pfind->add_option("--out", out_path, "write the witness here instead of stdout");
  auto* pverify = paradox->add_subcommand("verify", "verify a witness");
  pverify->add_option("system", system_path, "system JSON file")->required();
  pverify->add_option("witness", witness_path, "witness JSON file")->required();
  pverify->add_option("--out", out_path, "write the verdict here instead of stdout");
  auto* plift = paradox->add_subcommand("lift", "lift a witness to x, y, p and check the five identities");
  plift->add_option("system", system_path, "system JSON file")->required();
  plift->add_option("witness", witness_path, "witness JSON file")->required();
  plift->add_option("--out", out_path, "write the report here instead of stdout");

  auto* graph = app.add_subcommand("graph", "graph-theoretic hypothesis checks");
  graph->require_subcommand(1);
  auto* gcheck = graph->add_subcommand("check", "condition (K), cycle exits, hereditary saturated sets");
  gcheck->add_option("system", system_path, "system JSON file")->required();
  gcheck->add_option("--out", out_path, "write the report here instead of stdout");

  auto* tf = app.add_subcommand("topfree", "bounded topological-freeness check");
  tf->add_option("system", system_path, "system JSON file")->required();
  tf->add_option("--max-word-len", max_word_len, "group word length bound (default 2n)");
  tf->add_option("--depth", depth, "cylinder depth bound (default 2n)");
  tf->add_option("--out", out_path, "write the report here instead of stdout");

  auto* inv = app.add_subcommand("invariants", "invariant unions of depth-D cylinders");
  inv->add_option("system", system_path, "system JSON file")->required();
  inv->add_option("--depth", depth, "cylinder depth (0..6)")->required();
  inv->add_option("--out", out_path, "write the report here instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return 0;
    }
    app.exit(e, out, err);
    return 2;
  }

  try {
    PartialSystem sys = system_from_json(detail::load_json(system_path));

    if (vr->parsed()) return detail::run_verify_relations(sys, max_m, max_n, out_path, out);

    if (pfind->parsed()) {
      ClopenSet V = set_from_json(sys, detail::load_json(set_path));
      Witness w = find_witness(sys, V);
      detail::emit(witness_to_json(w), out_path, out);
      return 0;
    }
    if (pverify->parsed()) {
      Witness w = witness_from_json(sys, detail::load_json(witness_path));
      WitnessVerdict v = verify_witness(sys, w);
      detail::emit(witness_verdict_to_json(v), out_path, out);
      return v.pass() ? 0 : 1;
    }
    if (plift->parsed()) {
      Witness w = witness_from_json(sys, detail::load_json(witness_path));
      Isometries iso = witness_to_isometries(sys, w);
      ProperInfiniteVerdict v = verify_proper_infinite(sys, iso.x, iso.y, iso.p);
      detail::emit(Json{{"x", alg_to_json(iso.x)},
                        {"y", alg_to_json(iso.y)},
                        {"p", alg_to_json(iso.p)},
                        {"verdict", proper_infinite_to_json(v)}},
                   out_path, out);
      return v.pass() ? 0 : 1;
    }
    if (gcheck->parsed()) {
      require_model(sys, Model::pathspace, "graph check");
      GraphReport r = graph_check(sys.matrix);
      detail::emit(graph_report_to_json(r), out_path, out);
      return !r.zero_rows && r.condition_k.holds && r.cycle_exit.holds ? 0 : 1;
    }
    if (tf->parsed()) {
      require_model(sys, Model::pathspace, "topfree");
      if (max_word_len < 0) max_word_len = 2 * sys.n;
      if (depth < 0) depth = 2 * sys.n;
      TopfreeReport r = topfree_bruteforce(sys, max_word_len, depth);
      detail::emit(topfree_report_to_json(r), out_path, out);
      return r.free_at_bounds ? 0 : 1;
    }
    if (inv->parsed()) {
      auto sets = invariant_clopen_sets(sys, depth);
      Json list = Json::array();
      for (const auto& s : sets) list.push_back(set_to_json(s));
      detail::emit(Json{{"depth", depth}, {"invariant_sets", std::move(list)}}, out_path, out);
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace pcx
