#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <optional>
#include <string>

#include "oracles.hpp"
#include "pcx/pcx.hpp"

using namespace pcx;

namespace {

PartialSystem full2() { return PartialSystem::pathspace(AdjacencyMatrix({{1, 1}, {1, 1}})); }

std::optional<Errc> errc_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("rationals as [num, den] pairs") {
  CHECK(rat_to_json(Rat(5, 3)) == Json::array({5, 3}));
  CHECK(rat_to_json(Rat(-1, 2)) == Json::array({-1, 2}));
  CHECK(rat_from_json(Json::array({2, 4})) == Rat(1, 2));
  CHECK(rat_from_json(rat_to_json(Rat(-22, 7))) == Rat(-22, 7));

  CHECK(errc_of([] { rat_from_json(Json::array({1, 0})); }) == Errc::parse);
  CHECK(errc_of([] { rat_from_json(Json::array({1})); }) == Errc::parse);
  CHECK(errc_of([] { rat_from_json(Json("x")); }) == Errc::parse);
  CHECK(errc_of([] { rat_from_json(Json::array({"12x", 1})); }) == Errc::parse);
}

TEST_CASE("integers beyond 64 bits travel as decimal strings") {
  Int big = Int("9223372036854775808");  // 2^63, one past the widest JSON integer
  Json j = rat_to_json(Rat(big));
  CHECK(j[0].is_string());
  CHECK(j[0].get<std::string>() == "9223372036854775808");
  CHECK(rat_from_json(j) == Rat(big));

  Json fits = rat_to_json(Rat(Int("9223372036854775807")));
  CHECK(fits[0].is_number_integer());

  auto sys = PartialSystem::nadic(2);
  ClopenSet s = canonicalize(sys, {NAdicCell{big, 70}});
  CHECK(set_equals(sys, set_from_json(sys, set_to_json(s)), s));

  auto res = PartialSystem::residue();
  Cell rc = ResidueCell{big, 1, 3};
  CHECK(cell_from_json(res, cell_to_json(rc)) == rc);
  // Set algebra enumerates residues, so a modulus this size must hit the guard.
  CHECK(errc_of([&] { canonicalize(res, {rc}); }) == Errc::budget_exceeded);
}

TEST_CASE("cells in all three models") {
  auto path = full2();
  CHECK(cell_to_json(Cell{PathCell{{1, 2, 1}}}) == Json{{"w", "1.2.1"}});
  CHECK(cell_to_json(Cell{PathCell{{}}}) == Json{{"w", ""}});
  CHECK(cell_from_json(path, Json{{"w", "2.1"}}) == Cell{PathCell{{2, 1}}});
  CHECK(cell_from_json(path, Json{{"w", ""}}) == Cell{PathCell{{}}});

  auto nad = PartialSystem::nadic(2);
  CHECK(cell_to_json(Cell{NAdicCell{3, 2}}) == Json{{"p", 3}, {"k", 2}});
  CHECK(cell_from_json(nad, Json{{"p", 3}, {"k", 2}}) == Cell{NAdicCell{3, 2}});

  auto res = PartialSystem::residue();
  CHECK(cell_to_json(Cell{ResidueCell{6, 1, 5}}) == Json{{"a", 6}, {"b", 1}, {"c", 5}});
  CHECK(cell_from_json(res, Json{{"a", 6}, {"b", 1}, {"c", 5}}) == Cell{ResidueCell{6, 1, 5}});

  CHECK(errc_of([&] { cell_from_json(path, Json{{"w", "1.x"}}); }) == Errc::parse);
  CHECK(errc_of([&] { cell_from_json(path, Json{{"v", "1"}}); }) == Errc::parse);
  CHECK(errc_of([&] { cell_from_json(path, Json{{"w", "3"}}); }) == Errc::inadmissible);
  CHECK(errc_of([&] { cell_from_json(nad, Json{{"p", 4}, {"k", 2}}); }) == Errc::precondition);
  CHECK(errc_of([&] { cell_from_json(res, Json{{"a", 4}, {"b", 1}, {"c", 9}}); }) ==
        Errc::precondition);

  auto fib = PartialSystem::pathspace(AdjacencyMatrix({{1, 1}, {1, 0}}));
  CHECK(errc_of([&] { cell_from_json(fib, Json{{"w", "2.2"}}); }) == Errc::inadmissible);
}

TEST_CASE("sets round trip and are canonicalized on input") {
  auto sys = full2();
  Json two_halves = Json{{"model", "pathspace"},
                         {"cells", Json::array({Json{{"w", "1"}}, Json{{"w", "2"}}})}};
  CHECK(set_equals(sys, set_from_json(sys, two_halves), whole_space(sys)));

  CHECK(errc_of([&] { set_from_json(sys, Json{{"model", "nadic"}, {"cells", Json::array()}}); }) ==
        Errc::parse);
  CHECK(errc_of([&] { set_from_json(sys, Json{{"model", "pathspace"}, {"cells", 3}}); }) ==
        Errc::parse);
}

TEST_CASE("group elements and their token forms") {
  auto path = full2();
  CHECK(group_to_json(GroupElem{FreeWord{{}}}) == Json{{"t", "e"}});
  CHECK(group_to_json(GroupElem{FreeWord{{1, -2}}}) == Json{{"t", "g1 g2^-1"}});
  CHECK(group_from_json(path, Json{{"t", "g1 g2^-1"}}) == GroupElem{FreeWord{{1, -2}}});
  CHECK(group_from_json(path, Json{{"t", "e"}}) == GroupElem{FreeWord{{}}});

  auto nad = PartialSystem::nadic(2);
  Json jn = Json{{"r", Json::array({1, 2})}, {"k", -1}};
  CHECK(group_to_json(GroupElem{NAdicElem{Rat(1, 2), -1}}) == jn);
  CHECK(group_from_json(nad, jn) == GroupElem{NAdicElem{Rat(1, 2), -1}});

  auto res = PartialSystem::residue();
  Json ja = Json{{"u", Json::array({-1, 3})}, {"w", Json::array({3, 2})}};
  CHECK(group_to_json(GroupElem{AffineElem{Rat(-1, 3), Rat(3, 2)}}) == ja);
  CHECK(group_from_json(res, ja) == GroupElem{AffineElem{Rat(-1, 3), Rat(3, 2)}});

  CHECK(errc_of([&] { group_from_json(path, Json{{"t", "h1"}}); }) == Errc::parse);
  CHECK(errc_of([&] { group_from_json(path, Json{{"t", "g1 g1^-1"}}); }) == Errc::precondition);
  CHECK(errc_of([&] { group_from_json(path, Json{{"t", "g3"}}); }) == Errc::precondition);
  CHECK(errc_of([&] { group_from_json(nad, Json{{"r", Json::array({1, 3})}, {"k", 0}}); }) ==
        Errc::precondition);
  CHECK(errc_of([&] {
          group_from_json(res, Json{{"u", Json::array({0, 1})}, {"w", Json::array({0, 1})}});
        }) == Errc::precondition);
  CHECK(errc_of([&] {
          group_from_json(res, Json{{"u", Json::array({0, 1})}, {"w", Json::array({-2, 1})}});
        }) == Errc::precondition);
  auto signed_res = PartialSystem::residue(false);
  CHECK(group_from_json(signed_res, Json{{"u", Json::array({0, 1})}, {"w", Json::array({-2, 1})}}) ==
        GroupElem{AffineElem{Rat(0), Rat(-2)}});
}

TEST_CASE("systems round trip") {
  for (auto sys : {full2(), PartialSystem::pathspace(AdjacencyMatrix({{1, 1}, {1, 0}})),
                   PartialSystem::nadic(3), PartialSystem::residue(),
                   PartialSystem::residue(false)}) {
    PartialSystem back = system_from_json(system_to_json(sys));
    CHECK(back.model == sys.model);
    CHECK(back.n == sys.n);
    CHECK(back.positive_only == sys.positive_only);
    if (sys.model == Model::pathspace) CHECK(back.matrix.a == sys.matrix.a);
  }
  CHECK(errc_of([] { system_from_json(Json{{"model", "torus"}}); }) == Errc::parse);
  CHECK(errc_of([] { system_from_json(Json{{"model", "residue"}, {"ring", "Q"}}); }) ==
        Errc::parse);
  CHECK(errc_of([] { system_from_json(Json{{"model", "pathspace"}, {"matrix", 7}}); }) ==
        Errc::parse);
}

TEST_CASE("functions and algebra elements round trip") {
  auto sys = full2();
  LCFunction f = make_function(sys, {{PathCell{{1}}, Rat(2, 3)}, {PathCell{{2}}, Rat(-1)}});
  CHECK(function_to_json(indicator(sys, canonicalize(sys, {PathCell{{1}}}))) ==
        Json::array({Json{{"cell", Json{{"w", "1"}}}, {"v", Json::array({1, 1})}}}));
  CHECK(function_from_json(sys, function_to_json(f)) == f);

  Json overlapping = Json::array({Json{{"cell", Json{{"w", ""}}}, {"v", Json::array({1, 1})}},
                                  Json{{"cell", Json{{"w", "1"}}}, {"v", Json::array({2, 1})}}});
  CHECK(errc_of([&] { function_from_json(sys, overlapping); }) == Errc::precondition);

  auto s = cuntz_krieger_generators(sys);
  AlgElem x = a_add(sys, s[0], a_star(sys, s[1]));
  CHECK(a_equals(alg_from_json(sys, alg_to_json(x)), x));

  Json bad = Json{{"terms", Json::array({Json{
      {"t", Json{{"t", "g1"}}},
      {"f", Json::array({Json{{"cell", Json{{"w", "2"}}}, {"v", Json::array({1, 1})}}})}}})}};
  CHECK(errc_of([&] { alg_from_json(sys, bad); }) == Errc::precondition);
}

TEST_CASE("frozen witness wire format") {
  auto sys = full2();
  Witness w = find_witness(sys, whole_space(sys));
  Json expect = Json::parse(R"({
    "V": {"cells": [{"w": ""}], "model": "pathspace"},
    "m": 1,
    "n": 1,
    "parts": [
      {"set": {"cells": [{"w": ""}], "model": "pathspace"}, "t": {"t": "g1"}},
      {"set": {"cells": [{"w": ""}], "model": "pathspace"}, "t": {"t": "g2"}}
    ]
  })");
  CHECK(witness_to_json(w) == expect);

  Witness back = witness_from_json(sys, witness_to_json(w));
  CHECK(back.n == w.n);
  CHECK(back.m == w.m);
  CHECK(set_equals(sys, back.V, w.V));
  CHECK(verify_witness(sys, back).pass());
}

TEST_CASE("report serialization carries verdicts and culprits") {
  auto sys = full2();
  Witness good = find_witness(sys, whole_space(sys));
  Json jv = witness_verdict_to_json(verify_witness(sys, good));
  CHECK(jv["pass"] == true);
  CHECK(jv["covers_twice"]["ok"] == true);

  Witness bad = good;
  bad.parts[1] = bad.parts[0];
  Json jb = witness_verdict_to_json(verify_witness(sys, bad));
  CHECK(jb["pass"] == false);
  CHECK(jb["images_disjoint"]["ok"] == false);
  CHECK(jb["images_disjoint"].contains("counterexample"));

  auto s = cuntz_krieger_generators(sys);
  Json jp = proper_infinite_to_json(verify_proper_infinite(sys, s[0], s[1], a_one(sys)));
  CHECK(jp["pass"] == true);
  CHECK(jp["trivial"] == false);

  Json jg = graph_report_to_json(graph_check(AdjacencyMatrix({{1, 1}, {1, 0}})));
  CHECK(jg["zero_rows"] == false);
  CHECK(jg["condition_K"]["holds"] == true);
  CHECK(jg["condition_K"]["evidence"].size() == 2);
  CHECK(jg["every_cycle_has_exit"]["holds"] == true);
  CHECK(jg["hereditary_saturated"] == Json::parse("[[], [1, 2]]"));

  auto cyc = PartialSystem::pathspace(AdjacencyMatrix({{0, 1}, {1, 0}}));
  Json jt = topfree_report_to_json(topfree_bruteforce(cyc, 4, 2));
  CHECK(jt["topologically_free_at_bounds"] == false);
  CHECK(jt["culprit"] == Json{{"t", "g1 g2"}});
  CHECK(jt["fixed_cell"] == Json{{"w", "1"}});

  Json jk = graph_report_to_json(graph_check(AdjacencyMatrix(std::vector<std::vector<int>>{{1}})));
  CHECK(jk["condition_K"]["holds"] == false);
  CHECK(jk["condition_K"]["culprit"] == Json::parse(R"({"vertex": 1, "cycle": [1]})"));
}

TEST_CASE("random objects survive a round trip") {
  std::mt19937 rng(9001);
  for (auto sys : {full2(), PartialSystem::pathspace(AdjacencyMatrix({{1, 1}, {1, 0}})),
                   PartialSystem::nadic(2), PartialSystem::nadic(3), PartialSystem::residue()}) {
    for (int trial = 0; trial < 40; ++trial) {
      ClopenSet s = oracle::random_set(rng, sys, 3, 3);
      CHECK(set_equals(sys, set_from_json(sys, set_to_json(s)), s));

      LCFunction f = oracle::random_function(rng, sys, 3, 3);
      CHECK(function_from_json(sys, function_to_json(f)) == f);

      GroupElem g = oracle::random_group_elem(rng, sys, 4, 6);
      CHECK(group_from_json(sys, group_to_json(g)) == g);

      AlgElem x = oracle::random_alg(rng, sys, 3, 3, 4);
      CHECK(a_equals(alg_from_json(sys, alg_to_json(x)), x));

      if (!is_empty(s)) {
        Witness w = find_witness(sys, s);
        Witness back = witness_from_json(sys, witness_to_json(w));
        CHECK(verify_witness(sys, back).pass());
        CHECK(set_equals(sys, back.V, w.V));
      }
    }
  }
}
