#pragma once

#include <limits>
#include <string>

#include "json.hpp"
#include "pcx/paradox.hpp"

namespace pcx {

using Json = nlohmann::json;

namespace detail {

inline const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    fail(Errc::parse, std::string("missing key \"") + key + "\"");
  return j.at(key);
}

inline Json int_to_json(const Int& x) {
  static const Int lo = std::numeric_limits<long long>::min();
  static const Int hi = std::numeric_limits<long long>::max();
  if (x >= lo && x <= hi) return static_cast<long long>(x);
  return x.str();
}

inline Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    if (s.empty() || s.find_first_not_of("0123456789", s[0] == '-' ? 1 : 0) != std::string::npos)
      fail(Errc::parse, "not an integer: \"" + s + "\"");
    return Int(s);
  }
  fail(Errc::parse, "expected an integer");
}

inline int small_int_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer()) fail(Errc::parse, std::string(what) + ": expected an integer");
  long long v = j.get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    fail(Errc::parse, std::string(what) + ": out of range");
  return static_cast<int>(v);
}

}  // namespace detail

inline Json rat_to_json(const Rat& q) {
  return Json::array({detail::int_to_json(num(q)), detail::int_to_json(den(q))});
}

inline Rat rat_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) fail(Errc::parse, "rational: expected [num, den]");
  Int n = detail::int_from_json(j[0]);
  Int d = detail::int_from_json(j[1]);
  if (d == 0) fail(Errc::parse, "rational: zero denominator");
  return Rat(n, d);
}

inline Json cell_to_json(const Cell& c) {
  Json j;
  std::visit(overloaded{[&](const PathCell& p) {
                          std::string w;
                          for (std::size_t i = 0; i < p.word.size(); ++i) {
                            if (i) w += '.';
                            w += std::to_string(p.word[i]);
                          }
                          j["w"] = w;
                        },
                        [&](const NAdicCell& p) {
                          j["p"] = detail::int_to_json(p.p);
                          j["k"] = p.k;
                        },
                        [&](const ResidueCell& p) {
                          j["a"] = detail::int_to_json(p.a);
                          j["b"] = detail::int_to_json(p.b);
                          j["c"] = detail::int_to_json(p.c);
                        }},
             c);
  return j;
}

inline Cell cell_from_json(const PartialSystem& sys, const Json& j) {
  Cell c;
  switch (sys.model) {
    case Model::pathspace: {
      const Json& w = detail::need(j, "w");
      if (!w.is_string()) fail(Errc::parse, "cell: \"w\" must be a string");
      PathCell p;
      const std::string& s = w.get_ref<const std::string&>();
      std::size_t at = 0;
      while (at < s.size()) {
        std::size_t dot = s.find('.', at);
        if (dot == std::string::npos) dot = s.size();
        const std::string tok = s.substr(at, dot - at);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
          fail(Errc::parse, "cell: bad letter \"" + tok + "\"");
        p.word.push_back(std::stoi(tok));
        at = dot + 1;
      }
      c = p;
      break;
    }
    case Model::nadic:
      c = NAdicCell{detail::int_from_json(detail::need(j, "p")),
                    detail::small_int_from_json(detail::need(j, "k"), "cell k")};
      break;
    case Model::residue:
      c = ResidueCell{detail::int_from_json(detail::need(j, "a")),
                      detail::int_from_json(detail::need(j, "b")),
                      detail::int_from_json(detail::need(j, "c"))};
      break;
  }
  validate_cell(sys, c);
  return c;
}

inline Json set_to_json(const ClopenSet& s) {
  Json cells = Json::array();
  for (const auto& c : s.cells) cells.push_back(cell_to_json(c));
  return Json{{"model", model_name(s.model)}, {"cells", std::move(cells)}};
}

inline ClopenSet set_from_json(const PartialSystem& sys, const Json& j) {
  const Json& model = detail::need(j, "model");
  if (!model.is_string() || model.get_ref<const std::string&>() != model_name(sys.model))
    fail(Errc::parse, "set: model mismatch");
  const Json& cells = detail::need(j, "cells");
  if (!cells.is_array()) fail(Errc::parse, "set: \"cells\" must be an array");
  std::vector<Cell> out;
  for (const auto& c : cells) out.push_back(cell_from_json(sys, c));
  return canonicalize(sys, out);
}

inline Json group_to_json(const GroupElem& g) {
  Json j;
  std::visit(overloaded{[&](const FreeWord& w) {
                          std::string s;
                          for (int l : w.letters) {
                            if (!s.empty()) s += ' ';
                            s += "g" + std::to_string(l > 0 ? l : -l);
                            if (l < 0) s += "^-1";
                          }
                          j["t"] = s.empty() ? "e" : s;
                        },
                        [&](const NAdicElem& e) {
                          j["r"] = rat_to_json(e.r);
                          j["k"] = e.k;
                        },
                        [&](const AffineElem& e) {
                          j["u"] = rat_to_json(e.u);
                          j["w"] = rat_to_json(e.w);
                        }},
             g);
  return j;
}

inline GroupElem group_from_json(const PartialSystem& sys, const Json& j) {
  GroupElem g;
  switch (sys.model) {
    case Model::pathspace: {
      const Json& t = detail::need(j, "t");
      if (!t.is_string()) fail(Errc::parse, "group element: \"t\" must be a string");
      const std::string& s = t.get_ref<const std::string&>();
      FreeWord w;
      if (s != "e") {
        std::size_t at = 0;
        while (at < s.size()) {
          std::size_t sp = s.find(' ', at);
          if (sp == std::string::npos) sp = s.size();
          std::string tok = s.substr(at, sp - at);
          bool inv = false;
          if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
            inv = true;
            tok.resize(tok.size() - 3);
          }
          if (tok.size() < 2 || tok[0] != 'g' ||
              tok.find_first_not_of("0123456789", 1) != std::string::npos)
            fail(Errc::parse, "group element: bad token \"" + tok + "\"");
          int l = std::stoi(tok.substr(1));
          w.letters.push_back(inv ? -l : l);
          at = sp + 1;
        }
      }
      g = w;
      break;
    }
    case Model::nadic:
      g = NAdicElem{rat_from_json(detail::need(j, "r")),
                    detail::small_int_from_json(detail::need(j, "k"), "group element k")};
      break;
    case Model::residue:
      g = AffineElem{rat_from_json(detail::need(j, "u")), rat_from_json(detail::need(j, "w"))};
      break;
  }
  validate_group_elem(sys, g);
  return g;
}

inline Json system_to_json(const PartialSystem& sys) {
  switch (sys.model) {
    case Model::pathspace: {
      Json rows = Json::array();
      for (const auto& row : sys.matrix.a) rows.push_back(row);
      return Json{{"model", "pathspace"}, {"matrix", std::move(rows)}};
    }
    case Model::nadic: return Json{{"model", "nadic"}, {"n", sys.n}};
    default:
      return Json{{"model", "residue"}, {"ring", "Z"}, {"positive_only", sys.positive_only}};
  }
}

inline PartialSystem system_from_json(const Json& j) {
  const Json& model = detail::need(j, "model");
  if (!model.is_string()) fail(Errc::parse, "system: \"model\" must be a string");
  const std::string& name = model.get_ref<const std::string&>();
  if (name == "pathspace") {
    const Json& m = detail::need(j, "matrix");
    if (!m.is_array()) fail(Errc::parse, "system: \"matrix\" must be an array");
    std::vector<std::vector<int>> rows;
    for (const auto& r : m) {
      if (!r.is_array()) fail(Errc::parse, "system: matrix rows must be arrays");
      std::vector<int> row;
      for (const auto& v : r) row.push_back(detail::small_int_from_json(v, "matrix entry"));
      rows.push_back(std::move(row));
    }
    return PartialSystem::pathspace(AdjacencyMatrix(std::move(rows)));
  }
  if (name == "nadic")
    return PartialSystem::nadic(detail::small_int_from_json(detail::need(j, "n"), "nadic n"));
  if (name == "residue") {
    if (j.contains("ring")) {
      const Json& ring = j.at("ring");
      if (!ring.is_string() || ring.get_ref<const std::string&>() != "Z")
        fail(Errc::parse, "system: only ring \"Z\" is supported");
    }
    bool pos = true;
    if (j.contains("positive_only")) {
      if (!j.at("positive_only").is_boolean()) fail(Errc::parse, "system: \"positive_only\" must be a boolean");
      pos = j.at("positive_only").get<bool>();
    }
    return PartialSystem::residue(pos);
  }
  fail(Errc::parse, "system: unknown model \"" + name + "\"");
}

inline Json function_to_json(const LCFunction& f) {
  Json j = Json::array();
  for (const auto& [cell, v] : f.pieces)
    j.push_back(Json{{"cell", cell_to_json(cell)}, {"v", rat_to_json(v)}});
  return j;
}

inline LCFunction function_from_json(const PartialSystem& sys, const Json& j) {
  if (!j.is_array()) fail(Errc::parse, "function: expected an array of pieces");
  std::vector<std::pair<Cell, Rat>> pieces;
  for (const auto& piece : j)
    pieces.emplace_back(cell_from_json(sys, detail::need(piece, "cell")),
                        rat_from_json(detail::need(piece, "v")));
  return make_function(sys, pieces);
}

inline Json alg_to_json(const AlgElem& x) {
  Json terms = Json::array();
  for (const auto& [t, f] : x.terms)
    terms.push_back(Json{{"t", group_to_json(t)}, {"f", function_to_json(f)}});
  return Json{{"terms", std::move(terms)}};
}

inline AlgElem alg_from_json(const PartialSystem& sys, const Json& j) {
  const Json& terms = detail::need(j, "terms");
  if (!terms.is_array()) fail(Errc::parse, "algebra element: \"terms\" must be an array");
  std::vector<std::pair<GroupElem, LCFunction>> out;
  for (const auto& term : terms)
    out.emplace_back(group_from_json(sys, detail::need(term, "t")),
                     function_from_json(sys, detail::need(term, "f")));
  return make_alg(sys, out);
}

inline Json witness_to_json(const Witness& w) {
  Json parts = Json::array();
  for (const auto& [set, t] : w.parts)
    parts.push_back(Json{{"set", set_to_json(set)}, {"t", group_to_json(t)}});
  return Json{{"V", set_to_json(w.V)}, {"n", w.n}, {"m", w.m}, {"parts", std::move(parts)}};
}

inline Witness witness_from_json(const PartialSystem& sys, const Json& j) {
  Witness w;
  w.V = set_from_json(sys, detail::need(j, "V"));
  w.n = detail::small_int_from_json(detail::need(j, "n"), "witness n");
  w.m = detail::small_int_from_json(detail::need(j, "m"), "witness m");
  const Json& parts = detail::need(j, "parts");
  if (!parts.is_array()) fail(Errc::parse, "witness: \"parts\" must be an array");
  for (const auto& part : parts)
    w.parts.emplace_back(set_from_json(sys, detail::need(part, "set")),
                         group_from_json(sys, detail::need(part, "t")));
  return w;
}

namespace detail {

inline Json condition_to_json(const ConditionVerdict& c) {
  Json j{{"ok", c.ok}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  if (c.counterexample) j["counterexample"] = cell_to_json(*c.counterexample);
  return j;
}

}  // namespace detail

inline Json witness_verdict_to_json(const WitnessVerdict& v) {
  return Json{{"pass", v.pass()},
              {"covers_twice", detail::condition_to_json(v.covers_twice)},
              {"domains", detail::condition_to_json(v.domains)},
              {"images_inside", detail::condition_to_json(v.images_inside)},
              {"images_disjoint", detail::condition_to_json(v.images_disjoint)}};
}

inline Json proper_infinite_to_json(const ProperInfiniteVerdict& v) {
  return Json{{"pass", v.pass()},
              {"trivial", v.trivial},
              {"xstar_x_is_p", v.xstar_x_is_p},
              {"ystar_y_is_p", v.ystar_y_is_p},
              {"ystar_x_is_zero", v.ystar_x_is_zero},
              {"p_x_is_x", v.p_x_is_x},
              {"p_y_is_y", v.p_y_is_y}};
}

inline Json graph_report_to_json(const GraphReport& r) {
  Json k{{"holds", r.condition_k.holds}};
  Json evidence = Json::array();
  for (const auto& e : r.condition_k.evidence)
    evidence.push_back(Json{{"vertex", e.vertex}, {"loops", Json::array({e.first, e.second})}});
  k["evidence"] = std::move(evidence);
  if (r.condition_k.culprit)
    k["culprit"] =
        Json{{"vertex", r.condition_k.culprit->vertex}, {"cycle", r.condition_k.culprit->first}};
  Json exit{{"holds", r.cycle_exit.holds}};
  if (!r.cycle_exit.holds) exit["culprit_cycle"] = r.cycle_exit.culprit_cycle;
  return Json{{"zero_rows", r.zero_rows},
              {"condition_K", std::move(k)},
              {"every_cycle_has_exit", std::move(exit)},
              {"hereditary_saturated", r.hereditary_saturated}};
}

inline Json topfree_report_to_json(const TopfreeReport& r) {
  Json j{{"topologically_free_at_bounds", r.free_at_bounds}};
  if (r.culprit) j["culprit"] = group_to_json(GroupElem{*r.culprit});
  if (r.fixed_cell) j["fixed_cell"] = cell_to_json(Cell{*r.fixed_cell});
  return j;
}

}  // namespace pcx
