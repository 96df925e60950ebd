#pragma once

// JSON documents: spaces, operator tables, order files and reports.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "esbc/audit.hpp"
#include "esbc/error.hpp"
#include "esbc/formula.hpp"
#include "esbc/logic.hpp"
#include "esbc/operators.hpp"
#include "esbc/space.hpp"
#include "esbc/search.hpp"
#include "esbc/verify.hpp"

namespace esbc {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json parse_json(std::string_view document) {
  try {
    return Json::parse(document.begin(), document.end());
  } catch (const Json::parse_error& e) {
    throw FormatError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline const Json& member(const Json& obj, const char* key, std::string_view where) {
  if (!obj.is_object()) throw FormatError(std::string(where) + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(std::string(where) + " lacks \"" + key + "\"");
  return *it;
}

inline std::string string_of(const Json& j, std::string_view where) {
  if (!j.is_string()) throw FormatError(std::string(where) + " must be a string");
  return j.get<std::string>();
}

inline ModelSet model_set_of(const Json& j, const Signature& sig, std::string_view where) {
  if (!j.is_array()) throw FormatError(std::string(where) + " must be an array of bitstrings");
  ModelSet m;
  for (const auto& e : j) m = m.with(sig.parse_bitstring(string_of(e, where)));
  return m;
}

}  // namespace detail

inline Json model_set_json(ModelSet m, const Signature& sig) {
  Json out = Json::array();
  for (const auto& s : sig.bitstrings(m)) out.push_back(s);
  return out;
}

inline Json space_to_json(const EpistemicSpace& space) {
  Json states = Json::array();
  for (const auto& s : space.states()) {
    states.push_back(Json{{"id", s.id}, {"models", model_set_json(s.beliefs, space.signature())}});
  }
  return Json{{"atoms", space.signature().atoms()}, {"states", std::move(states)}};
}

// {"atoms": [...], "states": [{"id": ..., "beliefs": "<formula>"} or
// {"id": ..., "models": ["10", ...]}]}
inline EpistemicSpace space_from_json(const Json& doc) {
  const Json& atoms = detail::member(doc, "atoms", "space");
  if (!atoms.is_array()) throw FormatError("\"atoms\" must be an array");
  std::vector<std::string> names;
  for (const auto& a : atoms) names.push_back(detail::string_of(a, "atom"));
  Signature sig(std::move(names));
  const Json& states = detail::member(doc, "states", "space");
  if (!states.is_array()) throw FormatError("\"states\" must be an array");
  if (states.empty()) throw EmptySpace();
  std::vector<EpistemicState> out;
  for (const auto& s : states) {
    std::string id = detail::string_of(detail::member(s, "id", "state"), "state id");
    const bool has_beliefs = s.contains("beliefs");
    const bool has_models = s.contains("models");
    if (has_beliefs == has_models) {
      throw FormatError("state '" + id + "' needs exactly one of \"beliefs\" and \"models\"");
    }
    ModelSet bel = has_beliefs
                       ? models_of(parse_formula(detail::string_of(s["beliefs"], "beliefs"), sig), sig)
                       : detail::model_set_of(s["models"], sig, "models");
    out.push_back(EpistemicState{std::move(id), bel});
  }
  return EpistemicSpace(std::move(sig), std::move(out));
}

inline EpistemicSpace load_space(std::string_view document) { return space_from_json(detail::parse_json(document)); }

// Entries are sorted by state (declaration order), then input bitmask.
inline Json table_to_json(const OperatorTable& table) {
  const auto& space = table.space();
  const auto& sig = space.signature();
  Json entries = Json::array();
  for (StateIndex s = 0; s < space.size(); ++s) {
    for (ModelSet::Bits m = 0; m < table.inputs(); ++m) {
      entries.push_back(Json{{"state", space.id(s)},
                             {"input_models", model_set_json(ModelSet(m), sig)},
                             {"result", space.id(table.at(s, ModelSet(m)))}});
    }
  }
  return Json{{"kind", to_string(table.kind())}, {"space", space_to_json(space)}, {"entries", std::move(entries)}};
}

inline OperatorTable table_from_json(const Json& doc) {
  ChangeKind kind = parse_change_kind(detail::string_of(detail::member(doc, "kind", "table"), "kind"));
  auto space = std::make_shared<const EpistemicSpace>(space_from_json(detail::member(doc, "space", "table")));
  const Json& entries = detail::member(doc, "entries", "table");
  if (!entries.is_array()) throw FormatError("\"entries\" must be an array");
  const std::size_t inputs = space->signature().model_set_count();
  std::vector<std::optional<StateIndex>> cells(space->size() * inputs);
  for (const auto& e : entries) {
    StateIndex s = space->index_of(detail::string_of(detail::member(e, "state", "entry"), "state"));
    ModelSet m = detail::model_set_of(detail::member(e, "input_models", "entry"), space->signature(), "input_models");
    StateIndex r = space->index_of(detail::string_of(detail::member(e, "result", "entry"), "result"));
    auto& slot = cells[s * inputs + m.bits()];
    if (slot) throw FormatError("duplicate entry for state '" + space->id(s) + "'");
    slot = r;
  }
  std::vector<StateIndex> flat;
  flat.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i]) {
      throw FormatError("missing entry for state '" + space->id(i / inputs) + "' and input " +
                        space->signature().format(ModelSet(static_cast<ModelSet::Bits>(i % inputs))));
    }
    flat.push_back(*cells[i]);
  }
  return OperatorTable(std::move(space), kind, std::move(flat));
}

inline OperatorTable load_table(std::string_view document) { return table_from_json(detail::parse_json(document)); }

// {"default": "11,10,01,00", "per_state": {"psi_bot": "11,01,10,00"}}
// Every state needs an order, either its own or the default.
inline std::vector<LinearOrder> load_orders(std::string_view document, const EpistemicSpace& space) {
  Json doc = detail::parse_json(document);
  if (!doc.is_object()) throw FormatError("orders document must be an object");
  const auto& sig = space.signature();
  std::optional<LinearOrder> fallback;
  if (doc.contains("default")) fallback = parse_order(detail::string_of(doc["default"], "default"), sig);
  std::vector<std::optional<LinearOrder>> orders(space.size());
  if (doc.contains("per_state")) {
    const Json& per = doc["per_state"];
    if (!per.is_object()) throw FormatError("\"per_state\" must be an object");
    for (auto it = per.begin(); it != per.end(); ++it) {
      orders[space.index_of(it.key())] = parse_order(detail::string_of(it.value(), "order"), sig);
    }
  }
  std::vector<LinearOrder> out;
  for (StateIndex s = 0; s < space.size(); ++s) {
    if (orders[s]) {
      out.push_back(*orders[s]);
    } else if (fallback) {
      out.push_back(*fallback);
    } else {
      throw FormatError("no order for state '" + space.id(s) + "' and no default");
    }
  }
  return out;
}

inline Json realizability_json(const RealizabilityReport& r, const EpistemicSpace& space) {
  const auto& sig = space.signature();
  auto closure = [&](const ClosureCheck& c) {
    Json j{{"holds", c.holds}};
    if (c.state) j["state"] = space.id(*c.state);
    if (c.missing) j["missing"] = model_set_json(*c.missing, sig);
    return j;
  };
  Json zr1{{"holds", r.zr1.holds}};
  if (r.zr1.world) zr1["missing_world"] = sig.bitstring(*r.zr1.world);
  return Json{{"zc", closure(r.zc)},
              {"zr1", std::move(zr1)},
              {"zr2", closure(r.zr2)},
              {"unbiased", closure(r.unbiased)},
              {"contraction_realizable", r.contraction_realizable},
              {"revision_realizable", r.revision_realizable},
              {"full_meet_revision_exists", r.full_meet_revision_exists}};
}

inline Json violation_json(const Violation& v, const EpistemicSpace& space) {
  const auto& sig = space.signature();
  Json j{{"postulate", name(v.postulate)},
         {"state", space.id(v.state)},
         {"input_models", model_set_json(v.input, sig)},
         {"pair_models", v.pair ? model_set_json(*v.pair, sig) : Json(nullptr)},
         {"expected", model_set_json(v.expected, sig)},
         {"actual", model_set_json(v.actual, sig)}};
  return j;
}

inline Json verify_report_json(const VerifyReport& report, const EpistemicSpace& space) {
  Json violations = Json::array();
  for (const auto& v : report.violations) violations.push_back(violation_json(v, space));
  return Json{{"kind", to_string(report.kind)},
              {"plan",
               {{"atoms", report.plan.atoms},
                {"inputs_per_state", report.plan.inputs_per_state},
                {"pairs_per_state", report.plan.pairs_per_state},
                {"exhaustive", report.plan.exhaustive},
                {"seed", report.plan.seed}}},
              {"clean", report.clean()},
              {"violations", std::move(violations)}};
}

inline std::string describe(const Violation& v, const EpistemicSpace& space) {
  const auto& sig = space.signature();
  std::string out = std::string(name(v.postulate)) + " violated at state " + space.id(v.state) + ", input " +
                    sig.format(v.input);
  if (v.pair) out += ", second input " + sig.format(*v.pair);
  out += ": expected " + sig.format(v.expected) + ", actual " + sig.format(v.actual) + " (" +
         std::string(relation(v.postulate)) + ")";
  return out;
}

// Audit records, one JSON object per generated space.

inline std::uint64_t family_mask(const Family& f) {
  std::uint64_t mask = 0;
  for (auto m : f.members) mask |= std::uint64_t{1} << m.bits();
  return mask;
}

inline Json family_json(const Family& f, const Signature& sig) {
  Json members = Json::array();
  for (auto m : f.members) members.push_back(model_set_json(m, sig));
  return Json{{"family_mask", family_mask(f)}, {"members", std::move(members)}};
}

inline Json theorem_record_json(const TheoremRecord& r, const Signature& sig) {
  auto verdict = [](const SearchVerdict& v) {
    Json j{{"exists", v.exists}, {"exhausted", v.exhausted}, {"nodes", v.nodes}};
    j["naive_exists"] = v.naive_exists ? Json(*v.naive_exists) : Json(nullptr);
    return j;
  };
  Json j{{"audit", "theorems"},
         {"family", family_json(r.family, sig)},
         {"zc", r.predicted.zc.holds},
         {"zr1", r.predicted.zr1.holds},
         {"zr2", r.predicted.zr2.holds},
         {"unbiased", r.predicted.unbiased.holds},
         {"contraction", verdict(r.contraction)},
         {"revision", verdict(r.revision)},
         {"full_meet_revision_builds", r.full_meet_revision_builds},
         {"falsifications", r.falsifications}};
  if (!r.falsifications.empty()) j["space"] = space_to_json(*r.family.space(sig));
  return j;
}

inline Json equivalence_record_json(const EquivalenceRecord& r, const Signature& sig) {
  Json builds = Json::array();
  bool agrees = true;
  for (const auto& b : r.builds) {
    Json j{{"construction", b.construction}, {"built", b.built}, {"clean", b.clean}, {"expected", b.expected}};
    if (b.missing) j["missing"] = model_set_json(*b.missing, sig);
    if (b.assignment_ok) j["assignment_ok"] = *b.assignment_ok;
    agrees = agrees && b.agrees();
    builds.push_back(std::move(j));
  }
  Json j{{"audit", "equivalences"},
         {"family", family_json(r.family, sig)},
         {"zc", r.predicted.zc.holds},
         {"zr1_zr2", r.predicted.revision_realizable},
         {"unbiased", r.predicted.unbiased.holds},
         {"builds", std::move(builds)},
         {"agrees", agrees}};
  if (!agrees) j["space"] = space_to_json(*r.family.space(sig));
  return j;
}

inline Json family_count_json(const FamilyCount& c, const Signature& sig) {
  auto count = [](const CountResult& r, const std::optional<std::uint64_t>& naive) {
    Json j{{"count", r.count}, {"exact", r.exact}, {"nodes", r.nodes_visited}};
    j["naive"] = naive ? Json(*naive) : Json(nullptr);
    return j;
  };
  return Json{{"audit", "counts"},
              {"family", family_json(c.family, sig)},
              {"contraction", count(c.contraction, c.naive_contraction)},
              {"revision", count(c.revision, c.naive_revision)},
              {"strategies_agree", c.strategies_agree()}};
}

}  // namespace esbc
