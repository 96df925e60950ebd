#pragma once

// Recognizes full meet, maxichoice and linear operators from their tables
// and recovers the linear orders behind them.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "esbc/logic.hpp"
#include "esbc/operators.hpp"

namespace esbc {

// (preferred, other): `preferred` must come before `other`.
using Preference = std::pair<Interpretation, Interpretation>;

struct Classification {
  bool is_full_meet = false;
  // One order per state when the table is maxichoice.
  std::optional<std::vector<LinearOrder>> maxichoice_orders;
  std::optional<LinearOrder> linear_order;
};

// Preferences a maxichoice order for `state` must respect, or nullopt when
// the row is not maxichoice-shaped. Rows in the first branch (the state's
// beliefs survive) must match it exactly; rows in the other branch must pick
// a single interpretation from the candidates (the complement of the input
// for contraction, the input itself for revision).
inline std::optional<std::vector<Preference>> choice_preferences(const OperatorTable& table, StateIndex state) {
  const auto& space = table.space();
  const ModelSet all = space.signature().universe();
  const ModelSet bel = space.beliefs(state);
  std::vector<Preference> prefs;
  for (ModelSet::Bits m = 0; m < table.inputs(); ++m) {
    const ModelSet input(m);
    const ModelSet result = table.result(state, input);
    ModelSet candidates;
    ModelSet choice;
    if (table.kind() == ChangeKind::contraction) {
      candidates = all - input;
      if (bel.intersects(candidates)) {
        if (result != bel) return std::nullopt;
        continue;
      }
      if (!bel.subset_of(result)) return std::nullopt;
      choice = result - bel;
    } else {
      candidates = input;
      if (bel.intersects(input)) {
        if (result != (bel & input)) return std::nullopt;
        continue;
      }
      choice = result;
    }
    if (candidates.empty()) {
      if (!choice.empty()) return std::nullopt;
      continue;
    }
    if (choice.size() != 1 || !choice.subset_of(candidates)) return std::nullopt;
    const Interpretation picked = choice.first();
    (candidates - choice).for_each([&](Interpretation w) { prefs.emplace_back(picked, w); });
  }
  return prefs;
}

// Linear extension of `prefs`, or nullopt if they are cyclic. Unconstrained
// ties go to the interpretation with the larger index.
inline std::optional<LinearOrder> order_from_preferences(std::uint32_t world_count, const std::vector<Preference>& prefs) {
  std::vector<std::vector<bool>> edge(world_count, std::vector<bool>(world_count, false));
  std::vector<std::uint32_t> indegree(world_count, 0);
  for (const auto& [a, b] : prefs) {
    if (!edge[a.index][b.index]) {
      edge[a.index][b.index] = true;
      ++indegree[b.index];
    }
  }
  std::vector<bool> placed(world_count, false);
  std::vector<Interpretation> ranking;
  for (std::uint32_t step = 0; step < world_count; ++step) {
    std::optional<std::uint32_t> pick;
    for (std::uint32_t w = world_count; w-- > 0;) {
      if (!placed[w] && indegree[w] == 0) {
        pick = w;
        break;
      }
    }
    if (!pick) return std::nullopt;
    placed[*pick] = true;
    ranking.push_back(Interpretation{*pick});
    for (std::uint32_t w = 0; w < world_count; ++w) {
      if (edge[*pick][w]) --indegree[w];
    }
  }
  return LinearOrder(std::move(ranking));
}

inline bool is_full_meet(const OperatorTable& table) {
  const auto& space = table.space();
  const ModelSet all = space.signature().universe();
  for (StateIndex s = 0; s < space.size(); ++s) {
    for (ModelSet::Bits m = 0; m < table.inputs(); ++m) {
      ModelSet expected = table.kind() == ChangeKind::contraction
                              ? cell::full_meet_contraction(space.beliefs(s), ModelSet(m), all)
                              : cell::full_meet_revision(space.beliefs(s), ModelSet(m));
      if (table.result(s, ModelSet(m)) != expected) return false;
    }
  }
  return true;
}

inline Classification classify_operator(const OperatorTable& table) {
  Classification out;
  out.is_full_meet = is_full_meet(table);
  const auto& space = table.space();
  const std::uint32_t worlds = space.signature().world_count();
  std::vector<LinearOrder> orders;
  std::vector<Preference> all_prefs;
  for (StateIndex s = 0; s < space.size(); ++s) {
    auto prefs = choice_preferences(table, s);
    if (!prefs) return out;
    auto order = order_from_preferences(worlds, *prefs);
    if (!order) return out;
    orders.push_back(std::move(*order));
    all_prefs.insert(all_prefs.end(), prefs->begin(), prefs->end());
  }
  out.maxichoice_orders = std::move(orders);
  out.linear_order = order_from_preferences(worlds, all_prefs);
  return out;
}

}  // namespace esbc
