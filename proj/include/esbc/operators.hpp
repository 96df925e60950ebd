#pragma once

// Extensional belief change operators and the full meet, maxichoice and
// linear constructions for contraction and revision.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "esbc/error.hpp"
#include "esbc/formula.hpp"
#include "esbc/logic.hpp"
#include "esbc/space.hpp"

namespace esbc {

enum class ChangeKind { revision, contraction };

inline std::string_view to_string(ChangeKind k) {
  return k == ChangeKind::revision ? "revision" : "contraction";
}

inline ChangeKind parse_change_kind(std::string_view s) {
  if (s == "revision") return ChangeKind::revision;
  if (s == "contraction") return ChangeKind::contraction;
  throw FormatError("unknown operator kind '" + std::string(s) + "'");
}

// A belief change operator as a total table over (state, input model set).
// Keying by the input's models makes every table syntax-independent.
class OperatorTable {
 public:
  OperatorTable(std::shared_ptr<const EpistemicSpace> space, ChangeKind kind, std::vector<StateIndex> entries)
      : space_(std::move(space)), kind_(kind), entries_(std::move(entries)) {
    if (!space_) throw FormatError("operator table without a space");
    if (entries_.size() != space_->size() * inputs()) {
      throw FormatError("operator table must have " + std::to_string(space_->size() * inputs()) + " entries, got " +
                        std::to_string(entries_.size()));
    }
    for (auto t : entries_) {
      if (t >= space_->size()) throw FormatError("operator table targets a state outside the space");
    }
  }

  ChangeKind kind() const { return kind_; }
  const EpistemicSpace& space() const { return *space_; }
  const std::shared_ptr<const EpistemicSpace>& shared_space() const { return space_; }
  std::size_t inputs() const { return space_->signature().model_set_count(); }
  std::span<const StateIndex> entries() const { return entries_; }

  StateIndex at(StateIndex state, ModelSet input) const { return entries_.at(state * inputs() + input.bits()); }
  ModelSet result(StateIndex state, ModelSet input) const { return space_->beliefs(at(state, input)); }

  OperatorTable with_entry(StateIndex state, ModelSet input, StateIndex target) const {
    auto entries = entries_;
    entries.at(state * inputs() + input.bits()) = target;
    return OperatorTable(space_, kind_, std::move(entries));
  }

  friend bool operator==(const OperatorTable& a, const OperatorTable& b) {
    return a.kind_ == b.kind_ && *a.space_ == *b.space_ && a.entries_ == b.entries_;
  }

 private:
  std::shared_ptr<const EpistemicSpace> space_;
  ChangeKind kind_;
  std::vector<StateIndex> entries_;
};

inline StateIndex apply(const OperatorTable& table, StateIndex state, const Formula& f) {
  if (state >= table.space().size()) throw UnknownState("#" + std::to_string(state));
  return table.at(state, models_of(f, table.space().signature()));
}

inline StateIndex apply(const OperatorTable& table, std::string_view state, const Formula& f) {
  return apply(table, table.space().index_of(state), f);
}

// Required belief model sets of single cells. `input` is the model set of the
// formula being revised by or contracted.
namespace cell {

inline ModelSet full_meet_contraction(ModelSet bel, ModelSet input, ModelSet universe) {
  ModelSet negated = universe - input;
  if (bel.intersects(negated)) return bel;
  return bel | negated;
}

inline ModelSet maxichoice_contraction(ModelSet bel, ModelSet input, ModelSet universe, const LinearOrder& order) {
  ModelSet negated = universe - input;
  if (bel.intersects(negated)) return bel;
  return bel | min_of(negated, order);
}

inline ModelSet full_meet_revision(ModelSet bel, ModelSet input) {
  if (bel.intersects(input)) return bel & input;
  return input;
}

inline ModelSet maxichoice_revision(ModelSet bel, ModelSet input, const LinearOrder& order) {
  if (bel.intersects(input)) return bel & input;
  return min_of(input, order);
}

}  // namespace cell

namespace detail {

// Fill every cell from `required(state, input)`. The current state is kept
// when it already has the required beliefs; otherwise the representative of
// the required model set is used. If some required set is unrealized, the
// reported one is the closest witness (fewest interpretations, then largest
// bitmask), at the first cell in row-major order that needs it.
template <class Rule>
OperatorTable build_table(std::shared_ptr<const EpistemicSpace> space, ChangeKind kind, Rule&& required) {
  const auto& family = space->family();
  const std::size_t inputs = space->signature().model_set_count();
  std::vector<StateIndex> entries(space->size() * inputs);
  struct Miss {
    StateIndex state;
    ModelSet input;
    ModelSet models;
  };
  std::optional<Miss> miss;
  for (StateIndex s = 0; s < space->size(); ++s) {
    for (ModelSet::Bits m = 0; m < inputs; ++m) {
      ModelSet target = required(s, ModelSet(m));
      if (target == space->beliefs(s)) {
        entries[s * inputs + m] = s;
      } else if (auto rep = family.representative(target)) {
        entries[s * inputs + m] = *rep;
      } else if (!miss || closer_witness(target, miss->models)) {
        miss = Miss{s, ModelSet(m), target};
      }
    }
  }
  if (miss) {
    const auto& sig = space->signature();
    throw MissingState(miss->state, miss->input.bits(), miss->models.bits(),
                       "no state has models " + sig.format(miss->models) + " (needed by " + space->id(miss->state) +
                           " with input " + sig.format(miss->input) + ")");
  }
  return OperatorTable(std::move(space), kind, std::move(entries));
}

inline void require_orders(const EpistemicSpace& space, std::span<const LinearOrder> orders) {
  if (orders.size() != space.size()) throw FormatError("need one linear order per state");
  for (const auto& o : orders) {
    if (o.size() != space.signature().world_count()) throw FormatError("linear order has the wrong size");
  }
}

}  // namespace detail

inline OperatorTable build_full_meet_contraction(std::shared_ptr<const EpistemicSpace> space) {
  const ModelSet all = space->signature().universe();
  auto* sp = space.get();
  return detail::build_table(std::move(space), ChangeKind::contraction, [&](StateIndex s, ModelSet m) {
    return cell::full_meet_contraction(sp->beliefs(s), m, all);
  });
}

// `orders[s]` is the linear order used by state s.
inline OperatorTable build_maxichoice_contraction(std::shared_ptr<const EpistemicSpace> space,
                                                  std::span<const LinearOrder> orders) {
  detail::require_orders(*space, orders);
  const ModelSet all = space->signature().universe();
  auto* sp = space.get();
  return detail::build_table(std::move(space), ChangeKind::contraction, [&](StateIndex s, ModelSet m) {
    return cell::maxichoice_contraction(sp->beliefs(s), m, all, orders[s]);
  });
}

inline OperatorTable build_linear_contraction(std::shared_ptr<const EpistemicSpace> space, const LinearOrder& order) {
  std::vector<LinearOrder> orders(space->size(), order);
  return build_maxichoice_contraction(std::move(space), orders);
}

inline OperatorTable build_full_meet_revision(std::shared_ptr<const EpistemicSpace> space) {
  auto* sp = space.get();
  return detail::build_table(std::move(space), ChangeKind::revision, [&](StateIndex s, ModelSet m) {
    return cell::full_meet_revision(sp->beliefs(s), m);
  });
}

inline OperatorTable build_maxichoice_revision(std::shared_ptr<const EpistemicSpace> space,
                                               std::span<const LinearOrder> orders) {
  detail::require_orders(*space, orders);
  auto* sp = space.get();
  return detail::build_table(std::move(space), ChangeKind::revision, [&](StateIndex s, ModelSet m) {
    return cell::maxichoice_revision(sp->beliefs(s), m, orders[s]);
  });
}

inline OperatorTable build_linear_revision(std::shared_ptr<const EpistemicSpace> space, const LinearOrder& order) {
  std::vector<LinearOrder> orders(space->size(), order);
  return build_maxichoice_revision(std::move(space), orders);
}

}  // namespace esbc
