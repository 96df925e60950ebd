#pragma once

// Faithful assignments (state -> total preorder) and their link to
// contraction operators.

#include <cstdint>
#include <optional>
#include <vector>

#include "esbc/logic.hpp"
#include "esbc/operators.hpp"
#include "esbc/space.hpp"

namespace esbc {

// Indexed by state.
using FaithfulAssignment = std::vector<TotalPreorder>;

// The state's models share rank 0; every other interpretation follows at
// ranks 1, 2, ... in the order of `order`.
inline FaithfulAssignment induce_assignment_linear(const EpistemicSpace& space, const LinearOrder& order) {
  FaithfulAssignment out;
  out.reserve(space.size());
  for (StateIndex s = 0; s < space.size(); ++s) {
    const ModelSet bel = space.beliefs(s);
    std::vector<std::uint32_t> levels(order.size(), 0);
    std::uint32_t next = bel.empty() ? 0 : 1;
    for (auto w : order.ranking()) {
      if (!bel.contains(w)) levels[w.index] = next++;
    }
    out.emplace_back(std::move(levels));
  }
  return out;
}

// Bel at rank 0, everything else tied at rank 1 (rank 0 when bel is empty).
inline FaithfulAssignment flat_over_complement(const EpistemicSpace& space) {
  FaithfulAssignment out;
  for (StateIndex s = 0; s < space.size(); ++s) {
    const ModelSet bel = space.beliefs(s);
    std::vector<std::uint32_t> levels(space.signature().world_count(), bel.empty() ? 0 : 1);
    bel.for_each([&](Interpretation w) { levels[w.index] = 0; });
    out.emplace_back(std::move(levels));
  }
  return out;
}

struct AssignmentCheck {
  bool holds = true;
  std::optional<StateIndex> state;
  std::optional<ModelSet> input;  // absent for the faithfulness condition
  ModelSet expected;
  ModelSet actual;
};

// Consistent states must have exactly their models as minimal interpretations.
inline AssignmentCheck check_faithful(const FaithfulAssignment& assign, const EpistemicSpace& space) {
  if (assign.size() != space.size()) throw FormatError("assignment must have one preorder per state");
  for (StateIndex s = 0; s < space.size(); ++s) {
    const ModelSet bel = space.beliefs(s);
    if (bel.empty()) continue;
    ModelSet minimal = min_of(space.signature().universe(), assign[s]);
    if (minimal != bel) return AssignmentCheck{false, s, std::nullopt, bel, minimal};
  }
  return {};
}

// mod(S / a) = mod(S) | min(mod(~a), <=_S) for every state and every input.
inline AssignmentCheck check_contraction_compatible(const FaithfulAssignment& assign, const OperatorTable& table) {
  if (table.kind() != ChangeKind::contraction) throw KindMismatch("contraction compatibility needs a contraction table");
  const auto& space = table.space();
  if (assign.size() != space.size()) throw FormatError("assignment must have one preorder per state");
  const ModelSet all = space.signature().universe();
  for (StateIndex s = 0; s < space.size(); ++s) {
    for (ModelSet::Bits m = 0; m < table.inputs(); ++m) {
      ModelSet expected = space.beliefs(s) | min_of(all - ModelSet(m), assign[s]);
      ModelSet actual = table.result(s, ModelSet(m));
      if (expected != actual) return AssignmentCheck{false, s, ModelSet(m), expected, actual};
    }
  }
  return {};
}

}  // namespace esbc
