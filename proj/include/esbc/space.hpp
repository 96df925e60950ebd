#pragma once

// Epistemic spaces and the closure conditions that decide whether AGM
// contraction, AGM revision and full meet revision exist on them.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "esbc/error.hpp"
#include "esbc/logic.hpp"

namespace esbc {

using StateIndex = std::size_t;

struct EpistemicState {
  std::string id;
  ModelSet beliefs;

  friend bool operator==(const EpistemicState&, const EpistemicState&) = default;
};

// The model sets realized by some state, with one representative state per
// realized set: the one with the lexicographically smallest id.
class RealizedFamily {
 public:
  RealizedFamily() = default;

  RealizedFamily(const Signature& sig, std::span<const EpistemicState> states)
      : rep_(sig.model_set_count()), multiplicity_(sig.model_set_count(), 0) {
    for (StateIndex s = 0; s < states.size(); ++s) {
      auto bits = states[s].beliefs.bits();
      auto& rep = rep_[bits];
      if (!rep || states[s].id < states[*rep].id) rep = s;
      ++multiplicity_[bits];
    }
    for (ModelSet::Bits m = 0; m < rep_.size(); ++m) {
      if (rep_[m]) members_.push_back(ModelSet(m));
    }
  }

  bool realized(ModelSet m) const { return m.bits() < rep_.size() && rep_[m.bits()].has_value(); }
  std::optional<StateIndex> representative(ModelSet m) const {
    return m.bits() < rep_.size() ? rep_[m.bits()] : std::nullopt;
  }
  // How many states carry exactly these beliefs.
  std::size_t multiplicity(ModelSet m) const { return m.bits() < multiplicity_.size() ? multiplicity_[m.bits()] : 0; }
  // Realized sets by ascending bitmask.
  const std::vector<ModelSet>& members() const { return members_; }

 private:
  std::vector<std::optional<StateIndex>> rep_;
  std::vector<std::size_t> multiplicity_;
  std::vector<ModelSet> members_;
};

class EpistemicSpace {
 public:
  EpistemicSpace(Signature sig, std::vector<EpistemicState> states)
      : sig_(std::move(sig)), states_(std::move(states)) {
    if (states_.empty()) throw EmptySpace();
    std::unordered_set<std::string> seen;
    for (const auto& s : states_) {
      if (s.id.empty()) throw FormatError("state ids must be non-empty");
      if (!seen.insert(s.id).second) throw DuplicateStateId(s.id);
      if (!s.beliefs.subset_of(sig_.universe())) {
        throw FormatError("beliefs of state '" + s.id + "' mention interpretations outside the signature");
      }
    }
    family_ = RealizedFamily(sig_, states_);
  }

  const Signature& signature() const { return sig_; }
  std::span<const EpistemicState> states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  const EpistemicState& state(StateIndex s) const { return states_.at(s); }
  ModelSet beliefs(StateIndex s) const { return states_.at(s).beliefs; }
  const std::string& id(StateIndex s) const { return states_.at(s).id; }
  const RealizedFamily& family() const { return family_; }

  std::optional<StateIndex> find(std::string_view id) const {
    for (StateIndex s = 0; s < states_.size(); ++s) {
      if (states_[s].id == id) return s;
    }
    return std::nullopt;
  }

  StateIndex index_of(std::string_view id) const {
    if (auto s = find(id)) return *s;
    throw UnknownState(std::string(id));
  }

  friend bool operator==(const EpistemicSpace& a, const EpistemicSpace& b) {
    return a.sig_ == b.sig_ && a.states_ == b.states_;
  }

 private:
  Signature sig_;
  std::vector<EpistemicState> states_;
  RealizedFamily family_;
};

// Outcome of a closure condition. On failure `missing` is an unrealized model
// set the condition demands, and `state` the state that demands it (absent
// for conditions that quantify over model sets only).
struct ClosureCheck {
  bool holds = true;
  std::optional<StateIndex> state;
  std::optional<ModelSet> missing;
};

struct SingletonCheck {
  bool holds = true;
  std::optional<Interpretation> world;
};

// Witness preference: fewest interpretations first, then the larger bitmask.
inline bool closer_witness(ModelSet a, ModelSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.bits() > b.bits();
}

// Every superset of a realized model set is realized.
inline ClosureCheck check_zc(const EpistemicSpace& space) {
  const auto& family = space.family();
  const ModelSet all = space.signature().universe();
  for (StateIndex s = 0; s < space.size(); ++s) {
    const ModelSet bel = space.beliefs(s);
    std::optional<ModelSet> best;
    for_each_subset(all - bel, [&](ModelSet extra) {
      ModelSet m = bel | extra;
      if (!family.realized(m) && (!best || closer_witness(m, *best))) best = m;
    });
    if (best) return ClosureCheck{false, s, best};
  }
  return {};
}

// Every singleton model set is realized.
inline SingletonCheck check_zr1(const EpistemicSpace& space) {
  for (std::uint32_t w = 0; w < space.signature().world_count(); ++w) {
    if (!space.family().realized(ModelSet::singleton(Interpretation{w}))) {
      return SingletonCheck{false, Interpretation{w}};
    }
  }
  return {};
}

// Every subset of a realized model set is realized. The witness is the
// smallest missing subset by bitmask, so an unrealized empty set shows first.
inline ClosureCheck check_zr2(const EpistemicSpace& space) {
  const auto& family = space.family();
  for (StateIndex s = 0; s < space.size(); ++s) {
    std::optional<ModelSet> best;
    for_each_subset(space.beliefs(s), [&](ModelSet m) {
      if (!family.realized(m) && (!best || m < *best)) best = m;
    });
    if (best) return ClosureCheck{false, s, best};
  }
  return {};
}

// Every model set is realized. The witness is the largest missing bitmask.
inline ClosureCheck check_unbiased(const EpistemicSpace& space) {
  const auto& sig = space.signature();
  for (std::uint32_t m = sig.model_set_count(); m-- > 0;) {
    if (!space.family().realized(ModelSet(m))) return ClosureCheck{false, std::nullopt, ModelSet(m)};
  }
  return {};
}

struct RealizabilityReport {
  ClosureCheck zc;
  SingletonCheck zr1;
  ClosureCheck zr2;
  ClosureCheck unbiased;
  bool contraction_realizable = false;
  bool revision_realizable = false;
  bool full_meet_revision_exists = false;
};

inline RealizabilityReport realizability_report(const EpistemicSpace& space) {
  RealizabilityReport r;
  r.zc = check_zc(space);
  r.zr1 = check_zr1(space);
  r.zr2 = check_zr2(space);
  r.unbiased = check_unbiased(space);
  r.contraction_realizable = r.zc.holds;
  r.revision_realizable = r.zr1.holds && r.zr2.holds;
  r.full_meet_revision_exists = r.unbiased.holds;
  return r;
}

// Name used for the state carrying `m` in generated spaces: "psi_bot" for the
// empty set, otherwise "psi_" followed by the member bitstrings.
inline std::string family_state_id(ModelSet m, const Signature& sig) {
  if (m.empty()) return "psi_bot";
  std::string id = "psi";
  for (const auto& b : sig.bitstrings(m)) id += "_" + b;
  return id;
}

// One state per member of `family`, in the given order.
inline EpistemicSpace space_from_family(const Signature& sig, std::span<const ModelSet> family) {
  std::vector<EpistemicState> states;
  for (auto m : family) states.push_back(EpistemicState{family_state_id(m, sig), m});
  return EpistemicSpace(sig, std::move(states));
}

}  // namespace esbc
