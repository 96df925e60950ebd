#pragma once

// Exhaustive checking of the AGM revision postulates R1-R6 and contraction
// postulates C1-C7 on operator tables, in their model-set form.

#include <algorithm>
#include <array>
#include <cstdint>
#include <future>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "esbc/error.hpp"
#include "esbc/logic.hpp"
#include "esbc/operators.hpp"
#include "esbc/space.hpp"

namespace esbc {

enum class Postulate : std::uint8_t { R1, R2, R3, R4, R5, R6, C1, C2, C3, C4, C5, C6, C7 };

inline constexpr std::array<Postulate, 6> kRevisionPostulates{Postulate::R1, Postulate::R2, Postulate::R3,
                                                              Postulate::R4, Postulate::R5, Postulate::R6};
inline constexpr std::array<Postulate, 7> kContractionPostulates{Postulate::C1, Postulate::C2, Postulate::C3,
                                                                 Postulate::C4, Postulate::C5, Postulate::C6,
                                                                 Postulate::C7};

inline std::string_view name(Postulate p) {
  static constexpr std::array<std::string_view, 13> names{"R1", "R2", "R3", "R4", "R5", "R6", "C1",
                                                          "C2", "C3", "C4", "C5", "C6", "C7"};
  return names[static_cast<std::size_t>(p)];
}

inline std::optional<Postulate> parse_postulate(std::string_view s) {
  for (std::size_t i = 0; i < 13; ++i) {
    if (name(static_cast<Postulate>(i)) == s) return static_cast<Postulate>(i);
  }
  return std::nullopt;
}

inline bool is_pairwise(Postulate p) {
  return p == Postulate::R5 || p == Postulate::R6 || p == Postulate::C6 || p == Postulate::C7;
}

// Postulates that hold by construction of OperatorTable (inputs are keyed
// by their models, so equivalent formulas cannot be told apart).
inline bool holds_by_representation(Postulate p) { return p == Postulate::R4 || p == Postulate::C5; }

// How `actual` must relate to `expected` for the postulate to hold.
inline std::string_view relation(Postulate p) {
  switch (p) {
    case Postulate::R1: return "actual subset of expected";
    case Postulate::R2: return "actual equals expected";
    case Postulate::R3: return "actual non-empty";
    case Postulate::R5: return "actual subset of expected";
    case Postulate::R6: return "actual subset of expected";
    case Postulate::C1: return "expected subset of actual";
    case Postulate::C2: return "actual subset of expected";
    case Postulate::C3: return "actual not a subset of expected";
    case Postulate::C4: return "actual subset of expected";
    case Postulate::C6: return "actual subset of expected";
    case Postulate::C7: return "actual subset of expected";
    default: return "holds by representation";
  }
}

struct Outcome {
  bool ok = true;
  ModelSet expected;
  ModelSet actual;
};

// One postulate instance. `result(x)` gives the models of the changed state
// for input models x; `m` is the input and `n` the second input of the
// pairwise postulates (ignored otherwise).
template <class Lookup>
Outcome evaluate(Postulate p, ModelSet bel, ModelSet all, const Lookup& result, ModelSet m, ModelSet n = {}) {
  switch (p) {
    case Postulate::R1: {
      ModelSet x = result(m);
      return {x.subset_of(m), m, x};
    }
    case Postulate::R2: {
      ModelSet x = result(m);
      return {!bel.intersects(m) || x == (bel & m), bel & m, x};
    }
    case Postulate::R3: {
      ModelSet x = result(m);
      return {m.empty() || !x.empty(), m, x};
    }
    case Postulate::R5: {
      ModelSet lhs = result(m) & n;
      ModelSet rhs = result(m & n);
      return {lhs.subset_of(rhs), rhs, lhs};
    }
    case Postulate::R6: {
      ModelSet bound = result(m) & n;
      ModelSet x = result(m & n);
      return {bound.empty() || x.subset_of(bound), bound, x};
    }
    case Postulate::C1: {
      ModelSet x = result(m);
      return {bel.subset_of(x), bel, x};
    }
    case Postulate::C2: {
      ModelSet x = result(m);
      return {bel.subset_of(m) || x.subset_of(bel), bel, x};
    }
    case Postulate::C3: {
      ModelSet x = result(m);
      return {m == all || !x.subset_of(m), m, x};
    }
    case Postulate::C4: {
      ModelSet x = result(m) & m;
      return {x.subset_of(bel), bel, x};
    }
    case Postulate::C6: {
      ModelSet x = result(m & n);
      ModelSet bound = result(m) | result(n);
      return {x.subset_of(bound), bound, x};
    }
    case Postulate::C7: {
      ModelSet both = result(m & n);
      ModelSet x = result(n);
      return {both.subset_of(n) || x.subset_of(both), both, x};
    }
    case Postulate::R4:
    case Postulate::C5: return {};
  }
  return {};
}

inline constexpr std::uint64_t kPairSampleSeed = 0x5eed'a6e0'2024'0001ULL;
inline constexpr std::uint64_t kSampledPairsPerState = std::uint64_t{1} << 20;

// Up to three atoms every input and every pair of inputs is checked. With
// four atoms inputs stay exhaustive and 2^20 pairs per state are drawn from
// a generator seeded with `seed + state`.
struct QuantificationPlan {
  std::size_t atoms = 0;
  std::uint64_t inputs_per_state = 0;
  std::uint64_t pairs_per_state = 0;
  bool exhaustive = true;
  std::uint64_t seed = kPairSampleSeed;

  std::string describe() const {
    std::string out = std::to_string(inputs_per_state) + " inputs and " + std::to_string(pairs_per_state) +
                      " pairs per state (" + (exhaustive ? "exhaustive" : "non-exhaustive, sampled pairs") + ")";
    if (!exhaustive) out += ", seed " + std::to_string(seed);
    return out;
  }
};

inline QuantificationPlan quantification_plan(const Signature& sig) {
  QuantificationPlan plan;
  plan.atoms = sig.atom_count();
  plan.inputs_per_state = sig.model_set_count();
  if (sig.atom_count() <= 3) {
    plan.pairs_per_state = plan.inputs_per_state * plan.inputs_per_state;
  } else {
    plan.pairs_per_state = kSampledPairsPerState;
    plan.exhaustive = false;
  }
  return plan;
}

struct Violation {
  Postulate postulate;
  StateIndex state;
  ModelSet input;
  std::optional<ModelSet> pair;
  ModelSet expected;
  ModelSet actual;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct VerifyOptions {
  // Report every violated instance instead of the first per postulate.
  bool collect_all = false;
  // Stop at the first violation found.
  bool stop_at_first = false;
  bool parallel = false;
};

struct VerifyReport {
  ChangeKind kind;
  QuantificationPlan plan;
  std::vector<Violation> violations;

  bool clean() const { return violations.empty(); }
};

// Walk one row in row-major order: for each input the unary postulates, then
// the pairwise ones for every second input. `sink` returns false to stop.
template <class Lookup, class Sink>
bool check_row(ChangeKind kind, StateIndex state, ModelSet bel, ModelSet all, const QuantificationPlan& plan,
               const Lookup& result, Sink&& sink) {
  const bool revision = kind == ChangeKind::revision;
  constexpr std::array<Postulate, 3> rev_unary{Postulate::R1, Postulate::R2, Postulate::R3};
  constexpr std::array<Postulate, 4> con_unary{Postulate::C1, Postulate::C2, Postulate::C3, Postulate::C4};
  constexpr std::array<Postulate, 2> rev_pair{Postulate::R5, Postulate::R6};
  constexpr std::array<Postulate, 2> con_pair{Postulate::C6, Postulate::C7};
  auto run = [&](Postulate p, ModelSet m, std::optional<ModelSet> n) {
    Outcome o = evaluate(p, bel, all, result, m, n.value_or(ModelSet{}));
    if (o.ok) return true;
    return sink(Violation{p, state, m, n, o.expected, o.actual});
  };
  const std::span<const Postulate> unary = revision ? std::span<const Postulate>(rev_unary)
                                                    : std::span<const Postulate>(con_unary);
  const std::span<const Postulate> pairwise = revision ? std::span<const Postulate>(rev_pair)
                                                       : std::span<const Postulate>(con_pair);
  const auto inputs = static_cast<ModelSet::Bits>(plan.inputs_per_state);
  for (ModelSet::Bits m = 0; m < inputs; ++m) {
    for (auto p : unary)
      if (!run(p, ModelSet(m), std::nullopt)) return false;
    if (!plan.exhaustive) continue;
    for (ModelSet::Bits n = 0; n < inputs; ++n) {
      for (auto p : pairwise)
        if (!run(p, ModelSet(m), ModelSet(n))) return false;
    }
  }
  if (!plan.exhaustive) {
    std::mt19937_64 rng(plan.seed + state);
    std::uniform_int_distribution<ModelSet::Bits> pick(0, inputs - 1);
    for (std::uint64_t i = 0; i < plan.pairs_per_state; ++i) {
      ModelSet m(pick(rng));
      ModelSet n(pick(rng));
      for (auto p : pairwise)
        if (!run(p, m, n)) return false;
    }
  }
  return true;
}

namespace detail {

inline std::vector<Violation> verify_state(const OperatorTable& table, StateIndex s, const QuantificationPlan& plan,
                                           const VerifyOptions& options) {
  const auto& space = table.space();
  std::vector<Violation> found;
  std::array<bool, 13> seen{};
  auto lookup = [&](ModelSet x) { return table.result(s, x); };
  check_row(table.kind(), s, space.beliefs(s), space.signature().universe(), plan, lookup, [&](const Violation& v) {
    auto slot = static_cast<std::size_t>(v.postulate);
    if (options.collect_all || !seen[slot]) found.push_back(v);
    seen[slot] = true;
    return !options.stop_at_first;
  });
  return found;
}

}  // namespace detail

inline VerifyReport verify(const OperatorTable& table, const VerifyOptions& options = {}) {
  VerifyReport report{table.kind(), quantification_plan(table.space().signature()), {}};
  const std::size_t states = table.space().size();
  std::vector<std::vector<Violation>> rows(states);
  if (options.parallel && !options.stop_at_first) {
    std::vector<std::future<std::vector<Violation>>> jobs;
    for (StateIndex s = 0; s < states; ++s) {
      jobs.push_back(std::async(std::launch::async, [&, s] { return detail::verify_state(table, s, report.plan, options); }));
    }
    for (StateIndex s = 0; s < states; ++s) rows[s] = jobs[s].get();
  } else {
    for (StateIndex s = 0; s < states; ++s) {
      rows[s] = detail::verify_state(table, s, report.plan, options);
      if (options.stop_at_first && !rows[s].empty()) break;
    }
  }
  std::array<bool, 13> seen{};
  for (auto& row : rows) {
    for (auto& v : row) {
      auto slot = static_cast<std::size_t>(v.postulate);
      if (options.collect_all || !seen[slot]) report.violations.push_back(v);
      seen[slot] = true;
      if (options.stop_at_first) return report;
    }
  }
  if (!options.collect_all) {
    std::stable_sort(report.violations.begin(), report.violations.end(),
                     [](const Violation& a, const Violation& b) { return a.postulate < b.postulate; });
  }
  return report;
}

inline VerifyReport verify_revision(const OperatorTable& table, const VerifyOptions& options = {}) {
  if (table.kind() != ChangeKind::revision) throw KindMismatch("expected a revision table, got a contraction table");
  return verify(table, options);
}

inline VerifyReport verify_contraction(const OperatorTable& table, const VerifyOptions& options = {}) {
  if (table.kind() != ChangeKind::contraction) {
    throw KindMismatch("expected a contraction table, got a revision table");
  }
  return verify(table, options);
}

}  // namespace esbc
