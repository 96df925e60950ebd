#pragma once

// Executable audits over small generated spaces: realizability predictions
// against search, the standard constructions against the closure conditions,
// and exact operator counts per family.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "esbc/assignment.hpp"
#include "esbc/error.hpp"
#include "esbc/logic.hpp"
#include "esbc/operators.hpp"
#include "esbc/search.hpp"
#include "esbc/space.hpp"
#include "esbc/verify.hpp"

namespace esbc {

// A family of model sets, one generated state per member (ascending bitmask).
struct Family {
  std::vector<ModelSet> members;

  std::shared_ptr<const EpistemicSpace> space(const Signature& sig) const {
    return std::make_shared<const EpistemicSpace>(space_from_family(sig, members));
  }
};

namespace detail {

inline Family family_from_flags(const std::vector<bool>& flags) {
  Family f;
  for (ModelSet::Bits m = 0; m < flags.size(); ++m) {
    if (flags[m]) f.members.push_back(ModelSet(m));
  }
  return f;
}

inline void require_atoms(const Signature& sig, std::size_t lo, std::size_t hi) {
  if (sig.atom_count() < lo || sig.atom_count() > hi) {
    throw FormatError("audits support " + std::to_string(lo) + " to " + std::to_string(hi) + " atoms, got " +
                      std::to_string(sig.atom_count()));
  }
}

}  // namespace detail

// Every non-empty family over a one-atom signature (15 of them), by
// ascending family bitmask.
inline std::vector<Family> all_families(const Signature& sig) {
  detail::require_atoms(sig, 1, 1);
  const std::uint32_t sets = sig.model_set_count();
  std::vector<Family> out;
  for (std::uint32_t mask = 1; mask < (1u << sets); ++mask) {
    Family f;
    for (ModelSet::Bits m = 0; m < sets; ++m) {
      if (mask >> m & 1u) f.members.push_back(ModelSet(m));
    }
    out.push_back(std::move(f));
  }
  return out;
}

// Seeded families cycling through five shapes so that every closure
// condition is hit from both sides: uniform subsets, upward closures,
// downward closures plus all singletons, all sets minus a few, and closures
// with one member knocked out.
inline std::vector<Family> sample_families(const Signature& sig, std::size_t count, std::uint64_t seed) {
  detail::require_atoms(sig, 1, 2);
  std::mt19937_64 rng(seed);
  const std::uint32_t sets = sig.model_set_count();
  const ModelSet all = sig.universe();
  std::uniform_int_distribution<ModelSet::Bits> any_set(0, sets - 1);
  std::bernoulli_distribution coin(0.5);

  auto upward = [&](std::vector<bool>& flags, ModelSet seed_set) {
    for_each_subset(all - seed_set, [&](ModelSet extra) { flags[(seed_set | extra).bits()] = true; });
  };
  auto downward = [&](std::vector<bool>& flags, ModelSet seed_set) {
    for_each_subset(seed_set, [&](ModelSet sub) { flags[sub.bits()] = true; });
  };
  auto knock_out = [&](std::vector<bool>& flags) {
    std::vector<ModelSet::Bits> present;
    for (ModelSet::Bits m = 0; m < sets; ++m) {
      if (flags[m]) present.push_back(m);
    }
    if (present.size() > 1) {
      std::uniform_int_distribution<std::size_t> pick(0, present.size() - 1);
      flags[present[pick(rng)]] = false;
    }
  };

  std::vector<Family> out;
  while (out.size() < count) {
    std::vector<bool> flags(sets, false);
    switch (out.size() % 5) {
      case 0:
        for (ModelSet::Bits m = 0; m < sets; ++m) flags[m] = coin(rng);
        break;
      case 1: {
        std::uniform_int_distribution<int> seeds(1, 3);
        for (int i = seeds(rng); i > 0; --i) upward(flags, ModelSet(any_set(rng)));
        break;
      }
      case 2: {
        std::uniform_int_distribution<int> seeds(1, 3);
        for (int i = seeds(rng); i > 0; --i) downward(flags, ModelSet(any_set(rng)));
        all.for_each([&](Interpretation w) { flags[ModelSet::singleton(w).bits()] = true; });
        break;
      }
      case 3: {
        flags.assign(sets, true);
        std::uniform_int_distribution<int> drops(0, 2);
        for (int i = drops(rng); i > 0; --i) flags[any_set(rng)] = false;
        break;
      }
      default:
        if (coin(rng)) {
          upward(flags, ModelSet(any_set(rng)));
        } else {
          downward(flags, ModelSet(any_set(rng)));
          all.for_each([&](Interpretation w) { flags[ModelSet::singleton(w).bits()] = true; });
        }
        knock_out(flags);
        break;
    }
    Family f = detail::family_from_flags(flags);
    if (!f.members.empty()) out.push_back(std::move(f));
  }
  return out;
}

// Seeded permutation of the interpretations.
inline LinearOrder random_order(std::uint32_t world_count, std::mt19937_64& rng) {
  std::vector<Interpretation> ranking;
  for (std::uint32_t w = 0; w < world_count; ++w) ranking.push_back(Interpretation{w});
  std::shuffle(ranking.begin(), ranking.end(), rng);
  return LinearOrder(std::move(ranking));
}

struct SearchVerdict {
  bool exists = false;
  bool exhausted = false;
  std::uint64_t nodes = 0;
  // Brute-force answer, only for spaces small enough to enumerate.
  std::optional<bool> naive_exists;
};

struct TheoremRecord {
  Family family;
  RealizabilityReport predicted;
  SearchVerdict contraction;
  SearchVerdict revision;
  bool full_meet_revision_builds = false;
  std::vector<std::string> falsifications;
};

struct TheoremAudit {
  std::size_t atoms = 0;
  std::uint64_t seed = 0;
  std::vector<TheoremRecord> records;
  // Search verdicts matching the closure conditions, out of 2 per space.
  std::size_t agreements = 0;
  std::size_t comparisons = 0;
  std::size_t falsifications() const {
    std::size_t n = 0;
    for (const auto& r : records) n += r.falsifications.size();
    return n;
  }
};

inline constexpr std::size_t kNaiveStateLimit = 3;

namespace detail {

inline std::vector<Family> audit_families(const Signature& sig, std::size_t samples, std::uint64_t seed) {
  return sig.atom_count() == 1 ? all_families(sig) : sample_families(sig, samples, seed);
}

inline bool naive_feasible(const EpistemicSpace& space) {
  return space.signature().atom_count() == 1 && space.size() <= kNaiveStateLimit;
}

inline SearchVerdict search_verdict(const std::shared_ptr<const EpistemicSpace>& space, ChangeKind kind,
                                    std::uint64_t budget, std::vector<std::string>& falsifications) {
  SearchConfig config;
  config.kind = kind;
  config.node_budget = budget;
  ExistenceResult r = exists_operator(space, config);
  SearchVerdict v{r.exists, r.exhausted, r.nodes_visited, std::nullopt};
  const std::string label(to_string(kind));
  if (r.exists && !verify(*r.witness).clean()) falsifications.push_back(label + " witness fails verification");
  if (!r.exists && !r.exhausted) falsifications.push_back(label + " search ended without a certificate");
  if (naive_feasible(*space)) {
    v.naive_exists = count_operators_naive(space, kind).count > 0;
    if (*v.naive_exists != v.exists) falsifications.push_back(label + " search disagrees with brute force");
  }
  return v;
}

}  // namespace detail

// Search decides existence of each operator kind and the answer is compared
// with ZC (contraction), ZR1 and ZR2 (revision) and Unbiased (full meet
// revision). With one atom all 15 families are audited; with two atoms
// `samples` seeded families.
inline TheoremAudit audit_theorems(std::size_t atoms, std::size_t samples, std::uint64_t seed,
                                   std::uint64_t budget = SearchConfig{}.node_budget) {
  if (atoms < 1 || atoms > 2) throw FormatError("audits support 1 or 2 atoms");
  Signature sig = atoms == 1 ? Signature({"a"}) : Signature({"a", "b"});
  TheoremAudit audit{atoms, seed, {}, 0, 0};
  for (auto& family : detail::audit_families(sig, samples, seed)) {
    auto space = family.space(sig);
    TheoremRecord rec;
    rec.family = std::move(family);
    rec.predicted = realizability_report(*space);
    rec.contraction = detail::search_verdict(space, ChangeKind::contraction, budget, rec.falsifications);
    rec.revision = detail::search_verdict(space, ChangeKind::revision, budget, rec.falsifications);
    try {
      rec.full_meet_revision_builds = verify(build_full_meet_revision(space)).clean();
    } catch (const MissingState&) {
      rec.full_meet_revision_builds = false;
    }
    audit.comparisons += 2;
    if (rec.contraction.exists == rec.predicted.contraction_realizable) {
      ++audit.agreements;
    } else {
      rec.falsifications.push_back("contraction existence differs from ZC");
    }
    if (rec.revision.exists == rec.predicted.revision_realizable) {
      ++audit.agreements;
    } else {
      rec.falsifications.push_back("revision existence differs from ZR1 and ZR2");
    }
    if (rec.full_meet_revision_builds != rec.predicted.full_meet_revision_exists) {
      rec.falsifications.push_back("full meet revision construction differs from Unbiased");
    }
    audit.records.push_back(std::move(rec));
  }
  return audit;
}

struct BuildOutcome {
  std::string construction;
  bool built = false;
  bool clean = false;
  // Required model set reported by MissingState.
  std::optional<ModelSet> missing;
  // Linear contractions only: the induced assignment is faithful and
  // reproduces the table.
  std::optional<bool> assignment_ok;
  // What the closure conditions predict for built && clean.
  bool expected = false;

  bool agrees() const { return (built && clean) == expected && assignment_ok.value_or(true); }
};

struct EquivalenceRecord {
  Family family;
  RealizabilityReport predicted;
  std::vector<BuildOutcome> builds;
};

struct EquivalenceAudit {
  std::size_t atoms = 0;
  std::uint64_t seed = 0;
  std::vector<EquivalenceRecord> records;
  std::size_t falsifications() const {
    std::size_t n = 0;
    for (const auto& r : records) {
      for (const auto& b : r.builds) n += b.agrees() ? 0 : 1;
    }
    return n;
  }
};

namespace detail {

template <class Build>
BuildOutcome run_build(std::string construction, bool expected, Build&& build) {
  BuildOutcome out;
  out.construction = std::move(construction);
  out.expected = expected;
  try {
    OperatorTable table = build();
    out.built = true;
    out.clean = verify(table).clean();
  } catch (const MissingState& e) {
    out.missing = ModelSet(e.required_bits());
  }
  return out;
}

}  // namespace detail

// On every generated space the six constructions (full meet, maxichoice with
// seeded per-state orders, linear with a seeded order; for both kinds) are
// built and verified. They must succeed and verify clean exactly when the
// matching closure condition holds. Linear contractions additionally have
// their induced assignment checked.
inline EquivalenceAudit audit_equivalences(std::size_t atoms, std::size_t samples, std::uint64_t seed) {
  if (atoms < 1 || atoms > 2) throw FormatError("audits support 1 or 2 atoms");
  Signature sig = atoms == 1 ? Signature({"a"}) : Signature({"a", "b"});
  std::mt19937_64 rng(seed ^ 0x9e37'79b9'7f4a'7c15ULL);
  EquivalenceAudit audit{atoms, seed, {}};
  for (auto& family : detail::audit_families(sig, samples, seed)) {
    auto space = family.space(sig);
    EquivalenceRecord rec;
    rec.family = std::move(family);
    rec.predicted = realizability_report(*space);
    const bool zc = rec.predicted.contraction_realizable;
    const bool zr = rec.predicted.revision_realizable;
    const bool unbiased = rec.predicted.full_meet_revision_exists;
    std::vector<LinearOrder> per_state;
    for (StateIndex s = 0; s < space->size(); ++s) per_state.push_back(random_order(sig.world_count(), rng));
    const LinearOrder shared = random_order(sig.world_count(), rng);

    rec.builds.push_back(detail::run_build("fm-contraction", zc, [&] { return build_full_meet_contraction(space); }));
    rec.builds.push_back(
        detail::run_build("mc-contraction", zc, [&] { return build_maxichoice_contraction(space, per_state); }));
    std::optional<OperatorTable> linear;
    rec.builds.push_back(detail::run_build("lin-contraction", zc, [&] {
      linear = build_linear_contraction(space, shared);
      return *linear;
    }));
    if (linear) {
      auto assign = induce_assignment_linear(*space, shared);
      rec.builds.back().assignment_ok =
          check_faithful(assign, *space).holds && check_contraction_compatible(assign, *linear).holds;
    }
    rec.builds.push_back(detail::run_build("fm-revision", unbiased, [&] { return build_full_meet_revision(space); }));
    rec.builds.push_back(
        detail::run_build("mc-revision", zr, [&] { return build_maxichoice_revision(space, per_state); }));
    rec.builds.push_back(detail::run_build("lin-revision", zr, [&] { return build_linear_revision(space, shared); }));
    audit.records.push_back(std::move(rec));
  }
  return audit;
}

struct FamilyCount {
  Family family;
  CountResult contraction;
  CountResult revision;
  // Brute-force counts where the space is small enough.
  std::optional<std::uint64_t> naive_contraction;
  std::optional<std::uint64_t> naive_revision;

  bool strategies_agree() const {
    return (!naive_contraction || *naive_contraction == contraction.count) &&
           (!naive_revision || *naive_revision == revision.count);
  }
};

struct AsymmetryReport {
  std::vector<FamilyCount> families;
  // Indices into `families`.
  std::vector<std::size_t> more_contraction;
  std::vector<std::size_t> more_revision;
};

// Exact operator counts of both kinds for every one-atom family.
inline AsymmetryReport find_count_asymmetry(std::size_t atoms = 1, std::uint64_t budget = SearchConfig{}.node_budget) {
  if (atoms != 1) throw FormatError("count asymmetry scan supports 1 atom only");
  Signature sig({"a"});
  AsymmetryReport report;
  for (auto& family : all_families(sig)) {
    auto space = family.space(sig);
    FamilyCount fc;
    fc.family = std::move(family);
    SearchConfig config;
    config.node_budget = budget;
    config.kind = ChangeKind::contraction;
    fc.contraction = count_operators(*space, config);
    config.kind = ChangeKind::revision;
    fc.revision = count_operators(*space, config);
    if (detail::naive_feasible(*space)) {
      fc.naive_contraction = count_operators_naive(space, ChangeKind::contraction).count;
      fc.naive_revision = count_operators_naive(space, ChangeKind::revision).count;
    }
    const std::size_t i = report.families.size();
    if (fc.contraction.count > fc.revision.count) report.more_contraction.push_back(i);
    if (fc.revision.count > fc.contraction.count) report.more_revision.push_back(i);
    report.families.push_back(std::move(fc));
  }
  return report;
}

}  // namespace esbc
