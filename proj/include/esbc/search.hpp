#pragma once

// Existence and counting of AGM operators on a space by backtracking over
// table cells, plus a brute-force enumerator used as a second opinion.

#include <algorithm>
#include <cstdint>
#include <future>
#include <limits>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "esbc/error.hpp"
#include "esbc/logic.hpp"
#include "esbc/operators.hpp"
#include "esbc/space.hpp"
#include "esbc/verify.hpp"

namespace esbc {

struct SearchConfig {
  ChangeKind kind = ChangeKind::contraction;
  std::uint64_t node_budget = 100'000'000;
  std::optional<std::uint64_t> count_cap;
  bool parallel = false;
};

struct ExistenceResult {
  bool exists = false;
  std::optional<OperatorTable> witness;
  // The whole search space was covered: a negative answer is a certificate.
  bool exhausted = false;
  std::uint64_t nodes_visited = 0;
};

struct CountResult {
  std::uint64_t count = 0;
  // False when the count hit `count_cap` or overflowed 64 bits.
  bool exact = true;
  std::uint64_t nodes_visited = 0;
};

// Realized model sets a single cell may take without breaking a unary
// postulate, by ascending bitmask.
//   contraction: beliefs not inside the input force the beliefs (C1, C2);
//     otherwise bel | S with S a subset of the input's complement (C1, C4),
//     S non-empty unless the input is a tautology (C3).
//   revision: consistent expansion forces bel & input (R2); an empty input
//     forces the empty set (R1); otherwise non-empty subsets of the input
//     (R1, R3).
inline std::vector<ModelSet> admissible_models(ChangeKind kind, ModelSet bel, ModelSet input, const EpistemicSpace& space) {
  const auto& family = space.family();
  const ModelSet all = space.signature().universe();
  std::vector<ModelSet> out;
  auto keep = [&](ModelSet x) {
    if (family.realized(x)) out.push_back(x);
  };
  if (kind == ChangeKind::contraction) {
    if (!bel.subset_of(input)) {
      keep(bel);
    } else if (input == all) {
      keep(bel);
    } else {
      for_each_subset(all - input, [&](ModelSet extra) {
        if (!extra.empty()) keep(bel | extra);
      });
    }
  } else {
    if (bel.intersects(input)) {
      keep(bel & input);
    } else if (input.empty()) {
      keep(ModelSet{});
    } else {
      for_each_subset(input, [&](ModelSet x) {
        if (!x.empty()) keep(x);
      });
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b, bool& overflow) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    overflow = true;
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

// Backtracking over the cells of one state's row, inputs by ascending
// bitmask. The pairwise postulates only relate cells of the same state, so
// rows are independent. Every pairwise instance is checked as soon as its
// largest cell is assigned: R5/R6 at (c, n) involve c and c & n; C6 at
// (c, n <= c) involves c, n and c & n; C7 at (m, c) involves c and m & c.
class RowSearch {
 public:
  enum class Mode { first, count };

  RowSearch(ChangeKind kind, StateIndex state, const EpistemicSpace& space, std::uint64_t budget,
            std::optional<std::uint64_t> cap)
      : kind_(kind),
        bel_(space.beliefs(state)),
        all_(space.signature().universe()),
        family_(space.family()),
        inputs_(space.signature().model_set_count()),
        budget_(budget),
        cap_(cap),
        values_(inputs_) {
    domains_.reserve(inputs_);
    for (ModelSet::Bits m = 0; m < inputs_; ++m) domains_.push_back(admissible_models(kind, bel_, ModelSet(m), space));
  }

  struct Outcome {
    bool budget_exceeded = false;
    std::optional<std::vector<ModelSet>> first;
    std::uint64_t count = 0;
    bool exact = true;
    std::uint64_t nodes = 0;
  };

  Outcome run(Mode mode) {
    mode_ = mode;
    // A cell without candidates settles the row before any branching.
    for (const auto& d : domains_) {
      if (d.empty()) return std::move(out_);
    }
    try {
      descend(0, 1);
    } catch (const Stop&) {
    }
    out_.nodes = nodes_;
    return std::move(out_);
  }

 private:
  struct Stop {};

  bool consistent(ModelSet::Bits c) const {
    auto lookup = [this](ModelSet x) { return values_[x.bits()]; };
    const ModelSet cur(c);
    if (kind_ == ChangeKind::revision) {
      for (ModelSet::Bits n = 0; n < inputs_; ++n) {
        if (!evaluate(Postulate::R5, bel_, all_, lookup, cur, ModelSet(n)).ok) return false;
        if (!evaluate(Postulate::R6, bel_, all_, lookup, cur, ModelSet(n)).ok) return false;
      }
    } else {
      for (ModelSet::Bits n = 0; n <= c; ++n) {
        if (!evaluate(Postulate::C6, bel_, all_, lookup, cur, ModelSet(n)).ok) return false;
      }
      for (ModelSet::Bits m = 0; m < inputs_; ++m) {
        if (!evaluate(Postulate::C7, bel_, all_, lookup, ModelSet(m), cur).ok) return false;
      }
    }
    return true;
  }

  void descend(ModelSet::Bits c, std::uint64_t weight) {
    if (c == inputs_) {
      if (mode_ == Mode::first) {
        out_.first = values_;
        throw Stop{};
      }
      out_.count += weight;
      if (out_.count < weight || (cap_ && out_.count >= *cap_)) {
        out_.exact = false;
        if (out_.count < weight) out_.count = std::numeric_limits<std::uint64_t>::max();
        if (cap_) out_.count = std::min(out_.count, *cap_);
        throw Stop{};
      }
      return;
    }
    for (ModelSet x : domains_[c]) {
      if (++nodes_ > budget_) {
        out_.budget_exceeded = true;
        throw Stop{};
      }
      values_[c] = x;
      if (!consistent(c)) continue;
      bool overflow = false;
      std::uint64_t w = saturating_mul(weight, family_.multiplicity(x), overflow);
      if (overflow) {
        out_.exact = false;
        out_.count = std::numeric_limits<std::uint64_t>::max();
        throw Stop{};
      }
      descend(c + 1, w);
    }
  }

  ChangeKind kind_;
  ModelSet bel_;
  ModelSet all_;
  const RealizedFamily& family_;
  ModelSet::Bits inputs_;
  std::uint64_t budget_;
  std::optional<std::uint64_t> cap_;
  std::vector<std::vector<ModelSet>> domains_;
  std::vector<ModelSet> values_;
  Mode mode_ = Mode::first;
  std::uint64_t nodes_ = 0;
  Outcome out_;
};

template <class F>
auto for_rows(const EpistemicSpace& space, bool parallel, F&& per_row) {
  using Result = decltype(per_row(StateIndex{0}));
  std::vector<Result> rows;
  if (parallel) {
    std::vector<std::future<Result>> jobs;
    for (StateIndex s = 0; s < space.size(); ++s) {
      jobs.push_back(std::async(std::launch::async, [&per_row, s] { return per_row(s); }));
    }
    for (auto& j : jobs) rows.push_back(j.get());
  } else {
    for (StateIndex s = 0; s < space.size(); ++s) rows.push_back(per_row(s));
  }
  return rows;
}

}  // namespace detail

// Decides whether an AGM operator of `config.kind` exists on the space. A
// negative answer comes with `exhausted = true`. Throws BudgetExhausted when
// the node budget runs out first.
inline ExistenceResult exists_operator(std::shared_ptr<const EpistemicSpace> space, const SearchConfig& config) {
  using detail::RowSearch;
  // Sequential runs stop at the first row without a solution; parallel runs
  // search every row but merge only up to that row, so both agree.
  std::vector<RowSearch::Outcome> rows;
  if (config.parallel) {
    rows = detail::for_rows(*space, true, [&](StateIndex s) {
      return RowSearch(config.kind, s, *space, config.node_budget, std::nullopt).run(RowSearch::Mode::first);
    });
  } else {
    for (StateIndex s = 0; s < space->size(); ++s) {
      rows.push_back(RowSearch(config.kind, s, *space, config.node_budget, std::nullopt).run(RowSearch::Mode::first));
      if (rows.back().budget_exceeded || !rows.back().first) break;
    }
  }
  ExistenceResult result;
  const auto& family = space->family();
  const std::size_t inputs = space->signature().model_set_count();
  std::vector<StateIndex> entries(space->size() * inputs);
  for (StateIndex s = 0; s < rows.size(); ++s) {
    result.nodes_visited += rows[s].nodes;
    if (rows[s].budget_exceeded || result.nodes_visited > config.node_budget) {
      throw BudgetExhausted(result.nodes_visited);
    }
    if (!rows[s].first) {
      result.exhausted = true;
      return result;
    }
    for (std::size_t m = 0; m < inputs; ++m) {
      ModelSet x = (*rows[s].first)[m];
      entries[s * inputs + m] = x == space->beliefs(s) ? s : *family.representative(x);
    }
  }
  result.exists = true;
  result.witness = OperatorTable(std::move(space), config.kind, std::move(entries));
  return result;
}

// Number of distinct AGM operator tables of `config.kind`. Rows are counted
// separately and multiplied; duplicate-belief states multiply the count.
inline CountResult count_operators(const EpistemicSpace& space, const SearchConfig& config) {
  using detail::RowSearch;
  auto rows = detail::for_rows(space, config.parallel, [&](StateIndex s) {
    return RowSearch(config.kind, s, space, config.node_budget, config.count_cap).run(RowSearch::Mode::count);
  });
  CountResult result;
  result.count = 1;
  bool zero = false;
  for (const auto& row : rows) {
    result.nodes_visited += row.nodes;
    if (row.budget_exceeded || result.nodes_visited > config.node_budget) {
      throw BudgetExhausted(result.nodes_visited);
    }
    if (row.count == 0) zero = true;
    bool overflow = false;
    result.count = detail::saturating_mul(result.count, row.count, overflow);
    if (overflow || !row.exact) result.exact = false;
  }
  if (zero) return CountResult{0, true, result.nodes_visited};
  if (config.count_cap && result.count >= *config.count_cap) {
    result.count = *config.count_cap;
    result.exact = false;
  }
  return result;
}

inline constexpr std::uint64_t kNaiveTableLimit = 2'000'000;

// Brute force: every table over the space is generated and checked with the
// postulate verifier. Only feasible for tiny spaces; throws FormatError
// beyond kNaiveTableLimit tables.
inline CountResult count_operators_naive(const std::shared_ptr<const EpistemicSpace>& space, ChangeKind kind) {
  const std::size_t states = space->size();
  const std::size_t inputs = space->signature().model_set_count();
  const std::size_t cells = states * inputs;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < cells; ++i) {
    total *= states;
    if (total > kNaiveTableLimit) throw FormatError("space too large for naive enumeration");
  }
  const auto plan = quantification_plan(space->signature());
  const ModelSet all = space->signature().universe();
  std::vector<StateIndex> entries(cells, 0);
  CountResult result;
  for (std::uint64_t t = 0; t < total; ++t) {
    ++result.nodes_visited;
    bool agm = true;
    for (StateIndex s = 0; s < states && agm; ++s) {
      auto lookup = [&](ModelSet x) { return space->beliefs(entries[s * inputs + x.bits()]); };
      agm = check_row(kind, s, space->beliefs(s), all, plan, lookup, [](const Violation&) { return false; });
    }
    if (agm) ++result.count;
    for (std::size_t i = cells; i-- > 0;) {
      if (++entries[i] < states) break;
      entries[i] = 0;
    }
  }
  return result;
}

}  // namespace esbc
