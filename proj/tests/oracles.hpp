#pragma once

// Reference implementations used only by tests. They work on plain integers
// and formula trees and avoid the library's ModelSet algebra, so that the
// library can be checked against them.

#include <cstdint>
#include <algorithm>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "esbc/esbc.hpp"

namespace oracle {

using esbc::Formula;
using Kind = esbc::Formula::Kind;

inline bool atom_value(unsigned world, std::size_t atom) { return (world >> atom) & 1u; }

// Classical truth of f in the interpretation with index `world`.
inline bool truth(const Formula& f, unsigned world) {
  switch (f.kind()) {
    case Kind::top: return true;
    case Kind::bottom: return false;
    case Kind::atom: return atom_value(world, f.atom_index());
    case Kind::negation: return !truth(f.lhs(), world);
    case Kind::conjunction: return truth(f.lhs(), world) && truth(f.rhs(), world);
    case Kind::disjunction: return truth(f.lhs(), world) || truth(f.rhs(), world);
    case Kind::implication: return !truth(f.lhs(), world) || truth(f.rhs(), world);
    case Kind::biconditional: return truth(f.lhs(), world) == truth(f.rhs(), world);
  }
  return false;
}

inline std::set<unsigned> model_list(const Formula& f, std::size_t atoms) {
  std::set<unsigned> out;
  for (unsigned w = 0; w < (1u << atoms); ++w) {
    if (truth(f, w)) out.insert(w);
  }
  return out;
}

inline std::uint32_t mask_of(const std::set<unsigned>& worlds) {
  std::uint32_t m = 0;
  for (unsigned w : worlds) m |= 1u << w;
  return m;
}

inline std::uint32_t models(const Formula& f, std::size_t atoms) { return mask_of(model_list(f, atoms)); }

inline bool member(std::uint32_t set, unsigned w) { return (set >> w) & 1u; }

inline bool included(std::uint32_t a, std::uint32_t b, std::size_t atoms) {
  for (unsigned w = 0; w < (1u << atoms); ++w) {
    if (member(a, w) && !member(b, w)) return false;
  }
  return true;
}

// ---- closure conditions, in their literal quantifier form ----

inline bool realized(const esbc::EpistemicSpace& space, std::uint32_t m) {
  for (const auto& s : space.states()) {
    if (s.beliefs.bits() == m) return true;
  }
  return false;
}

inline bool literal_zc(const esbc::EpistemicSpace& space) {
  const std::size_t n = space.signature().atom_count();
  for (const auto& s : space.states()) {
    for (std::uint32_t m = 0; m < (1u << (1u << n)); ++m) {
      if (included(s.beliefs.bits(), m, n) && !realized(space, m)) return false;
    }
  }
  return true;
}

inline bool literal_zr1(const esbc::EpistemicSpace& space) {
  for (unsigned w = 0; w < (1u << space.signature().atom_count()); ++w) {
    if (!realized(space, 1u << w)) return false;
  }
  return true;
}

inline bool literal_zr2(const esbc::EpistemicSpace& space) {
  const std::size_t n = space.signature().atom_count();
  for (const auto& s : space.states()) {
    for (std::uint32_t m = 0; m < (1u << (1u << n)); ++m) {
      if (included(m, s.beliefs.bits(), n) && !realized(space, m)) return false;
    }
  }
  return true;
}

inline bool literal_unbiased(const esbc::EpistemicSpace& space) {
  const std::size_t n = space.signature().atom_count();
  for (std::uint32_t m = 0; m < (1u << (1u << n)); ++m) {
    if (!realized(space, m)) return false;
  }
  return true;
}

// ---- single cells of the constructions, straight from their case splits ----

inline std::uint32_t complement(std::uint32_t m, std::size_t atoms) {
  std::set<unsigned> out;
  for (unsigned w = 0; w < (1u << atoms); ++w) {
    if (!member(m, w)) out.insert(w);
  }
  return mask_of(out);
}

// `order` lists interpretations most plausible first.
inline std::optional<unsigned> best(std::uint32_t m, const std::vector<unsigned>& order) {
  for (unsigned w : order) {
    if (member(m, w)) return w;
  }
  return std::nullopt;
}

inline std::uint32_t contraction_cell(std::uint32_t bel, std::uint32_t input, std::size_t atoms,
                                      const std::vector<unsigned>* order) {
  std::uint32_t neg = complement(input, atoms);
  if ((bel & neg) != 0) return bel;
  if (!order) return bel | neg;
  auto w = best(neg, *order);
  return w ? (bel | (1u << *w)) : bel;
}

inline std::uint32_t revision_cell(std::uint32_t bel, std::uint32_t input, const std::vector<unsigned>* order) {
  if ((bel & input) != 0) return bel & input;
  if (!order) return input;
  auto w = best(input, *order);
  return w ? (1u << *w) : 0u;
}

// ---- AGM conditions on a table of result model sets, literal form ----

// `x[m]` holds the models of the state reached with input m.
inline bool agm_contraction_row(std::uint32_t bel, const std::vector<std::uint32_t>& x, std::size_t atoms) {
  const std::uint32_t sets = 1u << (1u << atoms);
  const std::uint32_t omega = (1u << (1u << atoms)) - 1;
  for (std::uint32_t m = 0; m < sets; ++m) {
    if (!included(bel, x[m], atoms)) return false;                                   // C1
    if (!included(bel, m, atoms) && !included(x[m], bel, atoms)) return false;       // C2
    if (m != omega && included(x[m], m, atoms)) return false;                        // C3
    if (!included(x[m] & m, bel, atoms)) return false;                               // C4
    for (std::uint32_t n = 0; n < sets; ++n) {
      if (!included(x[m & n], x[m] | x[n], atoms)) return false;                     // C6
      if (!included(x[m & n], n, atoms) && !included(x[n], x[m & n], atoms)) return false;  // C7
    }
  }
  return true;
}

inline bool agm_revision_row(std::uint32_t bel, const std::vector<std::uint32_t>& x, std::size_t atoms) {
  const std::uint32_t sets = 1u << (1u << atoms);
  for (std::uint32_t m = 0; m < sets; ++m) {
    if (!included(x[m], m, atoms)) return false;                                     // R1
    if ((bel & m) != 0 && x[m] != (bel & m)) return false;                           // R2
    if (m != 0 && x[m] == 0) return false;                                           // R3
    for (std::uint32_t n = 0; n < sets; ++n) {
      if (!included(x[m] & n, x[m & n], atoms)) return false;                        // R5
      if ((x[m] & n) != 0 && !included(x[m & n], x[m] & n, atoms)) return false;     // R6
    }
  }
  return true;
}

// Counts AGM tables by trying every assignment of target states to cells.
inline std::uint64_t brute_force_count(const esbc::EpistemicSpace& space, esbc::ChangeKind kind) {
  const std::size_t atoms = space.signature().atom_count();
  const std::size_t states = space.size();
  const std::size_t sets = std::size_t{1} << (1u << atoms);
  const std::size_t cells = states * sets;
  std::vector<std::size_t> target(cells, 0);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (std::size_t s = 0; s < states && ok; ++s) {
      std::vector<std::uint32_t> x(sets);
      for (std::size_t m = 0; m < sets; ++m) x[m] = space.beliefs(target[s * sets + m]).bits();
      const std::uint32_t bel = space.beliefs(s).bits();
      ok = kind == esbc::ChangeKind::contraction ? agm_contraction_row(bel, x, atoms) : agm_revision_row(bel, x, atoms);
    }
    if (ok) ++count;
    std::size_t i = cells;
    for (; i > 0; --i) {
      if (++target[i - 1] < states) break;
      target[i - 1] = 0;
    }
    if (i == 0) return count;
  }
}

// ---- formula-level postulates over belief sets as sets of formula classes ----

// A deductively closed belief set over n atoms, as the set of its formula
// classes. Class c is the class of formulas whose model mask is c.
struct Theory {
  std::size_t atoms = 0;
  std::vector<bool> has;

  friend bool operator==(const Theory&, const Theory&) = default;
};

inline std::uint32_t class_count(std::size_t atoms) { return 1u << (1u << atoms); }

// Cn of the beliefs of a state whose models are `bel`: every class true in
// all of them.
inline Theory theory_of(std::uint32_t bel, std::size_t atoms) {
  Theory t{atoms, std::vector<bool>(class_count(atoms), false)};
  for (std::uint32_t c = 0; c < class_count(atoms); ++c) {
    bool entailed = true;
    for (unsigned w = 0; w < (1u << atoms); ++w) {
      if (member(bel, w) && !member(c, w)) entailed = false;
    }
    t.has[c] = entailed;
  }
  return t;
}

// Interpretations satisfying every member of the theory.
inline std::uint32_t models_of_theory(const Theory& t) {
  std::uint32_t out = 0;
  for (unsigned w = 0; w < (1u << t.atoms); ++w) {
    bool sat = true;
    for (std::uint32_t c = 0; c < t.has.size(); ++c) {
      if (t.has[c] && !member(c, w)) sat = false;
    }
    if (sat) out |= 1u << w;
  }
  return out;
}

inline bool contains(const Theory& t, const Formula& f) { return t.has[models(f, t.atoms)]; }
inline bool consistent(const Theory& t) { return !t.has[0]; }

inline bool subset(const Theory& a, const Theory& b) {
  for (std::size_t c = 0; c < a.has.size(); ++c) {
    if (a.has[c] && !b.has[c]) return false;
  }
  return true;
}

inline Theory meet(const Theory& a, const Theory& b) {
  Theory t = a;
  for (std::size_t c = 0; c < t.has.size(); ++c) t.has[c] = a.has[c] && b.has[c];
  return t;
}

// Cn(T u {f}).
inline Theory expand(const Theory& t, const Formula& f) {
  return theory_of(models_of_theory(t) & models(f, t.atoms), t.atoms);
}

// Postulate verdict at the level of formulas and belief sets. `change(f)`
// gives the models of the state reached with input formula f. For R4 and C5
// `beta` is the formula compared with `alpha`.
template <class Change>
bool formula_level(esbc::Postulate p, std::uint32_t bel, std::size_t atoms, const Change& change, const Formula& alpha,
                   const Formula& beta) {
  using esbc::Postulate;
  const Theory k = theory_of(bel, atoms);
  auto after = [&](const Formula& f) { return theory_of(change(f), atoms); };
  const Formula both = Formula::conjunction(alpha, beta);
  switch (p) {
    case Postulate::R1: return contains(after(alpha), alpha);
    case Postulate::R2: {
      Theory plus = expand(k, alpha);
      return !consistent(plus) || after(alpha) == plus;
    }
    case Postulate::R3: return models(alpha, atoms) == 0 || consistent(after(alpha));
    case Postulate::R4:
    case Postulate::C5: return models(alpha, atoms) != models(beta, atoms) || after(alpha) == after(beta);
    case Postulate::R5: return subset(after(both), expand(after(alpha), beta));
    case Postulate::R6: {
      Theory plus = expand(after(alpha), beta);
      return !consistent(plus) || subset(plus, after(both));
    }
    case Postulate::C1: return subset(after(alpha), k);
    case Postulate::C2: return contains(k, alpha) || subset(k, after(alpha));
    case Postulate::C3: return models(alpha, atoms) == class_count(atoms) - 1 || !contains(after(alpha), alpha);
    case Postulate::C4: return subset(k, expand(after(alpha), alpha));
    case Postulate::C6: return subset(meet(after(alpha), after(beta)), after(both));
    case Postulate::C7: return contains(after(both), beta) || subset(after(both), after(beta));
  }
  return false;
}

// ---- random formulas ----

inline Formula random_formula(std::mt19937_64& rng, std::size_t atoms, int depth) {
  std::uniform_int_distribution<int> leaf(0, 9);
  if (depth <= 0 || leaf(rng) < 3) {
    int r = leaf(rng);
    if (r == 0) return Formula::top();
    if (r == 1) return Formula::bottom();
    return Formula::atom(std::uniform_int_distribution<std::size_t>(0, atoms - 1)(rng));
  }
  std::uniform_int_distribution<int> op(0, 5);
  switch (op(rng)) {
    case 0: return Formula::negation(random_formula(rng, atoms, depth - 1));
    case 1: return Formula::conjunction(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    case 2: return Formula::disjunction(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    case 3: return Formula::implication(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    case 4:
      return Formula::biconditional(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    default: return Formula::negation(Formula::negation(random_formula(rng, atoms, depth - 1)));
  }
}

// An equivalent but usually different formula: double negation, neutral
// constants, commuted operands, De Morgan and implication unfolding, applied
// at random positions.
inline Formula variant(const Formula& f, std::mt19937_64& rng, int budget = 3) {
  std::uniform_int_distribution<int> pick(0, 7);
  Formula g = f;
  if (f.is_binary() && budget > 0) {
    Formula l = variant(f.lhs(), rng, budget - 1);
    Formula r = variant(f.rhs(), rng, budget - 1);
    switch (f.kind()) {
      case Kind::conjunction: g = Formula::conjunction(l, r); break;
      case Kind::disjunction: g = Formula::disjunction(l, r); break;
      case Kind::implication: g = Formula::implication(l, r); break;
      default: g = Formula::biconditional(l, r); break;
    }
  } else if (f.kind() == Kind::negation && budget > 0) {
    g = Formula::negation(variant(f.lhs(), rng, budget - 1));
  }
  switch (pick(rng)) {
    case 0: return Formula::negation(Formula::negation(g));
    case 1: return Formula::conjunction(g, Formula::top());
    case 2: return Formula::disjunction(Formula::bottom(), g);
    case 3:
      if (g.kind() == Kind::conjunction) return Formula::conjunction(g.rhs(), g.lhs());
      if (g.kind() == Kind::disjunction) return Formula::disjunction(g.rhs(), g.lhs());
      return g;
    case 4:
      if (g.kind() == Kind::conjunction)
        return Formula::negation(Formula::disjunction(Formula::negation(g.lhs()), Formula::negation(g.rhs())));
      return g;
    case 5:
      if (g.kind() == Kind::implication) return Formula::disjunction(Formula::negation(g.lhs()), g.rhs());
      return g;
    case 6: return Formula::conjunction(g, g);
    default: return g;
  }
}

// ---- transcription agreement over random instances ----

struct TranscriptionStats {
  std::size_t instances = 0;
  std::size_t disagreements = 0;
  std::size_t violations = 0;  // instances where both sides say "violated"
  std::size_t equivalent_pairs = 0;  // R4/C5 instances whose inputs were equivalent
  std::vector<std::string> details;
};

// Random spaces over one or two atoms with random or near-AGM tables; one
// postulate instance per iteration, judged by the library's model-set
// transcription and by `formula_level`.
inline TranscriptionStats transcription_trial(std::size_t count, std::uint64_t seed) {
  using esbc::ChangeKind;
  using esbc::ModelSet;
  std::mt19937_64 rng(seed);
  TranscriptionStats stats;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t atoms = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    const esbc::Signature sig = atoms == 1 ? esbc::Signature({"a"}) : esbc::Signature({"a", "b"});
    const std::uint32_t sets = sig.model_set_count();
    const std::size_t state_count = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    std::vector<esbc::EpistemicState> states;
    for (std::size_t s = 0; s < state_count; ++s) {
      states.push_back({"s" + std::to_string(s), ModelSet(std::uniform_int_distribution<std::uint32_t>(0, sets - 1)(rng))});
    }
    auto space = std::make_shared<const esbc::EpistemicSpace>(sig, std::move(states));
    const ChangeKind kind = std::bernoulli_distribution(0.5)(rng) ? ChangeKind::revision : ChangeKind::contraction;

    // Near-AGM tables follow a maxichoice rule where the required state
    // exists; random tables pick every target uniformly.
    const bool structured = std::bernoulli_distribution(0.6)(rng);
    std::vector<unsigned> order(sig.world_count());
    for (unsigned w = 0; w < order.size(); ++w) order[w] = w;
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_int_distribution<std::size_t> any_state(0, space->size() - 1);
    std::vector<esbc::StateIndex> entries;
    for (esbc::StateIndex s = 0; s < space->size(); ++s) {
      for (std::uint32_t m = 0; m < sets; ++m) {
        std::size_t target = any_state(rng);
        if (structured) {
          std::uint32_t want = kind == ChangeKind::contraction
                                   ? contraction_cell(space->beliefs(s).bits(), m, atoms, &order)
                                   : revision_cell(space->beliefs(s).bits(), m, &order);
          for (esbc::StateIndex t = 0; t < space->size(); ++t) {
            if (space->beliefs(t).bits() == want) {
              target = t;
              break;
            }
          }
        }
        entries.push_back(target);
      }
    }
    esbc::OperatorTable table(space, kind, std::move(entries));

    const auto& list = kind == ChangeKind::revision ? std::vector<esbc::Postulate>(esbc::kRevisionPostulates.begin(),
                                                                                  esbc::kRevisionPostulates.end())
                                                    : std::vector<esbc::Postulate>(esbc::kContractionPostulates.begin(),
                                                                                  esbc::kContractionPostulates.end());
    const esbc::Postulate p = list[std::uniform_int_distribution<std::size_t>(0, list.size() - 1)(rng)];
    const esbc::StateIndex state = any_state(rng);
    const Formula alpha = random_formula(rng, atoms, 3);
    Formula beta = random_formula(rng, atoms, 3);
    if (esbc::holds_by_representation(p) && std::bernoulli_distribution(0.75)(rng)) beta = variant(alpha, rng);

    const std::uint32_t bel = space->beliefs(state).bits();
    auto change = [&](const Formula& f) { return table.result(state, ModelSet(models(f, atoms))).bits(); };
    const bool by_formulas = formula_level(p, bel, atoms, change, alpha, beta);

    bool by_models = true;
    if (!esbc::holds_by_representation(p)) {
      auto lookup = [&](ModelSet x) { return table.result(state, x); };
      by_models = esbc::evaluate(p, space->beliefs(state), sig.universe(), lookup,
                                 esbc::models_of(alpha, sig), esbc::models_of(beta, sig))
                      .ok;
    } else if (models(alpha, atoms) == models(beta, atoms)) {
      ++stats.equivalent_pairs;
    }

    ++stats.instances;
    if (!by_formulas && !by_models) ++stats.violations;
    if (by_formulas != by_models) {
      ++stats.disagreements;
      stats.details.push_back(std::string(esbc::name(p)) + " alpha=" + esbc::to_string(alpha, sig) +
                              " beta=" + esbc::to_string(beta, sig));
    }
  }
  return stats;
}

}  // namespace oracle
