#pragma once

// Finite propositional semantics: signatures, interpretations, model sets
// and the orders used to pick minimal interpretations.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "esbc/error.hpp"

namespace esbc {

// Hard cap on the number of atoms. Model sets over four atoms still fit in
// 16 bits and the space of all model sets (2^16) stays enumerable.
inline constexpr std::size_t kMaxAtoms = 4;

// An interpretation over a signature of n atoms. Bit i of `index` is the
// truth value of atom i.
struct Interpretation {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(const Interpretation&, const Interpretation&) = default;
};

// A set of interpretations, stored as a bitmask: bit w is set iff the
// interpretation with index w is a member.
class ModelSet {
 public:
  using Bits = std::uint32_t;

  constexpr ModelSet() = default;
  constexpr explicit ModelSet(Bits bits) : bits_(bits) {}

  static constexpr ModelSet universe(std::uint32_t world_count) {
    return ModelSet(world_count >= 32 ? ~Bits{0} : ((Bits{1} << world_count) - 1));
  }
  static constexpr ModelSet singleton(Interpretation w) { return ModelSet(Bits{1} << w.index); }

  constexpr Bits bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(Interpretation w) const { return ((bits_ >> w.index) & 1U) != 0; }
  constexpr bool subset_of(ModelSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(ModelSet other) const { return (bits_ & other.bits_) != 0; }
  constexpr ModelSet with(Interpretation w) const { return ModelSet(bits_ | (Bits{1} << w.index)); }

  // Lowest-index member; the set must be non-empty.
  constexpr Interpretation first() const {
    return Interpretation{static_cast<std::uint32_t>(std::countr_zero(bits_))};
  }

  template <class F>
  constexpr void for_each(F&& f) const {
    for (Bits rest = bits_; rest != 0; rest &= rest - 1) {
      f(Interpretation{static_cast<std::uint32_t>(std::countr_zero(rest))});
    }
  }

  std::vector<Interpretation> members() const {
    std::vector<Interpretation> out;
    for_each([&](Interpretation w) { out.push_back(w); });
    return out;
  }

  friend constexpr ModelSet operator&(ModelSet a, ModelSet b) { return ModelSet(a.bits_ & b.bits_); }
  friend constexpr ModelSet operator|(ModelSet a, ModelSet b) { return ModelSet(a.bits_ | b.bits_); }
  // Set difference.
  friend constexpr ModelSet operator-(ModelSet a, ModelSet b) { return ModelSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(ModelSet, ModelSet) = default;
  friend constexpr auto operator<=>(ModelSet a, ModelSet b) { return a.bits_ <=> b.bits_; }

 private:
  Bits bits_ = 0;
};

// Iterate every subset of `of`, including the empty set and `of` itself.
template <class F>
constexpr void for_each_subset(ModelSet of, F&& f) {
  ModelSet::Bits sub = of.bits();
  while (true) {
    f(ModelSet(sub));
    if (sub == 0) break;
    sub = (sub - 1) & of.bits();
  }
}

class Signature {
 public:
  explicit Signature(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw FormatError("a signature needs at least one atom");
    if (atoms_.size() > kMaxAtoms) {
      throw FormatError("at most " + std::to_string(kMaxAtoms) + " atoms are supported, got " +
                        std::to_string(atoms_.size()));
    }
    std::unordered_set<std::string> seen;
    for (const auto& a : atoms_) {
      if (!valid_atom_name(a)) throw FormatError("invalid atom name '" + a + "'");
      if (a == "true" || a == "false") throw FormatError("atom name '" + a + "' is reserved");
      if (!seen.insert(a).second) throw FormatError("duplicate atom '" + a + "'");
    }
  }

  static bool valid_atom_name(std::string_view s) {
    if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
    return std::all_of(s.begin() + 1, s.end(), [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    });
  }

  const std::vector<std::string>& atoms() const { return atoms_; }
  std::size_t atom_count() const { return atoms_.size(); }
  std::uint32_t world_count() const { return std::uint32_t{1} << atoms_.size(); }
  // Number of distinct model sets, 2^(2^n).
  std::uint32_t model_set_count() const { return std::uint32_t{1} << world_count(); }
  ModelSet universe() const { return ModelSet::universe(world_count()); }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (atoms_[i] == name) return i;
    }
    return std::nullopt;
  }

  static bool value(Interpretation w, std::size_t atom) { return ((w.index >> atom) & 1U) != 0; }

  // One character per atom in declaration order, '1' for true.
  std::string bitstring(Interpretation w) const {
    std::string s(atoms_.size(), '0');
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (value(w, i)) s[i] = '1';
    }
    return s;
  }

  Interpretation parse_bitstring(std::string_view s) const {
    if (s.size() != atoms_.size()) {
      throw FormatError("interpretation '" + std::string(s) + "' must have " +
                        std::to_string(atoms_.size()) + " digits");
    }
    std::uint32_t index = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        index |= std::uint32_t{1} << i;
      } else if (s[i] != '0') {
        throw FormatError("interpretation '" + std::string(s) + "' may only contain 0 and 1");
      }
    }
    return Interpretation{index};
  }

  // Members as bitstrings, sorted lexicographically.
  std::vector<std::string> bitstrings(ModelSet m) const {
    std::vector<std::string> out;
    m.for_each([&](Interpretation w) { out.push_back(bitstring(w)); });
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string format(ModelSet m) const {
    std::string out = "{";
    bool first = true;
    for (const auto& s : bitstrings(m)) {
      if (!first) out += ',';
      out += s;
      first = false;
    }
    return out + "}";
  }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<std::string> atoms_;
};

// A strict ranking of all interpretations; earlier means more plausible.
class LinearOrder {
 public:
  explicit LinearOrder(std::vector<Interpretation> ranking) : ranking_(std::move(ranking)) {
    rank_.assign(ranking_.size(), kUnset);
    for (std::size_t pos = 0; pos < ranking_.size(); ++pos) {
      auto w = ranking_[pos].index;
      if (w >= ranking_.size()) throw FormatError("linear order mentions an out-of-range interpretation");
      if (rank_[w] != kUnset) throw FormatError("linear order lists an interpretation twice");
      rank_[w] = static_cast<std::uint32_t>(pos);
    }
  }

  // Interpretations by ascending index.
  static LinearOrder ascending(std::uint32_t world_count) {
    std::vector<Interpretation> r;
    for (std::uint32_t w = 0; w < world_count; ++w) r.push_back(Interpretation{w});
    return LinearOrder(std::move(r));
  }

  std::size_t size() const { return ranking_.size(); }
  const std::vector<Interpretation>& ranking() const { return ranking_; }
  std::uint32_t rank(Interpretation w) const { return rank_.at(w.index); }
  bool before(Interpretation a, Interpretation b) const { return rank(a) < rank(b); }

  friend bool operator==(const LinearOrder& a, const LinearOrder& b) { return a.ranking_ == b.ranking_; }

 private:
  static constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<Interpretation> ranking_;
  std::vector<std::uint32_t> rank_;
};

// "11,10,01,00": comma separated bitstrings, most plausible first.
inline LinearOrder parse_order(std::string_view text, const Signature& sig) {
  std::vector<Interpretation> ranking;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    ranking.push_back(sig.parse_bitstring(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (ranking.size() != sig.world_count()) {
    throw FormatError("linear order '" + std::string(text) + "' must list all " +
                      std::to_string(sig.world_count()) + " interpretations");
  }
  return LinearOrder(std::move(ranking));
}

inline std::string format_order(const LinearOrder& order, const Signature& sig) {
  std::string out;
  for (const auto& w : order.ranking()) {
    if (!out.empty()) out += ',';
    out += sig.bitstring(w);
  }
  return out;
}

// A ranking with ties: level 0 is most plausible.
class TotalPreorder {
 public:
  explicit TotalPreorder(std::vector<std::uint32_t> levels) : levels_(std::move(levels)) {}

  static TotalPreorder flat(std::uint32_t world_count) {
    return TotalPreorder(std::vector<std::uint32_t>(world_count, 0));
  }
  static TotalPreorder from(const LinearOrder& order) {
    std::vector<std::uint32_t> levels(order.size());
    for (std::uint32_t w = 0; w < order.size(); ++w) levels[w] = order.rank(Interpretation{w});
    return TotalPreorder(std::move(levels));
  }

  std::size_t size() const { return levels_.size(); }
  std::uint32_t level(Interpretation w) const { return levels_.at(w.index); }
  const std::vector<std::uint32_t>& levels() const { return levels_; }
  bool less_equal(Interpretation a, Interpretation b) const { return level(a) <= level(b); }

  friend bool operator==(const TotalPreorder&, const TotalPreorder&) = default;

 private:
  std::vector<std::uint32_t> levels_;
};

inline ModelSet min_of(ModelSet m, const TotalPreorder& order) {
  std::uint32_t best = ~std::uint32_t{0};
  m.for_each([&](Interpretation w) { best = std::min(best, order.level(w)); });
  ModelSet out;
  m.for_each([&](Interpretation w) {
    if (order.level(w) == best) out = out.with(w);
  });
  return out;
}

inline ModelSet min_of(ModelSet m, const LinearOrder& order) {
  if (m.empty()) return m;
  Interpretation best = m.first();
  m.for_each([&](Interpretation w) {
    if (order.before(w, best)) best = w;
  });
  return ModelSet::singleton(best);
}

}  // namespace esbc
