#pragma once

// Propositional formulas: syntax tree, parser, printer and classical
// semantics over a Signature.

#include <cctype>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "esbc/error.hpp"
#include "esbc/logic.hpp"

namespace esbc {

class Formula {
 public:
  enum class Kind { top, bottom, atom, negation, conjunction, disjunction, implication, biconditional };

  static Formula top() { return Formula(std::make_shared<Node>(Node{Kind::top, 0, {}, {}})); }
  static Formula bottom() { return Formula(std::make_shared<Node>(Node{Kind::bottom, 0, {}, {}})); }
  static Formula atom(std::size_t index) {
    return Formula(std::make_shared<Node>(Node{Kind::atom, index, {}, {}}));
  }
  static Formula negation(Formula f) { return unary(Kind::negation, std::move(f)); }
  static Formula conjunction(Formula a, Formula b) { return binary(Kind::conjunction, std::move(a), std::move(b)); }
  static Formula disjunction(Formula a, Formula b) { return binary(Kind::disjunction, std::move(a), std::move(b)); }
  static Formula implication(Formula a, Formula b) { return binary(Kind::implication, std::move(a), std::move(b)); }
  static Formula biconditional(Formula a, Formula b) {
    return binary(Kind::biconditional, std::move(a), std::move(b));
  }

  Kind kind() const { return node_->kind; }
  std::size_t atom_index() const { return node_->atom; }
  // Operand of a negation, left operand of a binary connective.
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }

  bool is_binary() const { return node_->rhs != nullptr; }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::top:
      case Kind::bottom: return true;
      case Kind::atom: return a.atom_index() == b.atom_index();
      case Kind::negation: return a.lhs() == b.lhs();
      default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
  }

 private:
  struct Node {
    Kind kind;
    std::size_t atom;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static Formula unary(Kind k, Formula f) {
    return Formula(std::make_shared<Node>(Node{k, 0, std::move(f.node_), {}}));
  }
  static Formula binary(Kind k, Formula a, Formula b) {
    return Formula(std::make_shared<Node>(Node{k, 0, std::move(a.node_), std::move(b.node_)}));
  }

  std::shared_ptr<const Node> node_;
};

namespace detail {

// Recursive descent over the grammar
//   iff   := imp ('<->' imp)*
//   imp   := or ('->' imp)?
//   or    := and ('|' and)*
//   and   := unary ('&' unary)*
//   unary := ('~' | '!') unary | atom | 'true' | 'false' | '(' iff ')'
class FormulaParser {
 public:
  FormulaParser(std::string_view text, const Signature& sig) : text_(text), sig_(sig) {}

  Formula parse() {
    Formula f = parse_iff();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(pos_, what); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  Formula parse_iff() {
    Formula lhs = parse_imp();
    while (accept("<->")) lhs = Formula::biconditional(lhs, parse_imp());
    return lhs;
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (accept("->")) return Formula::implication(lhs, parse_imp());
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (accept("|")) lhs = Formula::disjunction(lhs, parse_and());
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (accept("&")) lhs = Formula::conjunction(lhs, parse_unary());
    return lhs;
  }

  Formula parse_unary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '~' || c == '!') {
      ++pos_;
      return Formula::negation(parse_unary());
    }
    if (c == '(') {
      ++pos_;
      Formula inner = parse_iff();
      if (!accept(")")) fail("expected ')'");
      return inner;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::islower(static_cast<unsigned char>(text_[pos_])) ||
                                     std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      auto name = text_.substr(start, pos_ - start);
      if (name == "true") return Formula::top();
      if (name == "false") return Formula::bottom();
      auto index = sig_.find(name);
      if (!index) throw UnknownAtom(std::string(name));
      return Formula::atom(*index);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

inline int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::biconditional: return 1;
    case Formula::Kind::implication: return 2;
    case Formula::Kind::disjunction: return 3;
    case Formula::Kind::conjunction: return 4;
    case Formula::Kind::negation: return 5;
    default: return 6;
  }
}

inline void print(const Formula& f, const Signature& sig, std::string& out) {
  using K = Formula::Kind;
  auto child = [&](const Formula& c, bool parens) {
    if (parens) out += '(';
    print(c, sig, out);
    if (parens) out += ')';
  };
  switch (f.kind()) {
    case K::top: out += "true"; return;
    case K::bottom: out += "false"; return;
    case K::atom: out += sig.atoms().at(f.atom_index()); return;
    case K::negation:
      out += '~';
      child(f.lhs(), precedence(f.lhs().kind()) < precedence(K::negation));
      return;
    default: break;
  }
  int p = precedence(f.kind());
  bool right_assoc = f.kind() == K::implication;
  child(f.lhs(), right_assoc ? precedence(f.lhs().kind()) <= p : precedence(f.lhs().kind()) < p);
  switch (f.kind()) {
    case K::conjunction: out += " & "; break;
    case K::disjunction: out += " | "; break;
    case K::implication: out += " -> "; break;
    default: out += " <-> "; break;
  }
  child(f.rhs(), right_assoc ? precedence(f.rhs().kind()) < p : precedence(f.rhs().kind()) <= p);
}

}  // namespace detail

// Precedence, tightest first: ~ & | -> <->. Implication associates to the
// right, the other binary connectives to the left.
inline Formula parse_formula(std::string_view text, const Signature& sig) {
  return detail::FormulaParser(text, sig).parse();
}

// ASCII rendering with the fewest parentheses that parse back to the same tree.
inline std::string to_string(const Formula& f, const Signature& sig) {
  std::string out;
  detail::print(f, sig, out);
  return out;
}

inline ModelSet models_of(const Formula& f, const Signature& sig) {
  using K = Formula::Kind;
  const ModelSet all = sig.universe();
  switch (f.kind()) {
    case K::top: return all;
    case K::bottom: return ModelSet{};
    case K::atom: {
      if (f.atom_index() >= sig.atom_count()) throw UnknownAtom("#" + std::to_string(f.atom_index()));
      ModelSet m;
      for (std::uint32_t w = 0; w < sig.world_count(); ++w) {
        if (Signature::value(Interpretation{w}, f.atom_index())) m = m.with(Interpretation{w});
      }
      return m;
    }
    case K::negation: return all - models_of(f.lhs(), sig);
    case K::conjunction: return models_of(f.lhs(), sig) & models_of(f.rhs(), sig);
    case K::disjunction: return models_of(f.lhs(), sig) | models_of(f.rhs(), sig);
    case K::implication: return (all - models_of(f.lhs(), sig)) | models_of(f.rhs(), sig);
    case K::biconditional: {
      ModelSet a = models_of(f.lhs(), sig);
      ModelSet b = models_of(f.rhs(), sig);
      return all - ((a - b) | (b - a));
    }
  }
  return ModelSet{};
}

// Whether `f` belongs to the belief set whose models are `belief`.
inline bool holds(ModelSet belief, const Formula& f, const Signature& sig) {
  return belief.subset_of(models_of(f, sig));
}

// Belief set expansion, semantically an intersection. May be empty.
inline ModelSet expand(ModelSet belief, const Formula& f, const Signature& sig) {
  return belief & models_of(f, sig);
}

// Canonical DNF: one minterm per member in ascending interpretation index,
// literals in atom declaration order.
inline Formula formula_with_models(ModelSet m, const Signature& sig) {
  if (m.empty()) return Formula::bottom();
  std::optional<Formula> dnf;
  m.for_each([&](Interpretation w) {
    std::optional<Formula> term;
    for (std::size_t i = 0; i < sig.atom_count(); ++i) {
      Formula literal = Signature::value(w, i) ? Formula::atom(i) : Formula::negation(Formula::atom(i));
      term = term ? Formula::conjunction(*term, literal) : literal;
    }
    dnf = dnf ? Formula::disjunction(*dnf, *term) : *term;
  });
  return *dnf;
}

}  // namespace esbc
