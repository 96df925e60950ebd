#pragma once

// Graphviz export of an operator table: states as nodes, one edge per
// (source, target) pair carrying the inputs that lead there.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "esbc/formula.hpp"
#include "esbc/operators.hpp"

namespace esbc {

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

// Self-loops are labeled "*"; other edges list the canonical formulas of
// their inputs, joined by ", ".
inline std::string to_dot(const OperatorTable& table) {
  const auto& space = table.space();
  const auto& sig = space.signature();
  std::string out = "digraph " + std::string(to_string(table.kind())) + " {\n";
  for (const auto& s : space.states()) {
    out += "  " + detail::dot_quote(s.id) + " [label=" + detail::dot_quote(s.id + " " + sig.format(s.beliefs)) + "];\n";
  }
  for (StateIndex s = 0; s < space.size(); ++s) {
    std::map<StateIndex, std::vector<ModelSet>> edges;
    for (ModelSet::Bits m = 0; m < table.inputs(); ++m) edges[table.at(s, ModelSet(m))].push_back(ModelSet(m));
    for (const auto& [t, inputs] : edges) {
      std::string label;
      if (t == s) {
        label = "*";
      } else {
        for (auto m : inputs) {
          if (!label.empty()) label += ", ";
          label += to_string(formula_with_models(m, sig), sig);
        }
      }
      out += "  " + detail::dot_quote(space.id(s)) + " -> " + detail::dot_quote(space.id(t)) +
             " [label=" + detail::dot_quote(label) + "];\n";
    }
  }
  return out + "}\n";
}

}  // namespace esbc
