#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "esbc/esbc.hpp"

namespace support {

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(ESBC_DATA_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::shared_ptr<const esbc::EpistemicSpace> e1() {
  return std::make_shared<const esbc::EpistemicSpace>(esbc::load_space(read_data("e1.json")));
}

inline std::shared_ptr<const esbc::EpistemicSpace> e2() {
  return std::make_shared<const esbc::EpistemicSpace>(esbc::load_space(read_data("e2.json")));
}

// Model set from bitstrings, e.g. ms(sig, {"11", "01"}).
inline esbc::ModelSet ms(const esbc::Signature& sig, std::initializer_list<const char*> bits) {
  esbc::ModelSet m;
  for (const char* b : bits) m = m.with(sig.parse_bitstring(b));
  return m;
}

inline esbc::ModelSet mods(const esbc::EpistemicSpace& space, const std::string& formula) {
  return esbc::models_of(esbc::parse_formula(formula, space.signature()), space.signature());
}

// Example 2: maxichoice revision with 11,10,01,00 for
// the singleton states and 11,01,10,00 for psi_bot.
inline esbc::OperatorTable example2_revision() {
  auto space = e2();
  return esbc::build_maxichoice_revision(space, esbc::load_orders(read_data("ex2_orders.json"), *space));
}

inline esbc::OperatorTable example1_contraction() {
  auto space = e1();
  return esbc::build_linear_contraction(space, esbc::parse_order("1,0", space->signature()));
}

inline std::shared_ptr<const esbc::EpistemicSpace> all_sets_space(std::vector<std::string> atoms) {
  esbc::Signature sig(std::move(atoms));
  std::vector<esbc::ModelSet> family;
  for (esbc::ModelSet::Bits m = 0; m < sig.model_set_count(); ++m) family.push_back(esbc::ModelSet(m));
  return std::make_shared<const esbc::EpistemicSpace>(esbc::space_from_family(sig, family));
}

}  // namespace support
