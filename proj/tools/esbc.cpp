// esbc: command-line front end for the epistemic space library.
//
// Exit codes: 0 ok, 1 postulate violations or audit falsifications,
// 2 input error, 3 construction needs a missing state, 4 search budget spent.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "esbc/esbc.hpp"

namespace {

using esbc::Json;

constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kInputError = 2;
constexpr int kMissingState = 3;
constexpr int kBudget = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw esbc::FormatError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw esbc::FormatError("cannot write '" + path + "'");
  out << text;
}

std::shared_ptr<const esbc::EpistemicSpace> load_space_file(const std::string& path) {
  return std::make_shared<const esbc::EpistemicSpace>(esbc::load_space(read_file(path)));
}

std::string closure_text(const esbc::ClosureCheck& c, const esbc::EpistemicSpace& space) {
  if (c.holds) return "holds";
  std::string out = "fails:";
  if (c.state) out += " state " + space.id(*c.state) + ",";
  return out + " " + space.signature().format(*c.missing) + " unrealized";
}

struct Options {
  bool json = false;

  std::string space_file;
  std::string table_file;
  std::string output;

  std::string build_kind;
  std::string order;
  std::string orders_file;

  std::string verify_kind;
  bool collect_all = false;
  bool parallel = false;

  std::string state;
  std::string formula;

  std::size_t atoms = 1;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  std::uint64_t budget = esbc::SearchConfig{}.node_budget;

  std::string count_kind;
  std::optional<std::uint64_t> cap;
  bool naive = false;
};

int cmd_check(const Options& o) {
  auto space = load_space_file(o.space_file);
  auto r = esbc::realizability_report(*space);
  if (o.json) {
    std::cout << esbc::realizability_json(r, *space).dump() << "\n";
    return kOk;
  }
  const auto& sig = space->signature();
  std::cout << "ZC: " << closure_text(r.zc, *space) << "\n";
  std::cout << "ZR1: "
            << (r.zr1.holds ? std::string("holds")
                            : "fails: " + sig.format(esbc::ModelSet::singleton(*r.zr1.world)) + " unrealized")
            << "\n";
  std::cout << "ZR2: " << closure_text(r.zr2, *space) << "\n";
  std::cout << "Unbiased: " << closure_text(r.unbiased, *space) << "\n";
  std::cout << "contraction: ";
  if (r.contraction_realizable) {
    std::cout << "realizable\n";
  } else {
    std::cout << "not realizable (witness: " << space->id(*r.zc.state) << ", " << sig.format(*r.zc.missing) << ")\n";
  }
  std::cout << "revision: ";
  if (r.revision_realizable) {
    std::cout << "realizable\n";
  } else if (!r.zr1.holds) {
    std::cout << "not realizable (witness: " << sig.format(esbc::ModelSet::singleton(*r.zr1.world))
              << " unrealized)\n";
  } else {
    std::cout << "not realizable (witness: " << sig.format(*r.zr2.missing) << " unrealized)\n";
  }
  std::cout << "full-meet revision: ";
  if (r.full_meet_revision_exists) {
    std::cout << "yes\n";
  } else {
    std::cout << "no (witness: " << sig.format(*r.unbiased.missing) << " unrealized)\n";
  }
  return kOk;
}

int cmd_build(const Options& o) {
  auto space = load_space_file(o.space_file);
  const auto& sig = space->signature();
  const std::string& k = o.build_kind;
  auto orders = [&]() {
    if (!o.orders_file.empty()) return esbc::load_orders(read_file(o.orders_file), *space);
    if (!o.order.empty()) return std::vector<esbc::LinearOrder>(space->size(), esbc::parse_order(o.order, sig));
    throw esbc::FormatError("--kind " + k + " needs --order or --orders-file");
  };
  auto single_order = [&]() {
    if (o.order.empty()) throw esbc::FormatError("--kind " + k + " needs --order");
    return esbc::parse_order(o.order, sig);
  };
  std::optional<esbc::OperatorTable> table;
  if (k == "fm-contraction") {
    table = esbc::build_full_meet_contraction(space);
  } else if (k == "mc-contraction") {
    table = esbc::build_maxichoice_contraction(space, orders());
  } else if (k == "lin-contraction") {
    table = esbc::build_linear_contraction(space, single_order());
  } else if (k == "fm-revision") {
    table = esbc::build_full_meet_revision(space);
  } else if (k == "mc-revision") {
    table = esbc::build_maxichoice_revision(space, orders());
  } else {
    table = esbc::build_linear_revision(space, single_order());
  }
  write_output(o.output, esbc::table_to_json(*table).dump(2) + "\n");
  return kOk;
}

int cmd_verify(const Options& o) {
  esbc::OperatorTable table = esbc::load_table(read_file(o.table_file));
  esbc::VerifyOptions opts;
  opts.collect_all = o.collect_all;
  opts.parallel = o.parallel;
  esbc::VerifyReport report;
  if (o.verify_kind.empty()) {
    report = esbc::verify(table, opts);
  } else if (esbc::parse_change_kind(o.verify_kind) == esbc::ChangeKind::revision) {
    report = esbc::verify_revision(table, opts);
  } else {
    report = esbc::verify_contraction(table, opts);
  }
  if (o.json) {
    std::cout << esbc::verify_report_json(report, table.space()).dump() << "\n";
  } else {
    std::cout << "kind: " << esbc::to_string(report.kind) << "\n";
    std::cout << "plan: " << report.plan.describe() << "\n";
    if (report.clean()) {
      std::cout << "clean: all " << (report.kind == esbc::ChangeKind::revision ? "R1-R6" : "C1-C7") << " hold\n";
    }
    for (const auto& v : report.violations) std::cout << esbc::describe(v, table.space()) << "\n";
  }
  return report.clean() ? kOk : kViolations;
}

int cmd_apply(const Options& o) {
  esbc::OperatorTable table = esbc::load_table(read_file(o.table_file));
  esbc::Formula f = esbc::parse_formula(o.formula, table.space().signature());
  const std::string& target = table.space().id(esbc::apply(table, o.state, f));
  if (o.json) {
    std::cout << Json{{"state", o.state}, {"formula", o.formula}, {"result", target}}.dump() << "\n";
  } else {
    std::cout << target << "\n";
  }
  return kOk;
}

int cmd_export_dot(const Options& o) {
  esbc::OperatorTable table = esbc::load_table(read_file(o.table_file));
  write_output(o.output, esbc::to_dot(table));
  return kOk;
}

int cmd_enumerate(const Options& o) {
  auto space = load_space_file(o.space_file);
  esbc::ChangeKind kind = esbc::parse_change_kind(o.count_kind);
  esbc::CountResult r;
  if (o.naive) {
    r = esbc::count_operators_naive(space, kind);
  } else {
    esbc::SearchConfig config;
    config.kind = kind;
    config.node_budget = o.budget;
    config.count_cap = o.cap;
    config.parallel = o.parallel;
    r = esbc::count_operators(*space, config);
  }
  if (o.json) {
    std::cout << Json{{"kind", esbc::to_string(kind)}, {"count", r.count}, {"exact", r.exact},
                      {"nodes", r.nodes_visited}}
                     .dump()
              << "\n";
  } else {
    std::cout << esbc::to_string(kind) << " operators: " << r.count << (r.exact ? " (exact)" : " (lower bound)")
              << ", " << r.nodes_visited << " nodes\n";
  }
  return kOk;
}

int cmd_audit(const Options& o) {
  esbc::Signature sig = o.atoms == 1 ? esbc::Signature({"a"}) : esbc::Signature({"a", "b"});
  auto theorems = esbc::audit_theorems(o.atoms, o.samples, o.seed, o.budget);
  auto equivalences = esbc::audit_equivalences(o.atoms, o.samples, o.seed);
  std::optional<esbc::AsymmetryReport> counts;
  if (o.atoms == 1) counts = esbc::find_count_asymmetry(1, o.budget);

  std::size_t falsifications = theorems.falsifications() + equivalences.falsifications();
  if (counts) {
    for (const auto& c : counts->families) falsifications += c.strategies_agree() ? 0 : 1;
  }
  if (o.json) {
    for (const auto& r : theorems.records) std::cout << esbc::theorem_record_json(r, sig).dump() << "\n";
    for (const auto& r : equivalences.records) std::cout << esbc::equivalence_record_json(r, sig).dump() << "\n";
    if (counts) {
      for (const auto& c : counts->families) std::cout << esbc::family_count_json(c, sig).dump() << "\n";
    }
    std::cout << Json{{"audit", "summary"},
                      {"atoms", o.atoms},
                      {"seed", o.seed},
                      {"spaces", theorems.records.size()},
                      {"agreements", theorems.agreements},
                      {"comparisons", theorems.comparisons},
                      {"falsifications", falsifications}}
                     .dump()
              << "\n";
  } else {
    std::cout << "theorems: " << theorems.records.size() << " spaces, " << theorems.agreements << "/"
              << theorems.comparisons << " agreements, " << theorems.falsifications() << " falsifications\n";
    std::cout << "equivalences: " << equivalences.records.size() << " spaces, " << equivalences.falsifications()
              << " falsifications\n";
    if (counts) {
      std::cout << "counts (contraction, revision) per family:\n";
      for (const auto& c : counts->families) {
        std::string members;
        for (auto m : c.family.members) members += (members.empty() ? "" : " ") + sig.format(m);
        std::cout << "  " << members << ": (" << c.contraction.count << ", " << c.revision.count << ")"
                  << (c.strategies_agree() ? "" : " strategies disagree") << "\n";
      }
      std::cout << "families with more contraction operators: " << counts->more_contraction.size() << "\n";
      std::cout << "families with more revision operators: " << counts->more_revision.size() << "\n";
    }
    std::cout << "falsifications: " << falsifications << "\n";
  }
  return falsifications == 0 ? kOk : kViolations;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Belief change operators on finite epistemic spaces"};
  app.require_subcommand(1, 1);
  Options o;
  app.add_flag("--json", o.json, "Machine-readable output");

  auto* check = app.add_subcommand("check", "Report ZC, ZR1, ZR2 and Unbiased for a space");
  check->add_option("space", o.space_file, "Space document")->required();

  auto* build = app.add_subcommand("build", "Build a full meet, maxichoice or linear operator table");
  build->add_option("space", o.space_file, "Space document")->required();
  build->add_option("--kind", o.build_kind, "Construction")
      ->required()
      ->check(CLI::IsMember({"fm-contraction", "mc-contraction", "lin-contraction", "fm-revision", "mc-revision",
                             "lin-revision"}));
  build->add_option("--order", o.order, "Linear order as comma-separated bitstrings, most preferred first");
  build->add_option("--orders-file", o.orders_file, "Per-state orders document");
  build->add_option("-o,--output", o.output, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Check an operator table against its postulates");
  verify->add_option("table", o.table_file, "Table document")->required();
  verify->add_option("--kind", o.verify_kind, "Required operator kind")
      ->check(CLI::IsMember({"revision", "contraction"}));
  verify->add_flag("--all", o.collect_all, "Report every violated instance");
  verify->add_flag("--parallel", o.parallel, "Check states concurrently");

  auto* apply = app.add_subcommand("apply", "Apply an operator to a state and a formula");
  apply->add_option("table", o.table_file, "Table document")->required();
  apply->add_option("--state", o.state, "State id")->required();
  apply->add_option("--formula", o.formula, "Formula")->required();

  auto* audit = app.add_subcommand("audit", "Audit realizability and constructions on generated spaces");
  audit->add_option("--atoms", o.atoms, "Number of atoms")->check(CLI::IsMember({1, 2}));
  audit->add_option("--samples", o.samples, "Sampled families for two atoms");
  audit->add_option("--seed", o.seed, "Sampling seed");
  audit->add_option("--budget", o.budget, "Search node budget per space")->check(CLI::PositiveNumber);

  auto* dot = app.add_subcommand("export-dot", "Write an operator table as a Graphviz graph");
  dot->add_option("table", o.table_file, "Table document")->required();
  dot->add_option("-o,--output", o.output, "Output file (default stdout)");

  auto* enumerate = app.add_subcommand("enumerate", "Count the AGM operators of a kind on a space");
  enumerate->add_option("space", o.space_file, "Space document")->required();
  enumerate->add_option("--kind", o.count_kind, "Operator kind")
      ->required()
      ->check(CLI::IsMember({"revision", "contraction"}));
  enumerate->add_option("--budget", o.budget, "Search node budget")->check(CLI::PositiveNumber);
  enumerate->add_option("--cap", o.cap, "Stop counting at this many operators");
  enumerate->add_flag("--naive", o.naive, "Count by brute force over all tables");
  enumerate->add_flag("--parallel", o.parallel, "Search states concurrently");

  for (auto* sub : {check, build, verify, apply, audit, dot, enumerate}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*check) return cmd_check(o);
    if (*build) return cmd_build(o);
    if (*verify) return cmd_verify(o);
    if (*apply) return cmd_apply(o);
    if (*audit) return cmd_audit(o);
    if (*dot) return cmd_export_dot(o);
    return cmd_enumerate(o);
  } catch (const esbc::MissingState& e) {
    std::cerr << "missing state: " << e.what() << "\n";
    return kMissingState;
  } catch (const esbc::BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const esbc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
