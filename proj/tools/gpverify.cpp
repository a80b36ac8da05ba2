// Command-line front end: run programs, construct Slp/Wlp/Success/Fail
// formulas, classify programs, and check proof scripts.

#include "gpv/calculus.hpp"
#include "gpv/diagnostics.hpp"
#include "gpv/enumerate.hpp"
#include "gpv/formula_parser.hpp"
#include "gpv/graph_io.hpp"
#include "gpv/interp.hpp"
#include "gpv/proof.hpp"
#include "gpv/slp.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) gpv::fail(gpv::Err::Syntax, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

gpv::RuleSchema load_single_rule(const std::string& path, const std::string& name) {
  gpv::Program p;
  std::string text = read_file(path);
  // A .gpr file holds rule declarations only; wrap them for the parser.
  gpv::Program prog = gpv::parse_program(text + "\nMain = skip\n");
  if (!name.empty()) return prog.rule(name);
  if (prog.rules.size() != 1)
    gpv::fail(gpv::Err::Syntax, path + " declares " + std::to_string(prog.rules.size()) +
                                    " rules; pick one with --rule");
  return prog.rules[0];
}

struct UniverseFlags {
  long long int_lo = -2, int_hi = 3;
  std::string chars = "ab";
  int max_string_len = 1;
  int max_list_len = 2;
  int max_nodes = 3;
  int max_edges = 3;

  gpv::LabelUniverse universe() const {
    gpv::LabelUniverse u;
    u.int_lo = int_lo;
    u.int_hi = int_hi;
    u.chars = chars;
    u.max_string_len = max_string_len;
    u.max_list_len = max_list_len;
    return u;
  }

  gpv::GraphEnumConfig bound() const {
    gpv::GraphEnumConfig cfg;
    cfg.max_nodes = max_nodes;
    cfg.max_edges = max_edges;
    return cfg;
  }

  void attach(CLI::App* app) {
    app->add_option("--int-lo", int_lo, "label universe: smallest integer");
    app->add_option("--int-hi", int_hi, "label universe: largest integer");
    app->add_option("--chars", chars, "label universe: character set");
    app->add_option("--max-string-len", max_string_len, "label universe: string length");
    app->add_option("--max-list-len", max_list_len, "label universe: list length");
    app->add_option("--max-nodes", max_nodes, "counterexample search: node bound");
    app->add_option("--max-edges", max_edges, "counterexample search: edge bound");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification toolkit for GP 2 graph programs"};
  app.require_subcommand(1);

  // run ------------------------------------------------------------------
  std::string run_prog, run_graph;
  long long run_fuel = gpv::kDefaultFuel;
  bool run_all = false;
  auto* run = app.add_subcommand("run", "execute a program on a host graph");
  run->add_option("program", run_prog, "program (.gpp)")->required();
  run->add_option("graph", run_graph, "input host graph (.graph)")->required();
  run->add_option("--fuel", run_fuel, "rule-application budget");
  run->add_flag("--all", run_all, "print every result (default: first)");

  // slp / wlp --------------------------------------------------------------
  std::string slp_rule_path, slp_formula_path, slp_program_path, slp_rule_name;
  auto* slp = app.add_subcommand("slp", "strongest liberal postcondition");
  slp->add_option("rule", slp_rule_path, "rule file (.gpr)");
  slp->add_option("pre", slp_formula_path, "precondition (.fol)")->required();
  slp->add_option("--program", slp_program_path, "loop-free program (.gpp) instead of a rule");
  slp->add_option("--rule", slp_rule_name, "rule name when the file declares several");

  std::string wlp_rule_path, wlp_formula_path, wlp_rule_name, wlp_program_path;
  auto* wlp = app.add_subcommand("wlp", "weakest liberal precondition");
  wlp->add_option("rule", wlp_rule_path, "rule file (.gpr)");
  wlp->add_option("post", wlp_formula_path, "postcondition (.fol)")->required();
  wlp->add_option("--program", wlp_program_path, "loop-free program (.gpp) instead of a rule");
  wlp->add_option("--rule", wlp_rule_name, "rule name when the file declares several");

  // classify / success / fail ----------------------------------------------
  std::string cls_prog;
  auto* cls = app.add_subcommand("classify", "print command classification flags");
  cls->add_option("program", cls_prog, "program (.gpp)")->required();

  std::string succ_prog;
  auto* succ = app.add_subcommand("success", "Success formula of a loop-free program");
  succ->add_option("program", succ_prog, "program (.gpp)")->required();

  std::string fail_prog;
  auto* failc = app.add_subcommand("fail", "Fail formula of an iteration command");
  failc->add_option("program", fail_prog, "program (.gpp)")->required();

  // check -------------------------------------------------------------------
  std::string check_path;
  UniverseFlags check_flags;
  auto* check = app.add_subcommand("check", "check a proof script (.gps)");
  check->add_option("proof", check_path, "proof script")->required();
  check_flags.attach(check);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      gpv::Program p = gpv::parse_program(read_file(run_prog));
      gpv::HostGraph g = gpv::parse_host_graph(read_file(run_graph));
      gpv::ExecOutcome out = gpv::execute(p, g, run_fuel);
      size_t shown = run_all ? out.results.size() : std::min<size_t>(1, out.results.size());
      for (size_t i = 0; i < shown; ++i) {
        if (i) std::cout << "--\n";
        std::cout << gpv::print_host_graph(out.results[i]);
      }
      if (out.results.size() > shown)
        std::cout << "// " << out.results.size() - shown << " further results (use --all)\n";
      if (out.fail) std::cout << "FAIL\n";
      if (out.diverged) std::cout << "DIVERGED\n";
      return 0;
    }
    if (*slp) {
      gpv::FormulaPtr pre = gpv::parse_formula(read_file(slp_formula_path));
      gpv::FormulaPtr result;
      if (!slp_program_path.empty()) {
        gpv::Program p = gpv::parse_program(read_file(slp_program_path));
        result = gpv::slp_lf(pre, p.main, p);
      } else {
        if (slp_rule_path.empty())
          gpv::fail(gpv::Err::Syntax, "need a rule file or --program");
        result = gpv::slp_rule(pre, load_single_rule(slp_rule_path, slp_rule_name));
      }
      std::cout << gpv::print_formula(result) << "\n";
      return 0;
    }
    if (*wlp) {
      gpv::FormulaPtr post = gpv::parse_formula(read_file(wlp_formula_path));
      gpv::FormulaPtr result;
      if (!wlp_program_path.empty()) {
        gpv::Program p = gpv::parse_program(read_file(wlp_program_path));
        result = gpv::wlp_lf(post, p.main, p);
      } else {
        if (wlp_rule_path.empty())
          gpv::fail(gpv::Err::Syntax, "need a rule file or --program");
        result = gpv::wlp_rule(post, load_single_rule(wlp_rule_path, wlp_rule_name));
      }
      std::cout << gpv::print_formula(result) << "\n";
      return 0;
    }
    if (*cls) {
      gpv::Program p = gpv::parse_program(read_file(cls_prog));
      std::cout << gpv::print_classification(p.main, p);
      return 0;
    }
    if (*succ) {
      gpv::Program p = gpv::parse_program(read_file(succ_prog));
      std::cout << gpv::print_formula(gpv::success_lf(p.main, p)) << "\n";
      return 0;
    }
    if (*failc) {
      gpv::Program p = gpv::parse_program(read_file(fail_prog));
      std::cout << gpv::print_formula(gpv::fail_iteration(p.main, p)) << "\n";
      return 0;
    }
    if (*check) {
      gpv::ProofScript script = gpv::load_proof_script(check_path);
      gpv::CheckReport report =
          gpv::check_proof(script, check_flags.bound(), check_flags.universe());
      for (const auto& n : report.nodes)
        std::cout << n.path << "  [" << n.rule << "]  " << n.status << "\n";
      for (const auto& ob : report.obligations) {
        std::cout << "obligation " << ob.at << ": ";
        switch (ob.status) {
          case gpv::Obligation::Trivial: std::cout << "discharged (syntactic)\n"; break;
          case gpv::Obligation::Bounded:
            std::cout << "discharged (no counterexample; " << ob.verdict.bound_description
                      << ")\n";
            break;
          case gpv::Obligation::Failed:
            std::cout << "FAILED; counterexample:\n"
                      << gpv::print_host_graph(*ob.verdict.counterexample);
            break;
        }
      }
      std::cout << "verdict: " << report.summary() << "\n";
      switch (report.verdict) {
        case gpv::CheckReport::Checked: return 0;
        case gpv::CheckReport::CheckedBounded: return 2;
        case gpv::CheckReport::Rejected: return 1;
      }
    }
  } catch (const gpv::GpvError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
