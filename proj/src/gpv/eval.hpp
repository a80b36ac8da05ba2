#pragma once

#include "gpv/formula.hpp"
#include "gpv/graph.hpp"
#include "gpv/universe.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gpv {

// Assignment of free variables for satisfaction checking: node/edge variables
// map to identifiers of the graph, label variables to values.
struct Assignment {
  std::map<std::string, std::string> node_edge;
  std::map<std::string, ListValue> labels;
};

// Evaluates formulas on one host graph. existsV/existsE quantifiers range
// over the graph; existsL ranges over the universe's list domain. Division by
// zero or ill-sorted operands make the enclosing atom false (recorded as a
// diagnostic); a residual incon/outcon term or unbound variable is an error.
class Evaluator {
 public:
  Evaluator(const HostGraph& g, const LabelUniverse& u) : g_(g), u_(u) {}

  bool eval(const FormulaPtr& f);
  bool eval(const FormulaPtr& f, const Assignment& a);

  const std::vector<std::string>& diagnostics() const { return diags_; }

 private:
  struct Value {
    enum K { NodeV, EdgeV, ListV, MarkV, ErrorV } k = ErrorV;
    int idx = -1;
    ListValue list;
    Mark mark = Mark::None;
  };

  const HostGraph& g_;
  const LabelUniverse& u_;
  std::vector<std::pair<const std::string*, Value>> env_;
  std::vector<std::string> diags_;

  const Value* lookup(const std::string& name) const;
  Value term(const TermPtr& t, bool soft);
  bool formula(const FormulaPtr& f);
  bool exists_label(const FormulaPtr& f);
  void scan_candidates(const FormulaPtr& body, const std::string& var,
                       std::vector<ListValue>& out, bool& determined);
};

bool eval_on(const HostGraph& g, const FormulaPtr& f, const LabelUniverse& u);

// Evaluates a rule-label expression against a host graph: variables from the
// label assignment, node identifiers (for indeg/outdeg) through `node_map`.
// nullopt on division by zero or ill-sorted operands.
std::optional<ListValue> eval_label_term(const TermPtr& t, const HostGraph& g,
                                         const std::map<std::string, ListValue>& labels,
                                         const std::map<std::string, int>& node_map);

}  // namespace gpv
