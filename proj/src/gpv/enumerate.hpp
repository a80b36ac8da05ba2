#pragma once

#include "gpv/eval.hpp"
#include "gpv/formula.hpp"
#include "gpv/graph.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gpv {

// Bounds for host-graph enumeration. Graphs are generated with node
// configurations in non-decreasing order (one representative per isomorphism
// class suffices for closed formulas), edges as multisets over all
// source/target/label/mark combinations.
struct GraphEnumConfig {
  int max_nodes = 3;
  int max_edges = 3;
  std::vector<ListValue> labels = {{Atom::of_int(0)}};
  std::vector<Mark> node_marks = {Mark::None, Mark::Red, Mark::Green, Mark::Blue, Mark::Grey};
  std::vector<Mark> edge_marks = {Mark::None, Mark::Red, Mark::Green, Mark::Blue,
                                  Mark::Dashed};
  bool vary_roots = true;

  std::string describe() const;
};

// Calls fn for every host graph within the bounds, in a fixed deterministic
// order. fn returns false to stop early. Returns the number of graphs seen.
long long for_each_host(const GraphEnumConfig& cfg,
                        const std::function<bool(const HostGraph&)>& fn);

struct ImpliesVerdict {
  bool no_counterexample = true;
  std::optional<HostGraph> counterexample;
  long long graphs_checked = 0;
  std::string bound_description;
};

// Searches for a host graph satisfying c but not d. Sound for refutation,
// incomplete for validity: "no counterexample" is relative to the bound.
ImpliesVerdict implies_bounded(const FormulaPtr& c, const FormulaPtr& d,
                               const GraphEnumConfig& cfg, const LabelUniverse& u);

}  // namespace gpv
