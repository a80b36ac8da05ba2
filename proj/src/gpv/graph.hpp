#pragma once

#include "gpv/list_value.hpp"
#include "gpv/mark.hpp"
#include "gpv/term.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gpv {

// Rule graph: labels are expressions, node labels/marks/roots may be undefined
// (interface nodes). Total rule graphs have every function defined.
struct RuleNode {
  std::string id;
  TermPtr label;                 // null = undefined
  std::optional<Mark> mark;      // undefined iff label undefined
  std::optional<bool> rooted;
};

struct RuleEdge {
  std::string id;
  std::string src, tgt;
  TermPtr label;
  Mark mark = Mark::None;
};

struct RuleGraph {
  std::vector<RuleNode> nodes;
  std::vector<RuleEdge> edges;

  const RuleNode* node(const std::string& id) const;
  const RuleEdge* edge(const std::string& id) const;
  bool has_node(const std::string& id) const { return node(id) != nullptr; }
  bool has_edge(const std::string& id) const { return edge(id) != nullptr; }
  int indeg(const std::string& node_id) const;
  int outdeg(const std::string& node_id) const;
  bool is_total() const;
};

// Host graph: totally labelled, constant labels, concrete marks. Nodes and
// edges are indexed; identifiers are kept for conditions over graphs.
struct HostNode {
  std::string id;
  ListValue label;
  Mark mark = Mark::None;
  bool rooted = false;
};

struct HostEdge {
  std::string id;
  int src = -1, tgt = -1;
  ListValue label;
  Mark mark = Mark::None;
};

class HostGraph {
 public:
  std::vector<HostNode> nodes;
  std::vector<HostEdge> edges;

  void finalize();  // rebuild id maps, adjacency, degrees
  int node_index(const std::string& id) const;
  int edge_index(const std::string& id) const;
  int indeg(int node) const { return (int)in_[node].size(); }
  int outdeg(int node) const { return (int)out_[node].size(); }
  const std::vector<int>& out_edges(int node) const { return out_[node]; }
  const std::vector<int>& in_edges(int node) const { return in_[node]; }

  // Deterministic fresh identifier: base with primes appended until unused.
  std::string fresh_node_id(const std::string& base) const;
  std::string fresh_edge_id(const std::string& base) const;

 private:
  std::map<std::string, int> node_idx_, edge_idx_;
  std::vector<std::vector<int>> out_, in_;
};

// Injective structure map between host graphs or from a rule graph's shape.
struct Premorphism {
  std::map<std::string, std::string> node_map;
  std::map<std::string, std::string> edge_map;
};

// Host-graph validation (Def. 2.2): totality, constant labels, no wildcard or
// misplaced marks. Returns diagnostics, empty = valid.
std::vector<std::string> validate_host_graph(const RuleGraph& g);

// Conversion; fails when validate_host_graph reports problems.
HostGraph to_host_graph(const RuleGraph& g);
RuleGraph to_rule_graph(const HostGraph& g);

bool equal_hosts(const HostGraph& a, const HostGraph& b);  // identical up to ids order

// Label/mark/root-preserving isomorphism; deterministic for fixed inputs.
std::optional<Premorphism> isomorphic(const HostGraph& a, const HostGraph& b);

// Replacement graph rho_m(g): image items renamed to the rule graph's
// identifiers, colliding outside items freshened with primes (Def. 3.3).
// `m` maps L identifiers to host identifiers and must be injective.
HostGraph replacement_graph(const HostGraph& g, const Premorphism& m);

}  // namespace gpv
