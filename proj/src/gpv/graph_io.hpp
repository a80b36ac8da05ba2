#pragma once

#include "gpv/graph.hpp"
#include "gpv/lexer.hpp"

#include <map>
#include <string>

namespace gpv {

// Line-oriented graph text format:
//   node <id> <list> <mark> [root]
//   edge <id> <src> <tgt> <list> <mark>
// `empty` denotes the empty list; marks are spelled none/red/green/blue/grey/
// dashed/any. Rule-graph bodies allow expressions over declared variables.

RuleGraph parse_rule_graph_body(Lexer& lx, const std::map<std::string, Sort>& vars);

HostGraph parse_host_graph(const std::string& text);
std::string print_host_graph(const HostGraph& g);

std::string print_rule_graph(const RuleGraph& g);

}  // namespace gpv
