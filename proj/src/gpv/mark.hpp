#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gpv {

// GP 2 marks. `grey` is node-only, `dashed` is edge-only, and `any` is a
// left-hand-side wildcard that never occurs in a host graph.
enum class Mark { None, Red, Green, Blue, Grey, Dashed, Any };

const char* mark_name(Mark m);
std::optional<Mark> mark_from_name(const std::string& s);

bool is_node_mark(Mark m);        // member of M_V
bool is_edge_mark(Mark m);        // member of M_E
bool is_rule_node_mark(Mark m);   // M_V + any
bool is_rule_edge_mark(Mark m);   // M_E + any

// Instantiation targets for `any` (excludes none).
const std::vector<Mark>& any_node_marks();
const std::vector<Mark>& any_edge_marks();

}  // namespace gpv
