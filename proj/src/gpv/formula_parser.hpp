#pragma once

#include "gpv/formula.hpp"
#include "gpv/graph.hpp"
#include "gpv/lexer.hpp"

#include <map>
#include <string>

namespace gpv {

// Context for resolving bare identifiers while parsing. When `graph` is
// given, identifiers naming its nodes/edges parse as constants (conditions
// over a graph). `vars` supplies declared label variables with their types
// (rule parameters). Everything else defaults per position: node/edge
// positions yield constants, label positions yield list variables.
struct ParseContext {
  const RuleGraph* graph = nullptr;
  std::map<std::string, Sort> vars;
};

FormulaPtr parse_formula(const std::string& text);
FormulaPtr parse_formula(const std::string& text, const ParseContext& ctx);
FormulaPtr parse_formula(Lexer& lx, const ParseContext& ctx);

// Label expressions for rule/host graph bodies (Fig. 1 grammar).
TermPtr parse_label_expr(Lexer& lx, const ParseContext& ctx);

// Rule-schema application conditions (Fig. 4 grammar). Shares the formula
// AST; `#` separates list and mark in the edge predicate.
FormulaPtr parse_schema_condition(Lexer& lx, const ParseContext& ctx);

}  // namespace gpv
