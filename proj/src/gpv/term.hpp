#pragma once

#include "gpv/list_value.hpp"
#include "gpv/mark.hpp"
#include "gpv/universe.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace gpv {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Terms cover both GP 2 list expressions (rule labels, Fig. 1 grammar) and the
// term language of first-order formulas (Fig. 6), including node/edge
// identifiers of a specific rule graph ("conditions over a graph") and the
// auxiliary degree terms incon/outcon used between Val and Adj.
enum class TermKind {
  Empty,       // empty list
  IntConst,    // num
  StrConst,    // text
  Var,         // text = name, sort
  NodeConst,   // text = node identifier
  EdgeConst,   // text = edge identifier
  MarkConst,   // mark
  ListConcat,  // args[0] : args[1]
  StrConcat,   // args[0] . args[1]
  Add, Sub, Mul, Div,
  Indeg, Outdeg,   // arg: node term
  Length,          // arg: label term
  Source, Target,  // arg: edge term
  LabelV, LabelE,  // arg: node/edge term
  MarkV, MarkE,    // arg: node/edge term
  InCon, OutCon,   // arg: node constant (auxiliary, eliminated by Adj)
};

struct Term {
  TermKind kind;
  long long num = 0;
  std::string text;
  Sort sort = Sort::List;   // for Var
  Mark mark = Mark::None;   // for MarkConst
  std::vector<TermPtr> args;
};

// Value category of a term, used for sort checking and parser disambiguation.
enum class TermCat { NodeT, EdgeT, ListT, MarkT };
TermCat term_cat(const TermPtr& t);

TermPtr t_empty();
TermPtr t_int(long long v);
TermPtr t_str(const std::string& s);
TermPtr t_var(const std::string& name, Sort sort);
TermPtr t_node(const std::string& id);
TermPtr t_edge(const std::string& id);
TermPtr t_mark(Mark m);
TermPtr t_bin(TermKind k, TermPtr a, TermPtr b);
TermPtr t_fn(TermKind k, TermPtr a);
TermPtr t_list(const ListValue& v);  // ground list as concat of atoms

bool equal_terms(const TermPtr& a, const TermPtr& b);
std::string print_term(const TermPtr& t);

bool term_has_var(const TermPtr& t, const std::string& name);
void term_vars(const TermPtr& t, std::set<std::string>& out);
bool term_contains(const TermPtr& t, const TermPtr& pattern);

// Replace variables / subterms. Both return the original pointer when nothing
// changes, so sharing is preserved.
TermPtr term_subst_var(const TermPtr& t, const std::string& name, const TermPtr& repl);
TermPtr term_rewrite(const TermPtr& t, const TermPtr& pattern, const TermPtr& repl);

// Evaluate a graph-independent term to a list value. Returns false if the
// term mentions variables, graph functions, or divides by zero.
bool term_ground_value(const TermPtr& t, ListValue& out);

}  // namespace gpv
