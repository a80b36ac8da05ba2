#pragma once

#include "gpv/term.hpp"

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace gpv {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class FKind { True, False, Not, And, Or, Exists, Cmp, TypePred, RootPred, EdgePred };
enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };
enum class QKind { V, E, L };  // node / edge / label quantifier

// First-order formulas per the Fig. 6 grammar, with n-ary conjunction and
// disjunction. Universal quantifiers are desugared to ~exists~ at parse time.
struct Formula {
  FKind kind = FKind::True;
  std::vector<FormulaPtr> kids;  // Not: 1, And/Or: n, Exists: body

  // Exists
  QKind q = QKind::V;
  std::string var;

  // Cmp / TypePred / RootPred / EdgePred payloads
  CmpOp op = CmpOp::Eq;
  TermPtr lhs, rhs;        // Cmp: both; TypePred/RootPred: lhs; EdgePred: endpoints
  Sort tsort = Sort::Int;  // TypePred
  TermPtr elabel;          // EdgePred optional label
  bool has_emark = false;  // EdgePred optional mark
  Mark emark = Mark::None;
};

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(std::vector<FormulaPtr> kids);  // empty -> true, singleton -> kid
FormulaPtr f_or(std::vector<FormulaPtr> kids);   // empty -> false, singleton -> kid
FormulaPtr f_and2(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or2(FormulaPtr a, FormulaPtr b);
FormulaPtr f_exists(QKind q, const std::string& var, FormulaPtr body);
FormulaPtr f_forall(QKind q, const std::string& var, FormulaPtr body);  // ~exists ~
FormulaPtr f_cmp(CmpOp op, TermPtr lhs, TermPtr rhs);
FormulaPtr f_type(Sort s, TermPtr t);
FormulaPtr f_root(TermPtr t);
FormulaPtr f_edge(TermPtr src, TermPtr tgt, TermPtr label, bool has_mark, Mark mark);

Sort qkind_sort(QKind q);

bool equal_formulas(const FormulaPtr& a, const FormulaPtr& b);
std::string print_formula(const FormulaPtr& f);

// Variable bookkeeping -------------------------------------------------------

// Free variables by name -> sort (node/edge vars from quantifier context, the
// rest label-sorted as recorded in the Var terms).
std::map<std::string, Sort> free_vars(const FormulaPtr& f);
bool is_closed(const FormulaPtr& f);
std::set<std::string> all_var_names(const FormulaPtr& f);

// Allocation-free test for a single free variable (hot path in evaluation).
bool mentions_free_var(const FormulaPtr& f, const std::string& name);

// Node and edge identifiers embedded as constants ("condition over a graph").
void collect_constants(const FormulaPtr& f, std::set<std::string>& nodes,
                       std::set<std::string>& edges);

// Substitution ---------------------------------------------------------------

// Replace free occurrences of variable `name` by a term. Binders of the same
// name shadow. The replacement must be ground (no capture handling needed).
FormulaPtr subst_var(const FormulaPtr& f, const std::string& name, const TermPtr& repl);

// Replace occurrences of a term pattern, e.g. s(x) |-> node constant. Descent
// stops under binders that rebind a variable of the pattern.
FormulaPtr subst_term(const FormulaPtr& f, const TermPtr& pattern, const TermPtr& repl);

// Rename every label-sort variable (free or bound) whose name collides with
// `avoid`; fresh names are suffixed with digits. Used to meet Split's
// precondition that the condition shares no label variables with the rule.
FormulaPtr rename_label_vars_apart(const FormulaPtr& f, const std::set<std::string>& avoid);

// Rewrite every edge(u,v[,l][,m]) atom into existsE z(s(z)=u /\ t(z)=v ...)
// so the Split/Adj transformations only meet quantified edge variables.
FormulaPtr desugar_edge_predicates(const FormulaPtr& f);

// Bottom-up term rewriting: rebuilds argument lists, then applies fn to every
// term node. fn sees fully rebuilt subterms.
TermPtr term_transform(const TermPtr& t, const std::function<TermPtr(const TermPtr&)>& fn);

// Applies term_transform at every atom of the formula.
FormulaPtr formula_transform_terms(const FormulaPtr& f,
                                   const std::function<TermPtr(const TermPtr&)>& fn);

// Simultaneous renaming of node/edge constants.
FormulaPtr rewrite_constants(const FormulaPtr& f,
                             const std::map<std::string, std::string>& node_ren,
                             const std::map<std::string, std::string>& edge_ren);

// Structural simplification (simplify.cpp): negation pushing, unit and
// constant folding, flattening, deduplication. Equivalence-preserving.
FormulaPtr simplify(const FormulaPtr& f);

// Canonical serialisation (canon.cpp): alpha-invariant string form with
// sorted flattened juncts; two formulas are compared after canonicalisation.
std::string canon_string(const FormulaPtr& f);
bool canon_equal(const FormulaPtr& a, const FormulaPtr& b);

}  // namespace gpv
