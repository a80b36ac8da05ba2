#pragma once

#include "gpv/rule.hpp"

#include <string>
#include <vector>

namespace gpv {

// Transformation chain from a precondition to a strongest liberal
// postcondition for a (generalised) rule, and its inverse-rule dual giving
// weakest liberal preconditions.

// Case analysis of quantified node/edge variables against L's items; the
// result is a condition over L. The input must not share label variables
// with the rule (callers rename apart; lift() does this automatically).
FormulaPtr split(const FormulaPtr& c, const RuleSchema& r);

// The dangling condition as a condition over L.
FormulaPtr dang(const RuleSchema& r);

// Evaluate terms over constants of L by their L-values. Degrees of interface
// nodes become indeg_L(v) + incon(v) (the auxiliary incon/outcon terms are
// eliminated later by adj); degrees of deleted nodes evaluate to their
// L-degree, which the dangling condition forces.
FormulaPtr val(const FormulaPtr& d, const RuleSchema& r);

// Lift(c,w) = Val(Split(c /\ ac_L, r) /\ Dang(r), r)
FormulaPtr lift(const FormulaPtr& c, const GeneralisedRule& w);

// Transport a condition over L to a condition over R: eliminate aux terms,
// decide identifier comparisons with deleted items, guard quantifiers against
// created items.
FormulaPtr adj(const FormulaPtr& d, const RuleSchema& r);

// Spec(R): conjunction describing a totally labelled graph (types, labels,
// marks, rootedness, sources, targets).
FormulaPtr spec_graph(const RuleGraph& g, const std::vector<VarDecl>& params);

// Shift(c,w) = Adj(Lift(c,w),r) /\ ac_R /\ Spec(R) /\ Dang(r^-1)
FormulaPtr shift(const FormulaPtr& c, const GeneralisedRule& w);

// Replace node/edge constants by fresh variables plus pairwise disequalities.
FormulaPtr variablise(const FormulaPtr& d);

// Post(c,w): existential closure of Var(Shift(c,w)).
FormulaPtr post_formula(const FormulaPtr& c, const GeneralisedRule& w);

// Slp(c,r) = Post(c, r_or) and WLP(r,d) = ~Slp(~d, r^-1), with left-hand
// wildcard marks expanded into concrete variants first.
FormulaPtr slp_rule(const FormulaPtr& c, const RuleSchema& r);
FormulaPtr wlp_rule(const FormulaPtr& d, const RuleSchema& r);

// Success(r) = Slp(true, r^-1): a first-order formula satisfied exactly by
// the graphs to which r is applicable.
FormulaPtr success_rule(const RuleSchema& r);

}  // namespace gpv
