#pragma once

#include "gpv/formula.hpp"
#include "gpv/graph.hpp"
#include "gpv/universe.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gpv {

struct VarDecl {
  std::string name;
  Sort sort = Sort::List;
};

// Conditional rule schema <L <- K -> R, Gamma>. The interface K consists of
// nodes only (ids present in both L and R); all L edges are deleted and all R
// edges created. Gamma is a condition over L's variables and node ids.
struct RuleSchema {
  std::string name;
  std::vector<VarDecl> params;
  RuleGraph lhs, rhs;
  std::vector<std::string> interface_nodes;
  FormulaPtr condition;  // f_true() when absent

  bool in_interface(const std::string& id) const;
  std::map<std::string, Sort> param_map() const;
  std::set<std::string> param_names() const;
  bool has_any_marks() const;
};

// Def. 2.3 invariants; throws NonSimpleLHS / UndeclaredVariable /
// RHSVariableNotInLHS / TypeMismatch.
void validate_rule(const RuleSchema& r);

bool is_simple_expr(const TermPtr& t);

// Unrestricted rule schema with left/right application conditions (over L
// resp. R). Closed under inversion.
struct GeneralisedRule {
  RuleSchema core;  // core.condition unused; conditions live in ac_left/ac_right
  FormulaPtr ac_left;
  FormulaPtr ac_right;
};

GeneralisedRule generalise(const RuleSchema& r);  // <r, Gamma_or, true>
GeneralisedRule inverse(const GeneralisedRule& w);
RuleSchema inverse_schema(const RuleSchema& r);  // unconditional inverse core

// Concrete variants with every `any` mark instantiated (wildcards on the
// left instantiate to each non-none mark; right-hand `any` copies the match).
std::vector<RuleSchema> expand_any_marks(const RuleSchema& r);

struct MatchBinding {
  std::map<std::string, int> nodes;           // L node id -> host node index
  std::map<std::string, int> edges;           // L edge id -> host edge index
  std::map<std::string, ListValue> labels;    // alpha_L
  std::map<std::string, Mark> mu_nodes;       // any-instantiation
  std::map<std::string, Mark> mu_edges;
};

Premorphism to_premorphism(const MatchBinding& m, const HostGraph& g);

// All injective label-preserving matches admitting a label assignment that
// satisfies Gamma. Deterministic order. Dangling is not checked here.
std::vector<MatchBinding> find_matches(const RuleSchema& r, const HostGraph& g);

// No node in m(L-K) is incident to an edge outside the match image.
bool check_dangling(const RuleSchema& r, const HostGraph& g, const MatchBinding& m);

// Natural double-pushout application; results deduplicated up to isomorphism.
std::vector<HostGraph> apply_rule(const RuleSchema& r, const HostGraph& g);

// Application of one match (dangling assumed checked). Returns the result and
// optionally the R -> result identifier correspondence. Fails (nullopt) when a
// right-hand label does not evaluate.
std::optional<HostGraph> apply_match(const RuleSchema& r, const HostGraph& g,
                                     const MatchBinding& m,
                                     Premorphism* rh_morphism = nullptr);

struct GenApplyResult {
  std::vector<HostGraph> results;
  bool universe_limited = false;  // non-simple labels were matched by bounded enumeration
};

// Generalised-rule application: non-simple left-hand labels are matched by
// enumerating assignments over the universe; admission requires the
// replacement graphs of input and output to satisfy ac_left resp. ac_right.
GenApplyResult apply_generalised(const GeneralisedRule& w, const HostGraph& g,
                                 const LabelUniverse& u);

// Shared with the interpreter: dedup insert up to isomorphism.
bool insert_unique_iso(std::vector<HostGraph>& set, HostGraph g);

}  // namespace gpv
