#pragma once

#include "gpv/calculus.hpp"
#include "gpv/enumerate.hpp"
#include "gpv/program.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gpv {

// Proof trees in the syntactic calculus SYN. Scripts are s-expressions:
//
//   (proof
//     (rules "twocolouring.gpp")
//     (let f {forallV x (...)})
//     (cons {c} "Main" (or c d)
//       (comp {f} "(init; Colour!)!; if Illegal then unmark!" (or c d)
//         ...)))
//
// Formula expressions are {..} inline text, let-names, or combinators
// (and ...) (or ...) (not e) (success "P") (fail "P") (slp e "P") (wlp "P" e).
// Node forms: ruleapp-slp ruleapp-wlp ruleset comp cons if try alap; each
// carries pre, the program text, post, then child nodes. alap accepts an
// optional (break-post e), default false.

enum class ProofRule { RuleAppSlp, RuleAppWlp, RuleSet, Comp, Cons, If, Try, Alap };

const char* proof_rule_name(ProofRule r);

struct ProofNode {
  ProofRule rule;
  FormulaPtr pre, post;
  CommandPtr prog;
  std::string prog_text;
  FormulaPtr break_post;  // alap only; f_false() by default
  std::vector<ProofNode> kids;
};

struct ProofScript {
  Program program;
  ProofNode root;
};

ProofScript parse_proof_script(const std::string& text, const std::string& base_dir);
ProofScript load_proof_script(const std::string& path);

struct Obligation {
  std::string at;  // node path
  FormulaPtr lhs, rhs;
  enum Status { Trivial, Bounded, Failed } status = Bounded;
  ImpliesVerdict verdict;
};

struct NodeReport {
  std::string path;
  std::string rule;
  std::string status;  // "ok" or a rejection reason
  bool ok = true;
};

struct CheckReport {
  enum Verdict { Checked, CheckedBounded, Rejected } verdict = Checked;
  std::vector<NodeReport> nodes;
  std::vector<Obligation> obligations;
  std::string summary() const;
};

// Structural validation of every node plus discharge of [cons] implication
// obligations by bounded counterexample search. Bounded discharges downgrade
// the verdict to checked-with-bounded-obligations; they never upgrade to
// checked.
CheckReport check_proof(const ProofScript& s, const GraphEnumConfig& bound,
                        const LabelUniverse& u);

}  // namespace gpv
