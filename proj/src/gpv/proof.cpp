#include "gpv/proof.hpp"

#include "gpv/diagnostics.hpp"
#include "gpv/formula_parser.hpp"

#include <fstream>
#include <sstream>

namespace gpv {

const char* proof_rule_name(ProofRule r) {
  switch (r) {
    case ProofRule::RuleAppSlp: return "ruleapp-slp";
    case ProofRule::RuleAppWlp: return "ruleapp-wlp";
    case ProofRule::RuleSet: return "ruleset";
    case ProofRule::Comp: return "comp";
    case ProofRule::Cons: return "cons";
    case ProofRule::If: return "if";
    case ProofRule::Try: return "try";
    case ProofRule::Alap: return "alap";
  }
  return "?";
}

// --- s-expression reader ------------------------------------------------------

namespace {

struct SExpr {
  enum Kind { List, Sym, Str, Fol } kind = Sym;
  std::string text;
  std::vector<SExpr> items;
  int line = 1;
};

struct SReader {
  const std::string& s;
  size_t i = 0;
  int line = 1;

  explicit SReader(const std::string& text) : s(text) {}

  void skip_ws() {
    while (i < s.size()) {
      if (s[i] == ';') {
        while (i < s.size() && s[i] != '\n') ++i;
      } else if (s[i] == '/' && i + 1 < s.size() && s[i + 1] == '/') {
        while (i < s.size() && s[i] != '\n') ++i;
      } else if (std::isspace((unsigned char)s[i])) {
        if (s[i] == '\n') ++line;
        ++i;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_ws();
    return i >= s.size();
  }

  SExpr read() {
    skip_ws();
    if (i >= s.size()) fail(Err::Syntax, "proof script: unexpected end of input");
    SExpr e;
    e.line = line;
    char c = s[i];
    if (c == '(') {
      ++i;
      e.kind = SExpr::List;
      while (true) {
        skip_ws();
        if (i >= s.size()) fail(Err::Syntax, "proof script: unterminated list");
        if (s[i] == ')') {
          ++i;
          break;
        }
        e.items.push_back(read());
      }
      return e;
    }
    if (c == '{') {
      ++i;
      size_t start = i;
      int depth = 1;
      while (i < s.size() && depth > 0) {
        if (s[i] == '{') ++depth;
        if (s[i] == '}') --depth;
        if (s[i] == '\n') ++line;
        ++i;
      }
      if (depth != 0) fail(Err::Syntax, "proof script: unterminated formula block");
      e.kind = SExpr::Fol;
      e.text = s.substr(start, i - start - 1);
      return e;
    }
    if (c == '"') {
      ++i;
      size_t start = i;
      while (i < s.size() && s[i] != '"') ++i;
      if (i >= s.size()) fail(Err::Syntax, "proof script: unterminated string");
      e.kind = SExpr::Str;
      e.text = s.substr(start, i - start);
      ++i;
      return e;
    }
    size_t start = i;
    while (i < s.size() && !std::isspace((unsigned char)s[i]) && s[i] != '(' && s[i] != ')' &&
           s[i] != '{' && s[i] != '"')
      ++i;
    e.kind = SExpr::Sym;
    e.text = s.substr(start, i - start);
    return e;
  }
};

struct ScriptBuilder {
  Program program;
  std::map<std::string, FormulaPtr> lets;

  FormulaPtr formula_expr(const SExpr& e) {
    switch (e.kind) {
      case SExpr::Fol:
        return parse_formula(e.text);
      case SExpr::Sym: {
        if (e.text == "true") return f_true();
        if (e.text == "false") return f_false();
        auto it = lets.find(e.text);
        if (it == lets.end())
          fail(Err::Syntax, "proof script: unknown formula name " + e.text);
        return it->second;
      }
      case SExpr::List: {
        if (e.items.empty() || e.items[0].kind != SExpr::Sym)
          fail(Err::Syntax, "proof script: bad formula expression");
        const std::string& op = e.items[0].text;
        if (op == "and" || op == "or") {
          std::vector<FormulaPtr> kids;
          for (size_t k = 1; k < e.items.size(); ++k)
            kids.push_back(formula_expr(e.items[k]));
          return op == "and" ? f_and(std::move(kids)) : f_or(std::move(kids));
        }
        if (op == "not") return f_not(formula_expr(e.items[1]));
        if (op == "success") {
          CommandPtr c = parse_command_over(e.items[1].text, program);
          return success_lf(c, program);
        }
        if (op == "fail") {
          CommandPtr c = parse_command_over(e.items[1].text, program);
          return fail_iteration(c, program);
        }
        if (op == "slp") {
          FormulaPtr pre = formula_expr(e.items[1]);
          CommandPtr c = parse_command_over(e.items[2].text, program);
          return slp_lf(pre, c, program);
        }
        if (op == "wlp") {
          CommandPtr c = parse_command_over(e.items[1].text, program);
          FormulaPtr post = formula_expr(e.items[2]);
          return wlp_lf(post, c, program);
        }
        fail(Err::Syntax, "proof script: unknown formula operator " + op);
      }
      default:
        fail(Err::Syntax, "proof script: bad formula expression");
    }
  }

  std::optional<ProofRule> rule_of(const std::string& s) {
    if (s == "ruleapp-slp") return ProofRule::RuleAppSlp;
    if (s == "ruleapp-wlp") return ProofRule::RuleAppWlp;
    if (s == "ruleset") return ProofRule::RuleSet;
    if (s == "comp") return ProofRule::Comp;
    if (s == "cons") return ProofRule::Cons;
    if (s == "if") return ProofRule::If;
    if (s == "try") return ProofRule::Try;
    if (s == "alap") return ProofRule::Alap;
    return std::nullopt;
  }

  ProofNode node(const SExpr& e) {
    if (e.kind != SExpr::List || e.items.size() < 4 || e.items[0].kind != SExpr::Sym)
      fail(Err::Syntax, "proof script: expected proof node at line " + std::to_string(e.line));
    auto rule = rule_of(e.items[0].text);
    if (!rule)
      fail(Err::Syntax, "proof script: unknown inference rule " + e.items[0].text);
    ProofNode n;
    n.rule = *rule;
    n.pre = formula_expr(e.items[1]);
    if (e.items[2].kind != SExpr::Str)
      fail(Err::Syntax, "proof script: node program must be a string");
    n.prog_text = e.items[2].text;
    n.prog = parse_command_over(n.prog_text, program);
    n.post = formula_expr(e.items[3]);
    n.break_post = f_false();
    for (size_t k = 4; k < e.items.size(); ++k) {
      const SExpr& kid = e.items[k];
      if (kid.kind == SExpr::List && !kid.items.empty() && kid.items[0].kind == SExpr::Sym &&
          kid.items[0].text == "break-post") {
        n.break_post = formula_expr(kid.items[1]);
        continue;
      }
      n.kids.push_back(node(kid));
    }
    return n;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::Syntax, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ProofScript parse_proof_script(const std::string& text, const std::string& base_dir) {
  SReader reader(text);
  SExpr top = reader.read();
  if (top.kind != SExpr::List || top.items.empty() || top.items[0].kind != SExpr::Sym ||
      top.items[0].text != "proof")
    fail(Err::Syntax, "proof script must start with (proof ...)");
  ScriptBuilder b;
  const SExpr* root_node = nullptr;
  for (size_t k = 1; k < top.items.size(); ++k) {
    const SExpr& e = top.items[k];
    if (e.kind == SExpr::List && !e.items.empty() && e.items[0].kind == SExpr::Sym) {
      if (e.items[0].text == "rules") {
        std::string path = e.items[1].text;
        if (!path.empty() && path[0] != '/' && !base_dir.empty())
          path = base_dir + "/" + path;
        b.program = parse_program(read_file(path));
        continue;
      }
      if (e.items[0].text == "let") {
        if (e.items.size() != 3 || e.items[1].kind != SExpr::Sym)
          fail(Err::Syntax, "proof script: (let name formula)");
        b.lets[e.items[1].text] = b.formula_expr(e.items[2]);
        continue;
      }
    }
    if (root_node) fail(Err::Syntax, "proof script: multiple root nodes");
    root_node = &e;
  }
  if (!root_node) fail(Err::Syntax, "proof script: missing root node");
  ProofNode root = b.node(*root_node);
  ProofScript s;
  s.program = std::move(b.program);
  s.root = std::move(root);
  return s;
}

ProofScript load_proof_script(const std::string& path) {
  std::string dir;
  auto slash = path.find_last_of('/');
  if (slash != std::string::npos) dir = path.substr(0, slash);
  return parse_proof_script(read_file(path), dir);
}

// --- checking ------------------------------------------------------------------

namespace {

struct Checker {
  const ProofScript& script;
  const GraphEnumConfig& bound;
  const LabelUniverse& u;
  CheckReport report;
  bool rejected = false;

  void reject(const std::string& path, ProofRule rule, const std::string& why) {
    report.nodes.push_back({path, proof_rule_name(rule), why, false});
    rejected = true;
  }

  void accept(const std::string& path, ProofRule rule) {
    report.nodes.push_back({path, proof_rule_name(rule), "ok", true});
  }

  // Implication obligation: trivially discharged when syntactically obvious,
  // otherwise delegated to bounded counterexample search.
  void discharge(const std::string& path, const FormulaPtr& lhs, const FormulaPtr& rhs) {
    Obligation ob;
    ob.at = path;
    ob.lhs = lhs;
    ob.rhs = rhs;
    if (obviously_implies(lhs, rhs)) {
      ob.status = Obligation::Trivial;
    } else {
      ob.verdict = implies_bounded(lhs, rhs, bound, u);
      ob.status = ob.verdict.no_counterexample ? Obligation::Bounded : Obligation::Failed;
      if (ob.status == Obligation::Failed) {
        reject(path, ProofRule::Cons, "implication refuted: " + print_formula(lhs) +
                                          "  does not imply  " + print_formula(rhs));
      }
    }
    report.obligations.push_back(std::move(ob));
  }

  static void conj_parts(const FormulaPtr& f, std::vector<std::string>& out) {
    FormulaPtr s = simplify(f);
    if (s->kind == FKind::And) {
      for (const auto& k : s->kids) out.push_back(canon_string(k));
    } else {
      out.push_back(canon_string(s));
    }
  }

  static bool obviously_implies(const FormulaPtr& lhs, const FormulaPtr& rhs) {
    FormulaPtr l = simplify(lhs), r = simplify(rhs);
    if (l->kind == FKind::False || r->kind == FKind::True) return true;
    if (canon_equal(l, r)) return true;
    // c implies c \/ d when c is a disjunct of the right-hand side
    if (r->kind == FKind::Or) {
      std::string lc = canon_string(l);
      for (const auto& k : r->kids)
        if (canon_string(k) == lc) return true;
    }
    // c /\ e implies c when rhs conjuncts are a subset of lhs conjuncts
    std::vector<std::string> lparts, rparts;
    conj_parts(l, lparts);
    conj_parts(r, rparts);
    for (const auto& need : rparts) {
      bool found = false;
      for (const auto& have : lparts)
        if (have == need) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  }

  bool check_triple_formulas(const std::string& path, const ProofNode& n) {
    if (!is_closed(n.pre) || !is_closed(n.post)) {
      reject(path, n.rule, "pre/postcondition must be closed");
      return false;
    }
    return true;
  }

  void check(const ProofNode& n, const std::string& path) {
    if (rejected) return;
    if (!check_triple_formulas(path, n)) return;
    switch (n.rule) {
      case ProofRule::RuleAppSlp: {
        if (!is_atomic(n.prog)) {
          reject(path, n.rule, "ruleapp-slp needs a rule call, skip, or fail");
          return;
        }
        if (!n.kids.empty()) {
          reject(path, n.rule, "axiom node has children");
          return;
        }
        FormulaPtr want = slp_lf(n.pre, n.prog, script.program);
        if (!canon_equal(n.post, want)) {
          reject(path, n.rule, "conclusion postcondition is not Slp(pre, " + n.prog_text +
                                   "); expected " + print_formula(want));
          return;
        }
        accept(path, n.rule);
        return;
      }
      case ProofRule::RuleAppWlp: {
        if (!is_atomic(n.prog)) {
          reject(path, n.rule, "ruleapp-wlp needs a rule call, skip, or fail");
          return;
        }
        if (!n.kids.empty()) {
          reject(path, n.rule, "axiom node has children");
          return;
        }
        FormulaPtr want = wlp_lf(n.post, n.prog, script.program);
        if (!canon_equal(n.pre, want)) {
          reject(path, n.rule, "conclusion precondition is not Wlp(" + n.prog_text +
                                   ", post); expected " + print_formula(want));
          return;
        }
        accept(path, n.rule);
        return;
      }
      case ProofRule::RuleSet: {
        if (n.prog->kind != CmdKind::RuleCall) {
          reject(path, n.rule, "ruleset needs a rule-set call");
          return;
        }
        if (n.kids.size() != n.prog->rules.size()) {
          reject(path, n.rule, "ruleset needs one premise per rule");
          return;
        }
        for (size_t i = 0; i < n.kids.size(); ++i) {
          const ProofNode& kid = n.kids[i];
          CommandPtr want = cmd_rule_call({n.prog->rules[i]});
          if (!equal_commands(kid.prog, want)) {
            reject(path, n.rule, "premise " + std::to_string(i) + " proves " +
                                     kid.prog_text + ", expected " + n.prog->rules[i]);
            return;
          }
          if (!canon_equal(kid.pre, n.pre) || !canon_equal(kid.post, n.post)) {
            reject(path, n.rule, "premise " + std::to_string(i) +
                                     " must share the conclusion's pre/post");
            return;
          }
        }
        accept(path, n.rule);
        for (size_t i = 0; i < n.kids.size(); ++i)
          check(n.kids[i], path + "." + std::to_string(i));
        return;
      }
      case ProofRule::Comp: {
        if (n.prog->kind != CmdKind::Seq || n.kids.size() != 2) {
          reject(path, n.rule, "comp needs P;Q and two premises");
          return;
        }
        if (!equal_commands(n.kids[0].prog, n.prog->a) ||
            !equal_commands(n.kids[1].prog, n.prog->b)) {
          reject(path, n.rule, "premises do not decompose the composition");
          return;
        }
        if (!canon_equal(n.kids[0].pre, n.pre)) {
          reject(path, n.rule, "left premise precondition mismatch");
          return;
        }
        if (!canon_equal(n.kids[0].post, n.kids[1].pre)) {
          reject(path, n.rule, "midpoint assertion mismatch");
          return;
        }
        if (!canon_equal(n.kids[1].post, n.post)) {
          reject(path, n.rule, "right premise postcondition mismatch");
          return;
        }
        accept(path, n.rule);
        check(n.kids[0], path + ".0");
        check(n.kids[1], path + ".1");
        return;
      }
      case ProofRule::Cons: {
        if (n.kids.size() != 1) {
          reject(path, n.rule, "cons needs exactly one premise");
          return;
        }
        if (!equal_commands(n.kids[0].prog, n.prog)) {
          reject(path, n.rule, "premise proves a different program");
          return;
        }
        accept(path, n.rule);
        discharge(path + " (pre)", n.pre, n.kids[0].pre);
        if (rejected) return;
        discharge(path + " (post)", n.kids[0].post, n.post);
        if (rejected) return;
        check(n.kids[0], path + ".0");
        return;
      }
      case ProofRule::If:
      case ProofRule::Try: {
        bool is_if = n.rule == ProofRule::If;
        if (n.prog->kind != (is_if ? CmdKind::If : CmdKind::Try) || n.kids.size() != 2) {
          reject(path, n.rule, "needs the branching command and two premises");
          return;
        }
        const CommandPtr& cond = n.prog->a;
        if (!classify(cond, script.program).loop_free) {
          reject(path, n.rule, "branch condition must be loop-free");
          return;
        }
        CommandPtr want_then =
            is_if ? n.prog->b : cmd_seq(n.prog->a, n.prog->b);  // try proves C;P
        if (!equal_commands(n.kids[0].prog, want_then)) {
          reject(path, n.rule, is_if ? "first premise must prove the then-branch"
                                     : "first premise must prove C;P");
          return;
        }
        if (!equal_commands(n.kids[1].prog, n.prog->c)) {
          reject(path, n.rule, "second premise must prove the else-branch");
          return;
        }
        FormulaPtr succ = simplify(f_and2(n.pre, success_lf(cond, script.program)));
        FormulaPtr failf = simplify(f_and2(n.pre, fail_lf(cond, script.program)));
        if (!canon_equal(n.kids[0].pre, succ)) {
          reject(path, n.rule, "first premise precondition must be pre /\\ Success(C)");
          return;
        }
        if (!canon_equal(n.kids[1].pre, failf)) {
          reject(path, n.rule, "second premise precondition must be pre /\\ Fail(C)");
          return;
        }
        if (!canon_equal(n.kids[0].post, n.post) || !canon_equal(n.kids[1].post, n.post)) {
          reject(path, n.rule, "premises must share the conclusion's postcondition");
          return;
        }
        accept(path, n.rule);
        check(n.kids[0], path + ".0");
        check(n.kids[1], path + ".1");
        return;
      }
      case ProofRule::Alap: {
        if (n.prog->kind != CmdKind::Loop || n.kids.size() != 1) {
          reject(path, n.rule, "alap needs S! and one premise");
          return;
        }
        const CommandPtr& body = n.prog->a;
        if (!classify(body, script.program).iteration) {
          reject(path, n.rule, "loop body is not an iteration command");
          return;
        }
        if (!equal_commands(n.kids[0].prog, body)) {
          reject(path, n.rule, "premise must prove the loop body");
          return;
        }
        if (!canon_equal(n.kids[0].pre, n.pre) || !canon_equal(n.kids[0].post, n.pre)) {
          reject(path, n.rule, "premise must prove the invariant {c} S {c}");
          return;
        }
        // Break(c,S,d) is only discharged in the trivial case.
        bool trivial_break = !contains_break(body) &&
                             simplify(n.break_post)->kind == FKind::False;
        if (!trivial_break) {
          reject(path, n.rule,
                 std::string(err_name(Err::BreakUnsupported)) +
                     ": only break-free bodies with break-post false are supported");
          return;
        }
        FormulaPtr want = simplify(f_or2(
            f_and2(n.pre, fail_iteration(body, script.program)), n.break_post));
        if (!canon_equal(n.post, want)) {
          reject(path, n.rule, "conclusion must be (c /\\ Fail(S)) \\/ d; expected " +
                                   print_formula(want));
          return;
        }
        accept(path, n.rule);
        check(n.kids[0], path + ".0");
        return;
      }
    }
  }

  static bool is_atomic(const CommandPtr& c) {
    return c->kind == CmdKind::RuleCall || c->kind == CmdKind::Skip ||
           c->kind == CmdKind::Fail;
  }
};

}  // namespace

std::string CheckReport::summary() const {
  switch (verdict) {
    case Checked: return "checked";
    case CheckedBounded: return "checked-with-bounded-obligations";
    case Rejected: return "rejected";
  }
  return "?";
}

CheckReport check_proof(const ProofScript& s, const GraphEnumConfig& bound,
                        const LabelUniverse& u) {
  Checker c{s, bound, u, {}, false};
  if (!classify(s.root.prog, s.program).control) {
    c.reject("root", s.root.rule,
             std::string(err_name(Err::NotControlProgram)) + ": " + s.root.prog_text);
  } else {
    c.check(s.root, "root");
  }
  c.report.verdict = CheckReport::Checked;
  if (!c.rejected) {
    for (const auto& ob : c.report.obligations)
      if (ob.status == Obligation::Bounded) c.report.verdict = CheckReport::CheckedBounded;
  } else {
    c.report.verdict = CheckReport::Rejected;
  }
  return c.report;
}

}  // namespace gpv
