#include "gpv/calculus.hpp"

#include "gpv/diagnostics.hpp"

namespace gpv {

namespace {

bool loop_free(const CommandPtr& c) {
  if (!c) return true;
  if (c->kind == CmdKind::Loop) return false;
  return loop_free(c->a) && loop_free(c->b) && loop_free(c->c);
}

bool rule_has_empty_lhs(const RuleSchema& r) { return r.lhs.nodes.empty(); }

bool non_failing(const CommandPtr& c, const Program& p) {
  switch (c->kind) {
    case CmdKind::Break:
    case CmdKind::Skip:
      return true;
    case CmdKind::Fail:
      return false;
    case CmdKind::RuleCall: {
      if (c->rules.empty()) return false;
      for (const auto& n : c->rules)
        if (!rule_has_empty_lhs(p.rule(n))) return false;
      return true;
    }
    case CmdKind::Loop:
      return true;
    case CmdKind::Seq:
      return non_failing(c->a, p) && non_failing(c->b, p);
    case CmdKind::If:
    case CmdKind::Try:
      return non_failing(c->b, p) && non_failing(c->c, p);
    case CmdKind::Or:
      return non_failing(c->a, p) && non_failing(c->b, p);
  }
  return false;
}

bool iteration(const CommandPtr& c, const Program& p) {
  if (loop_free(c) || non_failing(c, p)) return true;
  if (c->kind == CmdKind::Seq)
    return loop_free(c->a) && iteration(c->b, p);
  return false;
}

bool control(const CommandPtr& c, const Program& p) {
  switch (c->kind) {
    case CmdKind::RuleCall:
    case CmdKind::Break:
    case CmdKind::Skip:
    case CmdKind::Fail:
      return true;
    case CmdKind::Seq:
    case CmdKind::Or:
      return control(c->a, p) && control(c->b, p);
    case CmdKind::If:
    case CmdKind::Try:
      return loop_free(c->a) && control(c->b, p) && control(c->c, p);
    case CmdKind::Loop:
      return iteration(c->a, p) && control(c->a, p);
  }
  return false;
}

}  // namespace

CommandClass classify(const CommandPtr& c, const Program& p) {
  CommandClass out;
  out.loop_free = loop_free(c);
  out.non_failing = non_failing(c, p);
  out.iteration = iteration(c, p);
  out.control = control(c, p);
  return out;
}

bool contains_break(const CommandPtr& c) {
  if (!c) return false;
  if (c->kind == CmdKind::Break) return true;
  return contains_break(c->a) || contains_break(c->b) || contains_break(c->c);
}

namespace {

void print_class_rec(const CommandPtr& c, const Program& p, int depth, std::string& out) {
  CommandClass cc = classify(c, p);
  out.append(2 * depth, ' ');
  std::string cmd = print_command(c);
  if (cmd.size() > 48) cmd = cmd.substr(0, 45) + "...";
  out += cmd + "  [";
  out += cc.loop_free ? "loop-free " : "";
  out += cc.non_failing ? "non-failing " : "";
  out += cc.iteration ? "iteration " : "";
  out += cc.control ? "control" : "NOT-control";
  out += "]\n";
  switch (c->kind) {
    case CmdKind::Seq:
    case CmdKind::Or:
      print_class_rec(c->a, p, depth + 1, out);
      print_class_rec(c->b, p, depth + 1, out);
      break;
    case CmdKind::If:
    case CmdKind::Try:
      print_class_rec(c->a, p, depth + 1, out);
      print_class_rec(c->b, p, depth + 1, out);
      print_class_rec(c->c, p, depth + 1, out);
      break;
    case CmdKind::Loop:
      print_class_rec(c->a, p, depth + 1, out);
      break;
    default:
      break;
  }
}

void require_loop_free(const CommandPtr& c, const char* what) {
  if (!loop_free(c))
    fail(Err::NotLoopFree, std::string(what) + ": " + print_command(c));
}

}  // namespace

std::string print_classification(const CommandPtr& c, const Program& p) {
  std::string out;
  print_class_rec(c, p, 0, out);
  return out;
}

FormulaPtr success_lf(const CommandPtr& c, const Program& p) {
  require_loop_free(c, "Success is only constructible for loop-free programs");
  switch (c->kind) {
    case CmdKind::Skip:
    case CmdKind::Break:
      return f_true();
    case CmdKind::Fail:
      return f_false();
    case CmdKind::RuleCall: {
      std::vector<FormulaPtr> alts;
      for (const auto& n : c->rules) alts.push_back(success_rule(p.rule(n)));
      return simplify(f_or(std::move(alts)));
    }
    case CmdKind::Seq:
      return simplify(f_not(wlp_lf(simplify(f_not(success_lf(c->b, p))), c->a, p)));
    case CmdKind::If:
      return simplify(f_or2(f_and2(success_lf(c->a, p), success_lf(c->b, p)),
                            f_and2(fail_lf(c->a, p), success_lf(c->c, p))));
    case CmdKind::Try:
      return simplify(
          f_or2(f_not(wlp_lf(simplify(f_not(success_lf(c->b, p))), c->a, p)),
                f_and2(fail_lf(c->a, p), success_lf(c->c, p))));
    case CmdKind::Or:
      return simplify(f_or2(success_lf(c->a, p), success_lf(c->b, p)));
    case CmdKind::Loop:
      break;
  }
  fail(Err::NotLoopFree, print_command(c));
}

FormulaPtr fail_lf(const CommandPtr& c, const Program& p) {
  require_loop_free(c, "Fail_lf is only constructible for loop-free programs");
  switch (c->kind) {
    case CmdKind::Skip:
    case CmdKind::Break:
      return f_false();
    case CmdKind::Fail:
      return f_true();
    case CmdKind::RuleCall:
      return simplify(f_not(success_lf(c, p)));
    case CmdKind::Seq:
      return simplify(f_or2(fail_lf(c->a, p),
                            f_not(wlp_lf(simplify(f_not(fail_lf(c->b, p))), c->a, p))));
    case CmdKind::If:
      return simplify(f_or2(f_and2(success_lf(c->a, p), fail_lf(c->b, p)),
                            f_and2(fail_lf(c->a, p), fail_lf(c->c, p))));
    case CmdKind::Try:
      return simplify(f_or2(f_not(wlp_lf(simplify(f_not(fail_lf(c->b, p))), c->a, p)),
                            f_and2(fail_lf(c->a, p), fail_lf(c->c, p))));
    case CmdKind::Or:
      return simplify(f_or2(fail_lf(c->a, p), fail_lf(c->b, p)));
    case CmdKind::Loop:
      break;
  }
  fail(Err::NotLoopFree, print_command(c));
}

FormulaPtr wlp_lf(const FormulaPtr& post, const CommandPtr& c, const Program& p) {
  require_loop_free(c, "Wlp is only constructible for loop-free programs");
  switch (c->kind) {
    case CmdKind::Skip:
    case CmdKind::Break:
      return post;
    case CmdKind::Fail:
      return f_true();
    case CmdKind::RuleCall: {
      std::vector<FormulaPtr> conj;
      for (const auto& n : c->rules) conj.push_back(wlp_rule(post, p.rule(n)));
      return simplify(f_and(std::move(conj)));
    }
    case CmdKind::Seq:
      return wlp_lf(wlp_lf(post, c->b, p), c->a, p);
    case CmdKind::If:
      return simplify(
          f_and2(f_or2(f_not(success_lf(c->a, p)), wlp_lf(post, c->b, p)),
                 f_or2(f_not(fail_lf(c->a, p)), wlp_lf(post, c->c, p))));
    case CmdKind::Try:
      return simplify(f_and2(wlp_lf(wlp_lf(post, c->b, p), c->a, p),
                             f_or2(f_not(fail_lf(c->a, p)), wlp_lf(post, c->c, p))));
    case CmdKind::Or:
      return simplify(f_and2(wlp_lf(post, c->a, p), wlp_lf(post, c->b, p)));
    case CmdKind::Loop:
      break;
  }
  fail(Err::NotLoopFree, print_command(c));
}

FormulaPtr slp_lf(const FormulaPtr& pre, const CommandPtr& c, const Program& p) {
  require_loop_free(c, "Slp is only constructible for loop-free programs");
  switch (c->kind) {
    case CmdKind::Skip:
    case CmdKind::Break:
      return pre;
    case CmdKind::Fail:
      return f_false();
    case CmdKind::RuleCall: {
      std::vector<FormulaPtr> alts;
      for (const auto& n : c->rules) alts.push_back(slp_rule(pre, p.rule(n)));
      return simplify(f_or(std::move(alts)));
    }
    case CmdKind::Seq:
      return slp_lf(slp_lf(pre, c->a, p), c->b, p);
    case CmdKind::If:
      return simplify(
          f_or2(slp_lf(simplify(f_and2(pre, success_lf(c->a, p))), c->b, p),
                slp_lf(simplify(f_and2(pre, fail_lf(c->a, p))), c->c, p)));
    case CmdKind::Try: {
      FormulaPtr via = slp_lf(simplify(f_and2(pre, success_lf(c->a, p))), c->a, p);
      return simplify(f_or2(slp_lf(via, c->b, p),
                            slp_lf(simplify(f_and2(pre, fail_lf(c->a, p))), c->c, p)));
    }
    case CmdKind::Or:
      return simplify(f_or2(slp_lf(pre, c->a, p), slp_lf(pre, c->b, p)));
    case CmdKind::Loop:
      break;
  }
  fail(Err::NotLoopFree, print_command(c));
}

FormulaPtr fail_iteration(const CommandPtr& c, const Program& p) {
  if (non_failing(c, p)) return f_false();
  if (loop_free(c)) return fail_lf(c, p);
  if (c->kind == CmdKind::Seq && loop_free(c->a) && iteration(c->b, p)) {
    FormulaPtr tail = fail_iteration(c->b, p);
    return simplify(
        f_or2(fail_lf(c->a, p), f_not(wlp_lf(simplify(f_not(tail)), c->a, p))));
  }
  fail(Err::NotIteration, print_command(c));
}

}  // namespace gpv
