#include "gpv/formula.hpp"

#include <algorithm>

namespace gpv {

// Canonical, alpha-invariant serialisation. Bound variables are replaced by
// de Bruijn style indices, conjuncts/disjuncts are flattened, sorted and
// deduplicated, and symmetric comparisons are orientation-normalised. Two
// formulas that differ only in bound-variable names, junct order, or double
// negation map to the same string.

namespace {

using Stack = std::vector<const std::string*>;

std::string term_key(const TermPtr& t, const Stack& stack) {
  switch (t->kind) {
    case TermKind::Empty: return "mt";
    case TermKind::IntConst: return "i" + std::to_string(t->num);
    case TermKind::StrConst: return "s\"" + t->text + "\"";
    case TermKind::Var: {
      for (size_t i = stack.size(); i-- > 0;) {
        if (*stack[i] == t->text) return "b" + std::to_string(stack.size() - 1 - i);
      }
      return "v:" + t->text;
    }
    case TermKind::NodeConst: return "n:" + t->text;
    case TermKind::EdgeConst: return "e:" + t->text;
    case TermKind::MarkConst: return std::string("m:") + mark_name(t->mark);
    default: {
      std::string out = std::to_string((int)t->kind) + "(";
      for (size_t i = 0; i < t->args.size(); ++i) {
        if (i) out += ",";
        out += term_key(t->args[i], stack);
      }
      return out + ")";
    }
  }
}

std::string rec(const FormulaPtr& f, Stack& stack) {
  switch (f->kind) {
    case FKind::True: return "T";
    case FKind::False: return "F";
    case FKind::Not: return "!" + rec(f->kids[0], stack);
    case FKind::And:
    case FKind::Or: {
      std::vector<std::string> keys;
      keys.reserve(f->kids.size());
      for (const auto& k : f->kids) keys.push_back(rec(k, stack));
      std::sort(keys.begin(), keys.end());
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
      if (keys.size() == 1) return keys[0];
      std::string out = f->kind == FKind::And ? "&[" : "|[";
      for (const auto& k : keys) out += k + ";";
      return out + "]";
    }
    case FKind::Exists: {
      stack.push_back(&f->var);
      std::string body = rec(f->kids[0], stack);
      stack.pop_back();
      const char* q = f->q == QKind::V ? "EV" : f->q == QKind::E ? "EE" : "EL";
      return std::string(q) + "(" + body + ")";
    }
    case FKind::Cmp: {
      CmpOp op = f->op;
      std::string l = term_key(f->lhs, stack);
      std::string r = term_key(f->rhs, stack);
      if (op == CmpOp::Gt) {
        op = CmpOp::Lt;
        std::swap(l, r);
      } else if (op == CmpOp::Ge) {
        op = CmpOp::Le;
        std::swap(l, r);
      }
      if ((op == CmpOp::Eq || op == CmpOp::Ne) && r < l) std::swap(l, r);
      const char* ops[] = {"=", "#", "<", "<="};
      return std::string("c") + ops[(int)op] + "(" + l + "," + r + ")";
    }
    case FKind::TypePred:
      return std::string("ty:") + sort_name(f->tsort) + "(" + term_key(f->lhs, stack) + ")";
    case FKind::RootPred:
      return "root(" + term_key(f->lhs, stack) + ")";
    case FKind::EdgePred: {
      std::string out = "edge(" + term_key(f->lhs, stack) + "," + term_key(f->rhs, stack);
      if (f->elabel) out += "," + term_key(f->elabel, stack);
      if (f->has_emark) out += std::string(",m:") + mark_name(f->emark);
      return out + ")";
    }
  }
  return "?";
}

}  // namespace

std::string canon_string(const FormulaPtr& f) {
  Stack stack;
  FormulaPtr s = simplify(f);
  return rec(s, stack);
}

bool canon_equal(const FormulaPtr& a, const FormulaPtr& b) {
  return canon_string(a) == canon_string(b);
}

}  // namespace gpv
