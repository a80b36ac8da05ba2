#include "gpv/formula.hpp"

#include <algorithm>

namespace gpv {

namespace {

// Term-level constant folding. Keeps non-ground structure; folds integer
// arithmetic units and fully ground subterms. Division that could trap is
// left in place for evaluation to diagnose.
TermPtr simp_term(const TermPtr& t) {
  if (t->args.empty()) return t;
  std::vector<TermPtr> args;
  bool changed = false;
  for (const auto& a : t->args) {
    TermPtr n = simp_term(a);
    changed |= (n != a);
    args.push_back(std::move(n));
  }
  TermPtr cur = t;
  if (changed) {
    Term copy = *t;
    copy.args = args;
    cur = std::make_shared<const Term>(std::move(copy));
  }
  ListValue v;
  if (term_ground_value(cur, v)) return t_list(v);
  auto is_zero = [](const TermPtr& x) { return x->kind == TermKind::IntConst && x->num == 0; };
  switch (cur->kind) {
    case TermKind::Add:
      if (is_zero(cur->args[0])) return cur->args[1];
      if (is_zero(cur->args[1])) return cur->args[0];
      break;
    case TermKind::Sub:
      if (is_zero(cur->args[1])) return cur->args[0];
      break;
    default: break;
  }
  return cur;
}

CmpOp negate_op(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return CmpOp::Ne;
    case CmpOp::Ne: return CmpOp::Eq;
    case CmpOp::Lt: return CmpOp::Ge;
    case CmpOp::Le: return CmpOp::Gt;
    case CmpOp::Gt: return CmpOp::Le;
    case CmpOp::Ge: return CmpOp::Lt;
  }
  return op;
}

FormulaPtr mk_and(std::vector<FormulaPtr> kids);
FormulaPtr mk_or(std::vector<FormulaPtr> kids);

FormulaPtr mk_not(const FormulaPtr& a) {
  switch (a->kind) {
    case FKind::True: return f_false();
    case FKind::False: return f_true();
    case FKind::Not: return a->kids[0];
    case FKind::And: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : a->kids) kids.push_back(mk_not(k));
      return mk_or(std::move(kids));
    }
    case FKind::Or: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : a->kids) kids.push_back(mk_not(k));
      return mk_and(std::move(kids));
    }
    case FKind::Cmp:
      return f_cmp(negate_op(a->op), a->lhs, a->rhs);
    default:
      return f_not(a);
  }
}

void flatten_into(FKind kind, const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (f->kind == kind) {
    for (const auto& k : f->kids) flatten_into(kind, k, out);
  } else {
    out.push_back(f);
  }
}

FormulaPtr mk_and(std::vector<FormulaPtr> kids) {
  std::vector<FormulaPtr> flat;
  for (const auto& k : kids) flatten_into(FKind::And, k, flat);
  std::vector<FormulaPtr> out;
  for (const auto& k : flat) {
    if (k->kind == FKind::True) continue;
    if (k->kind == FKind::False) return f_false();
    bool dup = false;
    for (const auto& seen : out)
      if (equal_formulas(seen, k)) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(k);
  }
  return f_and(std::move(out));
}

FormulaPtr mk_or(std::vector<FormulaPtr> kids) {
  std::vector<FormulaPtr> flat;
  for (const auto& k : kids) flatten_into(FKind::Or, k, flat);
  std::vector<FormulaPtr> out;
  for (const auto& k : flat) {
    if (k->kind == FKind::False) continue;
    if (k->kind == FKind::True) return f_true();
    bool dup = false;
    for (const auto& seen : out)
      if (equal_formulas(seen, k)) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(k);
  }
  return f_or(std::move(out));
}

// Ground comparison folding. Node/edge identifiers of one graph denote
// distinct items, so distinct constants compare unequal.
FormulaPtr fold_cmp(const FormulaPtr& f) {
  const TermPtr& l = f->lhs;
  const TermPtr& r = f->rhs;
  if ((l->kind == TermKind::NodeConst && r->kind == TermKind::NodeConst) ||
      (l->kind == TermKind::EdgeConst && r->kind == TermKind::EdgeConst)) {
    if (f->op == CmpOp::Eq) return l->text == r->text ? f_true() : f_false();
    if (f->op == CmpOp::Ne) return l->text != r->text ? f_true() : f_false();
    return f;
  }
  if (l->kind == TermKind::MarkConst && r->kind == TermKind::MarkConst) {
    bool eq;
    if (l->mark == Mark::Any || r->mark == Mark::Any) {
      eq = true;  // wildcard matches every mark
    } else {
      eq = l->mark == r->mark;
    }
    if (f->op == CmpOp::Eq) return eq ? f_true() : f_false();
    if (f->op == CmpOp::Ne) return eq ? f_false() : f_true();
    return f;
  }
  ListValue lv, rv;
  if (term_ground_value(l, lv) && term_ground_value(r, rv)) {
    switch (f->op) {
      case CmpOp::Eq: return lv == rv ? f_true() : f_false();
      case CmpOp::Ne: return lv != rv ? f_true() : f_false();
      default: {
        if (!is_int_value(lv) || !is_int_value(rv)) return f_false();
        long long a = lv[0].num, b = rv[0].num;
        bool res = false;
        switch (f->op) {
          case CmpOp::Lt: res = a < b; break;
          case CmpOp::Le: res = a <= b; break;
          case CmpOp::Gt: res = a > b; break;
          case CmpOp::Ge: res = a >= b; break;
          default: break;
        }
        return res ? f_true() : f_false();
      }
    }
  }
  return f;
}

}  // namespace

FormulaPtr simplify(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
    case FKind::RootPred:
    case FKind::EdgePred:
      return f;
    case FKind::Not:
      return mk_not(simplify(f->kids[0]));
    case FKind::And: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(simplify(k));
      return mk_and(std::move(kids));
    }
    case FKind::Or: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(simplify(k));
      return mk_or(std::move(kids));
    }
    case FKind::Exists: {
      FormulaPtr body = simplify(f->kids[0]);
      if (body->kind == FKind::False) return f_false();
      if (f->q == QKind::L) {
        // The label domain is never empty; an unused or trivial binder drops.
        if (body->kind == FKind::True) return f_true();
        if (!free_vars(body).count(f->var)) return body;
      }
      if (body == f->kids[0]) return f;
      return f_exists(f->q, f->var, body);
    }
    case FKind::Cmp: {
      TermPtr l = simp_term(f->lhs);
      TermPtr r = simp_term(f->rhs);
      FormulaPtr atom = (l == f->lhs && r == f->rhs) ? f : f_cmp(f->op, l, r);
      return fold_cmp(atom);
    }
    case FKind::TypePred: {
      TermPtr l = simp_term(f->lhs);
      ListValue v;
      if (term_ground_value(l, v))
        return value_has_sort(v, f->tsort) ? f_true() : f_false();
      if (l == f->lhs) return f;
      return f_type(f->tsort, l);
    }
  }
  return f;
}

}  // namespace gpv
