#include "gpv/eval.hpp"

#include "gpv/diagnostics.hpp"

namespace gpv {

const Evaluator::Value* Evaluator::lookup(const std::string& name) const {
  for (auto it = env_.rbegin(); it != env_.rend(); ++it)
    if (*it->first == name) return &it->second;
  return nullptr;
}

Evaluator::Value Evaluator::term(const TermPtr& t, bool soft) {
  Value v;
  switch (t->kind) {
    case TermKind::Empty:
      v.k = Value::ListV;
      return v;
    case TermKind::IntConst:
      v.k = Value::ListV;
      v.list = {Atom::of_int(t->num)};
      return v;
    case TermKind::StrConst:
      v.k = Value::ListV;
      v.list = {Atom::of_str(t->text)};
      return v;
    case TermKind::MarkConst:
      v.k = Value::MarkV;
      v.mark = t->mark;
      return v;
    case TermKind::Var: {
      const Value* b = lookup(t->text);
      if (!b) {
        if (soft) return v;  // ErrorV
        fail(Err::UnboundVariable, t->text);
      }
      return *b;
    }
    case TermKind::NodeConst: {
      int idx = g_.node_index(t->text);
      if (idx < 0) {
        if (soft) return v;
        fail(Err::UnboundVariable, "node identifier " + t->text + " not in graph");
      }
      v.k = Value::NodeV;
      v.idx = idx;
      return v;
    }
    case TermKind::EdgeConst: {
      int idx = g_.edge_index(t->text);
      if (idx < 0) {
        if (soft) return v;
        fail(Err::UnboundVariable, "edge identifier " + t->text + " not in graph");
      }
      v.k = Value::EdgeV;
      v.idx = idx;
      return v;
    }
    case TermKind::InCon:
    case TermKind::OutCon:
      fail(Err::ResidualAuxTerm, print_term(t));
    default:
      break;
  }
  // compound terms
  auto list_arg = [&](int i, ListValue& out) {
    Value a = term(t->args[i], soft);
    if (a.k != Value::ListV) return false;
    out = std::move(a.list);
    return true;
  };
  switch (t->kind) {
    case TermKind::ListConcat: {
      ListValue a, b;
      if (!list_arg(0, a) || !list_arg(1, b)) return v;
      a.insert(a.end(), b.begin(), b.end());
      v.k = Value::ListV;
      v.list = std::move(a);
      return v;
    }
    case TermKind::StrConcat: {
      ListValue a, b;
      if (!list_arg(0, a) || !list_arg(1, b)) return v;
      if (!is_string_value(a) || !is_string_value(b)) return v;
      v.k = Value::ListV;
      v.list = {Atom::of_str(a[0].str + b[0].str)};
      return v;
    }
    case TermKind::Add:
    case TermKind::Sub:
    case TermKind::Mul:
    case TermKind::Div: {
      ListValue a, b;
      if (!list_arg(0, a) || !list_arg(1, b)) return v;
      if (!is_int_value(a) || !is_int_value(b)) return v;
      long long x = a[0].num, y = b[0].num, r = 0;
      switch (t->kind) {
        case TermKind::Add: r = x + y; break;
        case TermKind::Sub: r = x - y; break;
        case TermKind::Mul: r = x * y; break;
        default:
          if (y == 0) {
            diags_.push_back("division by zero in " + print_term(t));
            return v;
          }
          r = x / y;
          break;
      }
      v.k = Value::ListV;
      v.list = {Atom::of_int(r)};
      return v;
    }
    case TermKind::Length: {
      ListValue a;
      if (!list_arg(0, a)) return v;
      long long len = is_string_value(a) ? (long long)a[0].str.size() : (long long)a.size();
      v.k = Value::ListV;
      v.list = {Atom::of_int(len)};
      return v;
    }
    case TermKind::Indeg:
    case TermKind::Outdeg: {
      Value n = term(t->args[0], soft);
      if (n.k != Value::NodeV) return v;
      v.k = Value::ListV;
      v.list = {Atom::of_int(t->kind == TermKind::Indeg ? g_.indeg(n.idx) : g_.outdeg(n.idx))};
      return v;
    }
    case TermKind::Source:
    case TermKind::Target: {
      Value e = term(t->args[0], soft);
      if (e.k != Value::EdgeV) return v;
      v.k = Value::NodeV;
      v.idx = t->kind == TermKind::Source ? g_.edges[e.idx].src : g_.edges[e.idx].tgt;
      return v;
    }
    case TermKind::LabelV: {
      Value n = term(t->args[0], soft);
      if (n.k != Value::NodeV) return v;
      v.k = Value::ListV;
      v.list = g_.nodes[n.idx].label;
      return v;
    }
    case TermKind::LabelE: {
      Value e = term(t->args[0], soft);
      if (e.k != Value::EdgeV) return v;
      v.k = Value::ListV;
      v.list = g_.edges[e.idx].label;
      return v;
    }
    case TermKind::MarkV: {
      Value n = term(t->args[0], soft);
      if (n.k != Value::NodeV) return v;
      v.k = Value::MarkV;
      v.mark = g_.nodes[n.idx].mark;
      return v;
    }
    case TermKind::MarkE: {
      Value e = term(t->args[0], soft);
      if (e.k != Value::EdgeV) return v;
      v.k = Value::MarkV;
      v.mark = g_.edges[e.idx].mark;
      return v;
    }
    default:
      return v;
  }
}

namespace {
// `any` in a formula's mark position is a wildcard matching every mark.
bool marks_eq(Mark a, Mark b) {
  if (a == Mark::Any || b == Mark::Any) return true;
  return a == b;
}
}  // namespace

bool Evaluator::formula(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True: return true;
    case FKind::False: return false;
    case FKind::Not: return !formula(f->kids[0]);
    case FKind::And:
      for (const auto& k : f->kids)
        if (!formula(k)) return false;
      return true;
    case FKind::Or:
      for (const auto& k : f->kids)
        if (formula(k)) return true;
      return false;
    case FKind::Exists: {
      if (f->q == QKind::L) return exists_label(f);
      size_t n = f->q == QKind::V ? g_.nodes.size() : g_.edges.size();
      Value v;
      v.k = f->q == QKind::V ? Value::NodeV : Value::EdgeV;
      env_.emplace_back(&f->var, v);
      for (size_t i = 0; i < n; ++i) {
        env_.back().second.idx = (int)i;
        if (formula(f->kids[0])) {
          env_.pop_back();
          return true;
        }
      }
      env_.pop_back();
      return false;
    }
    case FKind::Cmp: {
      Value a = term(f->lhs, false);
      Value b = term(f->rhs, false);
      if (a.k == Value::ErrorV || b.k == Value::ErrorV) return false;
      if (a.k != b.k) return false;
      switch (f->op) {
        case CmpOp::Eq:
        case CmpOp::Ne: {
          bool eq;
          if (a.k == Value::ListV)
            eq = a.list == b.list;
          else if (a.k == Value::MarkV)
            eq = marks_eq(a.mark, b.mark);
          else
            eq = a.idx == b.idx;
          return f->op == CmpOp::Eq ? eq : !eq;
        }
        default: {
          if (a.k != Value::ListV || !is_int_value(a.list) || !is_int_value(b.list))
            return false;
          long long x = a.list[0].num, y = b.list[0].num;
          switch (f->op) {
            case CmpOp::Lt: return x < y;
            case CmpOp::Le: return x <= y;
            case CmpOp::Gt: return x > y;
            case CmpOp::Ge: return x >= y;
            default: return false;
          }
        }
      }
    }
    case FKind::TypePred: {
      Value a = term(f->lhs, false);
      if (a.k != Value::ListV) return false;
      return value_has_sort(a.list, f->tsort);
    }
    case FKind::RootPred: {
      Value a = term(f->lhs, false);
      if (a.k != Value::NodeV) return false;
      return g_.nodes[a.idx].rooted;
    }
    case FKind::EdgePred: {
      Value a = term(f->lhs, false);
      Value b = term(f->rhs, false);
      if (a.k != Value::NodeV || b.k != Value::NodeV) return false;
      ListValue want;
      bool check_label = false;
      if (f->elabel) {
        Value l = term(f->elabel, false);
        if (l.k != Value::ListV) return false;
        want = std::move(l.list);
        check_label = true;
      }
      for (int ei : g_.out_edges(a.idx)) {
        const auto& e = g_.edges[ei];
        if (e.tgt != b.idx) continue;
        if (check_label && !(e.label == want)) continue;
        if (f->has_emark && !marks_eq(e.mark, f->emark)) continue;
        return true;
      }
      return false;
    }
  }
  return false;
}

// existsL: try values forced by top-level equations before falling back to
// full enumeration of the universe's list domain.
void Evaluator::scan_candidates(const FormulaPtr& body, const std::string& var,
                                std::vector<ListValue>& out, bool& determined) {
  if (body->kind == FKind::And) {
    for (const auto& k : body->kids) scan_candidates(k, var, out, determined);
    return;
  }
  if (body->kind != FKind::Cmp || body->op != CmpOp::Eq) return;
  auto is_var = [&](const TermPtr& t) {
    return t->kind == TermKind::Var && t->text == var;
  };
  auto try_value = [&](const TermPtr& t) -> bool {
    if (term_has_var(t, var)) return false;
    Value v = term(t, /*soft=*/true);
    if (v.k != Value::ListV) return false;
    out.push_back(std::move(v.list));
    determined = true;
    return true;
  };
  const TermPtr& l = body->lhs;
  const TermPtr& r = body->rhs;
  if (is_var(l) && try_value(r)) return;
  if (is_var(r) && try_value(l)) return;
  // Linear shape: <ground> = a (+|-) b with exactly one side being the
  // variable, e.g. lE(w) = d+e when d is already bound.
  auto solve_linear = [&](const TermPtr& ground, const TermPtr& arith) {
    if (arith->kind != TermKind::Add && arith->kind != TermKind::Sub) return;
    if (term_has_var(ground, var)) return;
    Value g = term(ground, true);
    if (g.k != Value::ListV || !is_int_value(g.list)) return;
    const TermPtr& p = arith->args[0];
    const TermPtr& q = arith->args[1];
    bool p_is = is_var(p), q_is = is_var(q);
    if (p_is == q_is) return;
    const TermPtr& other = p_is ? q : p;
    if (term_has_var(other, var)) return;
    Value o = term(other, true);
    if (o.k != Value::ListV || !is_int_value(o.list)) return;
    long long gv = g.list[0].num, ov = o.list[0].num, x = 0;
    if (arith->kind == TermKind::Add) {
      x = gv - ov;  // g = x + o  or  g = o + x
    } else if (p_is) {
      x = gv + ov;  // g = x - o
    } else {
      x = ov - gv;  // g = o - x
    }
    out.push_back({Atom::of_int(x)});
    determined = true;
  };
  solve_linear(l, r);
  solve_linear(r, l);
}

bool Evaluator::exists_label(const FormulaPtr& f) {
  const FormulaPtr& body = f->kids[0];
  if (!free_vars(body).count(f->var)) return formula(body);
  std::vector<ListValue> candidates;
  bool determined = false;
  scan_candidates(body, f->var, candidates, determined);
  Value v;
  v.k = Value::ListV;
  env_.emplace_back(&f->var, v);
  bool result = false;
  if (determined) {
    for (auto& c : candidates) {
      if (!u_.contains(c)) continue;
      env_.back().second.list = std::move(c);
      if (formula(body)) {
        result = true;
        break;
      }
    }
  } else {
    for (const auto& c : u_.lists()) {
      env_.back().second.list = c;
      if (formula(body)) {
        result = true;
        break;
      }
    }
  }
  env_.pop_back();
  return result;
}

bool Evaluator::eval(const FormulaPtr& f) {
  env_.clear();
  return formula(f);
}

bool Evaluator::eval(const FormulaPtr& f, const Assignment& a) {
  env_.clear();
  for (const auto& [name, id] : a.node_edge) {
    Value v;
    int ni = g_.node_index(id);
    if (ni >= 0) {
      v.k = Value::NodeV;
      v.idx = ni;
    } else {
      int ei = g_.edge_index(id);
      if (ei < 0) fail(Err::UnboundVariable, "assignment target " + id + " not in graph");
      v.k = Value::EdgeV;
      v.idx = ei;
    }
    env_.emplace_back(&name, v);
  }
  for (const auto& [name, val] : a.labels) {
    Value v;
    v.k = Value::ListV;
    v.list = val;
    env_.emplace_back(&name, v);
  }
  return formula(f);
}

bool eval_on(const HostGraph& g, const FormulaPtr& f, const LabelUniverse& u) {
  Evaluator ev(g, u);
  return ev.eval(f);
}

std::optional<ListValue> eval_label_term(const TermPtr& t, const HostGraph& g,
                                         const std::map<std::string, ListValue>& labels,
                                         const std::map<std::string, int>& node_map) {
  switch (t->kind) {
    case TermKind::Empty: return ListValue{};
    case TermKind::IntConst: return ListValue{Atom::of_int(t->num)};
    case TermKind::StrConst: return ListValue{Atom::of_str(t->text)};
    case TermKind::Var: {
      auto it = labels.find(t->text);
      if (it == labels.end()) return std::nullopt;
      return it->second;
    }
    case TermKind::Indeg:
    case TermKind::Outdeg: {
      const TermPtr& a = t->args[0];
      if (a->kind != TermKind::NodeConst) return std::nullopt;
      auto it = node_map.find(a->text);
      if (it == node_map.end()) return std::nullopt;
      long long d = t->kind == TermKind::Indeg ? g.indeg(it->second) : g.outdeg(it->second);
      return ListValue{Atom::of_int(d)};
    }
    case TermKind::ListConcat: {
      auto a = eval_label_term(t->args[0], g, labels, node_map);
      auto b = eval_label_term(t->args[1], g, labels, node_map);
      if (!a || !b) return std::nullopt;
      a->insert(a->end(), b->begin(), b->end());
      return a;
    }
    case TermKind::StrConcat: {
      auto a = eval_label_term(t->args[0], g, labels, node_map);
      auto b = eval_label_term(t->args[1], g, labels, node_map);
      if (!a || !b || !is_string_value(*a) || !is_string_value(*b)) return std::nullopt;
      return ListValue{Atom::of_str((*a)[0].str + (*b)[0].str)};
    }
    case TermKind::Add:
    case TermKind::Sub:
    case TermKind::Mul:
    case TermKind::Div: {
      auto a = eval_label_term(t->args[0], g, labels, node_map);
      auto b = eval_label_term(t->args[1], g, labels, node_map);
      if (!a || !b || !is_int_value(*a) || !is_int_value(*b)) return std::nullopt;
      long long x = (*a)[0].num, y = (*b)[0].num, r = 0;
      switch (t->kind) {
        case TermKind::Add: r = x + y; break;
        case TermKind::Sub: r = x - y; break;
        case TermKind::Mul: r = x * y; break;
        default:
          if (y == 0) return std::nullopt;
          r = x / y;
          break;
      }
      return ListValue{Atom::of_int(r)};
    }
    case TermKind::Length: {
      auto a = eval_label_term(t->args[0], g, labels, node_map);
      if (!a) return std::nullopt;
      long long len = is_string_value(*a) ? (long long)(*a)[0].str.size() : (long long)a->size();
      return ListValue{Atom::of_int(len)};
    }
    default:
      return std::nullopt;
  }
}

}  // namespace gpv
