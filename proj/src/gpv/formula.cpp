#include "gpv/formula.hpp"

#include "gpv/diagnostics.hpp"

#include <algorithm>

namespace gpv {

namespace {
FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }
}  // namespace

FormulaPtr f_true() {
  static FormulaPtr t = make({FKind::True});
  return t;
}

FormulaPtr f_false() {
  static FormulaPtr t = make({FKind::False});
  return t;
}

FormulaPtr f_not(FormulaPtr a) {
  Formula f{FKind::Not};
  f.kids = {std::move(a)};
  return make(std::move(f));
}

namespace {
// Conjunction/disjunction are kept flat (n-ary); nesting of the same
// connective splices in place.
std::vector<FormulaPtr> splice(FKind kind, std::vector<FormulaPtr> kids) {
  bool nested = false;
  for (const auto& k : kids) nested |= (k->kind == kind);
  if (!nested) return kids;
  std::vector<FormulaPtr> flat;
  for (auto& k : kids) {
    if (k->kind == kind) {
      flat.insert(flat.end(), k->kids.begin(), k->kids.end());
    } else {
      flat.push_back(std::move(k));
    }
  }
  return flat;
}
}  // namespace

FormulaPtr f_and(std::vector<FormulaPtr> kids) {
  kids = splice(FKind::And, std::move(kids));
  if (kids.empty()) return f_true();
  if (kids.size() == 1) return kids[0];
  Formula f{FKind::And};
  f.kids = std::move(kids);
  return make(std::move(f));
}

FormulaPtr f_or(std::vector<FormulaPtr> kids) {
  kids = splice(FKind::Or, std::move(kids));
  if (kids.empty()) return f_false();
  if (kids.size() == 1) return kids[0];
  Formula f{FKind::Or};
  f.kids = std::move(kids);
  return make(std::move(f));
}

FormulaPtr f_and2(FormulaPtr a, FormulaPtr b) { return f_and({std::move(a), std::move(b)}); }
FormulaPtr f_or2(FormulaPtr a, FormulaPtr b) { return f_or({std::move(a), std::move(b)}); }

FormulaPtr f_exists(QKind q, const std::string& var, FormulaPtr body) {
  Formula f{FKind::Exists};
  f.q = q;
  f.var = var;
  f.kids = {std::move(body)};
  return make(std::move(f));
}

FormulaPtr f_forall(QKind q, const std::string& var, FormulaPtr body) {
  return f_not(f_exists(q, var, f_not(std::move(body))));
}

FormulaPtr f_cmp(CmpOp op, TermPtr lhs, TermPtr rhs) {
  Formula f{FKind::Cmp};
  f.op = op;
  f.lhs = std::move(lhs);
  f.rhs = std::move(rhs);
  return make(std::move(f));
}

FormulaPtr f_type(Sort s, TermPtr t) {
  Formula f{FKind::TypePred};
  f.tsort = s;
  f.lhs = std::move(t);
  return make(std::move(f));
}

FormulaPtr f_root(TermPtr t) {
  Formula f{FKind::RootPred};
  f.lhs = std::move(t);
  return make(std::move(f));
}

FormulaPtr f_edge(TermPtr src, TermPtr tgt, TermPtr label, bool has_mark, Mark mark) {
  Formula f{FKind::EdgePred};
  f.lhs = std::move(src);
  f.rhs = std::move(tgt);
  f.elabel = std::move(label);
  f.has_emark = has_mark;
  f.emark = mark;
  return make(std::move(f));
}

Sort qkind_sort(QKind q) {
  switch (q) {
    case QKind::V: return Sort::Node;
    case QKind::E: return Sort::Edge;
    case QKind::L: return Sort::List;
  }
  return Sort::List;
}

bool equal_formulas(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FKind::True:
    case FKind::False: return true;
    case FKind::Exists:
      if (a->q != b->q || a->var != b->var) return false;
      break;
    case FKind::Cmp:
      if (a->op != b->op) return false;
      if (!equal_terms(a->lhs, b->lhs) || !equal_terms(a->rhs, b->rhs)) return false;
      break;
    case FKind::TypePred:
      return a->tsort == b->tsort && equal_terms(a->lhs, b->lhs);
    case FKind::RootPred:
      return equal_terms(a->lhs, b->lhs);
    case FKind::EdgePred:
      if (!equal_terms(a->lhs, b->lhs) || !equal_terms(a->rhs, b->rhs)) return false;
      if ((a->elabel == nullptr) != (b->elabel == nullptr)) return false;
      if (a->elabel && !equal_terms(a->elabel, b->elabel)) return false;
      return a->has_emark == b->has_emark && (!a->has_emark || a->emark == b->emark);
    default: break;
  }
  if (a->kids.size() != b->kids.size()) return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!equal_formulas(a->kids[i], b->kids[i])) return false;
  return true;
}

// Printing -------------------------------------------------------------------

namespace {

int f_prec(const Formula& f) {
  switch (f.kind) {
    case FKind::Or: return 1;
    case FKind::And: return 2;
    default: return 3;
  }
}

const char* cmp_name(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return " = ";
    case CmpOp::Ne: return " != ";
    case CmpOp::Lt: return " < ";
    case CmpOp::Le: return " <= ";
    case CmpOp::Gt: return " > ";
    case CmpOp::Ge: return " >= ";
  }
  return "?";
}

const char* quant_name(QKind q) {
  switch (q) {
    case QKind::V: return "existsV";
    case QKind::E: return "existsE";
    case QKind::L: return "existsL";
  }
  return "?";
}

void print_rec(const FormulaPtr& f, int parent_prec, std::string& out) {
  int p = f_prec(*f);
  switch (f->kind) {
    case FKind::True: out += "true"; return;
    case FKind::False: out += "false"; return;
    case FKind::Not:
      out += "~";
      print_rec(f->kids[0], 3, out);
      return;
    case FKind::And:
    case FKind::Or: {
      bool paren = p < parent_prec;
      if (paren) out += "(";
      const char* op = f->kind == FKind::And ? " /\\ " : " \\/ ";
      for (size_t i = 0; i < f->kids.size(); ++i) {
        if (i) out += op;
        print_rec(f->kids[i], p + (i ? 1 : 0), out);
      }
      if (paren) out += ")";
      return;
    }
    case FKind::Exists: {
      // Group runs of same-kind binders: existsV x, y (...).
      out += quant_name(f->q);
      out += " ";
      out += f->var;
      const Formula* cur = f.get();
      while (cur->kids[0]->kind == FKind::Exists && cur->kids[0]->q == cur->q) {
        cur = cur->kids[0].get();
        out += ", " + cur->var;
      }
      out += " (";
      print_rec(cur->kids[0], 0, out);
      out += ")";
      return;
    }
    case FKind::Cmp:
      out += print_term(f->lhs);
      out += cmp_name(f->op);
      out += print_term(f->rhs);
      return;
    case FKind::TypePred:
      out += sort_name(f->tsort);
      out += "(" + print_term(f->lhs) + ")";
      return;
    case FKind::RootPred:
      out += "root(" + print_term(f->lhs) + ")";
      return;
    case FKind::EdgePred:
      out += "edge(" + print_term(f->lhs) + ", " + print_term(f->rhs);
      if (f->elabel) out += ", " + print_term(f->elabel);
      if (f->has_emark) out += std::string(", ") + mark_name(f->emark);
      out += ")";
      return;
  }
}

}  // namespace

std::string print_formula(const FormulaPtr& f) {
  std::string out;
  print_rec(f, 0, out);
  return out;
}

// Variable bookkeeping --------------------------------------------------------

namespace {

void term_free_vars(const TermPtr& t, std::set<std::string>& bound,
                    std::map<std::string, Sort>& out) {
  if (t->kind == TermKind::Var) {
    if (!bound.count(t->text)) out.emplace(t->text, t->sort);
    return;
  }
  for (const auto& a : t->args) term_free_vars(a, bound, out);
}

void free_vars_rec(const FormulaPtr& f, std::set<std::string>& bound,
                   std::map<std::string, Sort>& out) {
  switch (f->kind) {
    case FKind::Exists: {
      bool fresh = bound.insert(f->var).second;
      free_vars_rec(f->kids[0], bound, out);
      if (fresh) bound.erase(f->var);
      return;
    }
    case FKind::Cmp:
      term_free_vars(f->lhs, bound, out);
      term_free_vars(f->rhs, bound, out);
      return;
    case FKind::TypePred:
    case FKind::RootPred:
      term_free_vars(f->lhs, bound, out);
      return;
    case FKind::EdgePred:
      term_free_vars(f->lhs, bound, out);
      term_free_vars(f->rhs, bound, out);
      if (f->elabel) term_free_vars(f->elabel, bound, out);
      return;
    default:
      for (const auto& k : f->kids) free_vars_rec(k, bound, out);
      return;
  }
}

}  // namespace

std::map<std::string, Sort> free_vars(const FormulaPtr& f) {
  std::set<std::string> bound;
  std::map<std::string, Sort> out;
  free_vars_rec(f, bound, out);
  return out;
}

bool is_closed(const FormulaPtr& f) { return free_vars(f).empty(); }

namespace {
void all_vars_rec(const FormulaPtr& f, std::set<std::string>& out) {
  if (f->kind == FKind::Exists) out.insert(f->var);
  if (f->lhs) term_vars(f->lhs, out);
  if (f->rhs) term_vars(f->rhs, out);
  if (f->elabel) term_vars(f->elabel, out);
  for (const auto& k : f->kids) all_vars_rec(k, out);
}

void term_constants(const TermPtr& t, std::set<std::string>& nodes,
                    std::set<std::string>& edges) {
  if (t->kind == TermKind::NodeConst) nodes.insert(t->text);
  if (t->kind == TermKind::EdgeConst) edges.insert(t->text);
  if (t->kind == TermKind::InCon || t->kind == TermKind::OutCon) {
    // argument is a node constant
  }
  for (const auto& a : t->args) term_constants(a, nodes, edges);
}
}  // namespace

std::set<std::string> all_var_names(const FormulaPtr& f) {
  std::set<std::string> out;
  all_vars_rec(f, out);
  return out;
}

void collect_constants(const FormulaPtr& f, std::set<std::string>& nodes,
                       std::set<std::string>& edges) {
  if (f->lhs) term_constants(f->lhs, nodes, edges);
  if (f->rhs) term_constants(f->rhs, nodes, edges);
  if (f->elabel) term_constants(f->elabel, nodes, edges);
  for (const auto& k : f->kids) collect_constants(k, nodes, edges);
}

// Substitution ----------------------------------------------------------------

namespace {

template <typename TermFn>
FormulaPtr map_terms(const FormulaPtr& f, const TermFn& fn) {
  switch (f->kind) {
    case FKind::Cmp: {
      TermPtr l = fn(f->lhs), r = fn(f->rhs);
      if (l == f->lhs && r == f->rhs) return f;
      return f_cmp(f->op, l, r);
    }
    case FKind::TypePred: {
      TermPtr l = fn(f->lhs);
      return l == f->lhs ? f : f_type(f->tsort, l);
    }
    case FKind::RootPred: {
      TermPtr l = fn(f->lhs);
      return l == f->lhs ? f : f_root(l);
    }
    case FKind::EdgePred: {
      TermPtr s = fn(f->lhs), t = fn(f->rhs);
      TermPtr lab = f->elabel ? fn(f->elabel) : nullptr;
      if (s == f->lhs && t == f->rhs && lab == f->elabel) return f;
      return f_edge(s, t, lab, f->has_emark, f->emark);
    }
    default: return f;
  }
}

FormulaPtr rebuild(const FormulaPtr& f, std::vector<FormulaPtr> kids) {
  Formula copy = *f;
  copy.kids = std::move(kids);
  return std::make_shared<const Formula>(std::move(copy));
}

}  // namespace

FormulaPtr subst_var(const FormulaPtr& f, const std::string& name, const TermPtr& repl) {
  if (f->kind == FKind::Exists && f->var == name) return f;  // shadowed
  if (f->kids.empty())
    return map_terms(f, [&](const TermPtr& t) { return term_subst_var(t, name, repl); });
  bool changed = false;
  std::vector<FormulaPtr> kids;
  kids.reserve(f->kids.size());
  for (const auto& k : f->kids) {
    FormulaPtr n = subst_var(k, name, repl);
    changed |= (n != k);
    kids.push_back(std::move(n));
  }
  if (!changed) return f;
  return rebuild(f, std::move(kids));
}

FormulaPtr subst_term(const FormulaPtr& f, const TermPtr& pattern, const TermPtr& repl) {
  if (f->kind == FKind::Exists && term_has_var(pattern, f->var)) return f;
  if (f->kids.empty())
    return map_terms(f, [&](const TermPtr& t) { return term_rewrite(t, pattern, repl); });
  bool changed = false;
  std::vector<FormulaPtr> kids;
  kids.reserve(f->kids.size());
  for (const auto& k : f->kids) {
    FormulaPtr n = subst_term(k, pattern, repl);
    changed |= (n != k);
    kids.push_back(std::move(n));
  }
  if (!changed) return f;
  return rebuild(f, std::move(kids));
}

// Alpha-renaming of label variables -------------------------------------------

namespace {

TermPtr rename_in_term(const TermPtr& t, const std::map<std::string, std::string>& env) {
  if (t->kind == TermKind::Var && is_label_sort(t->sort)) {
    auto it = env.find(t->text);
    if (it != env.end()) return t_var(it->second, t->sort);
    return t;
  }
  if (t->args.empty()) return t;
  bool changed = false;
  std::vector<TermPtr> args;
  for (const auto& a : t->args) {
    TermPtr n = rename_in_term(a, env);
    changed |= (n != a);
    args.push_back(std::move(n));
  }
  if (!changed) return t;
  Term copy = *t;
  copy.args = std::move(args);
  return std::make_shared<const Term>(std::move(copy));
}

FormulaPtr rename_rec(const FormulaPtr& f, std::map<std::string, std::string>& env,
                      const std::set<std::string>& avoid, std::set<std::string>& used) {
  if (f->kind == FKind::Exists) {
    std::string name = f->var;
    bool shadows = env.count(name) || (f->q == QKind::L && avoid.count(name));
    std::string fresh = name;
    if (f->q == QKind::L && avoid.count(name)) {
      int i = 0;
      do {
        fresh = name + std::to_string(i++);
      } while (avoid.count(fresh) || used.count(fresh));
      used.insert(fresh);
    }
    auto saved = env;
    if (shadows && fresh == name) env.erase(name);
    if (fresh != name) env[name] = fresh;
    FormulaPtr body = rename_rec(f->kids[0], env, avoid, used);
    env = std::move(saved);
    if (fresh == name && body == f->kids[0]) return f;
    return f_exists(f->q, fresh, body);
  }
  if (f->kids.empty())
    return map_terms(f, [&](const TermPtr& t) { return rename_in_term(t, env); });
  bool changed = false;
  std::vector<FormulaPtr> kids;
  for (const auto& k : f->kids) {
    FormulaPtr n = rename_rec(k, env, avoid, used);
    changed |= (n != k);
    kids.push_back(std::move(n));
  }
  if (!changed) return f;
  return rebuild(f, std::move(kids));
}

}  // namespace

FormulaPtr rename_label_vars_apart(const FormulaPtr& f, const std::set<std::string>& avoid) {
  std::set<std::string> used = all_var_names(f);
  std::map<std::string, std::string> env;
  // Free label variables that collide get renamed too.
  for (const auto& [name, sort] : free_vars(f)) {
    if (is_label_sort(sort) && avoid.count(name)) {
      int i = 0;
      std::string fresh;
      do {
        fresh = name + std::to_string(i++);
      } while (avoid.count(fresh) || used.count(fresh));
      used.insert(fresh);
      env[name] = fresh;
    }
  }
  return rename_rec(f, env, avoid, used);
}

TermPtr term_transform(const TermPtr& t, const std::function<TermPtr(const TermPtr&)>& fn) {
  TermPtr cur = t;
  if (!t->args.empty()) {
    bool changed = false;
    std::vector<TermPtr> args;
    args.reserve(t->args.size());
    for (const auto& a : t->args) {
      TermPtr n = term_transform(a, fn);
      changed |= (n != a);
      args.push_back(std::move(n));
    }
    if (changed) {
      Term copy = *t;
      copy.args = std::move(args);
      cur = std::make_shared<const Term>(std::move(copy));
    }
  }
  return fn(cur);
}

FormulaPtr formula_transform_terms(const FormulaPtr& f,
                                   const std::function<TermPtr(const TermPtr&)>& fn) {
  if (f->kids.empty())
    return map_terms(f, [&](const TermPtr& t) { return term_transform(t, fn); });
  bool changed = false;
  std::vector<FormulaPtr> kids;
  kids.reserve(f->kids.size());
  for (const auto& k : f->kids) {
    FormulaPtr n = formula_transform_terms(k, fn);
    changed |= (n != k);
    kids.push_back(std::move(n));
  }
  if (!changed) return f;
  return rebuild(f, std::move(kids));
}

FormulaPtr rewrite_constants(const FormulaPtr& f,
                             const std::map<std::string, std::string>& node_ren,
                             const std::map<std::string, std::string>& edge_ren) {
  return formula_transform_terms(f, [&](const TermPtr& t) -> TermPtr {
    if (t->kind == TermKind::NodeConst) {
      auto it = node_ren.find(t->text);
      if (it != node_ren.end()) return t_node(it->second);
    } else if (t->kind == TermKind::EdgeConst) {
      auto it = edge_ren.find(t->text);
      if (it != edge_ren.end()) return t_edge(it->second);
    }
    return t;
  });
}

FormulaPtr desugar_edge_predicates(const FormulaPtr& f) {
  if (f->kind == FKind::EdgePred) {
    // Fresh edge variable not clashing with anything in the atom.
    std::set<std::string> used;
    term_vars(f->lhs, used);
    term_vars(f->rhs, used);
    if (f->elabel) term_vars(f->elabel, used);
    std::string z = "z";
    int i = 0;
    while (used.count(z)) z = "z" + std::to_string(i++);
    TermPtr ev = t_var(z, Sort::Edge);
    std::vector<FormulaPtr> body;
    body.push_back(f_cmp(CmpOp::Eq, t_fn(TermKind::Source, ev), f->lhs));
    body.push_back(f_cmp(CmpOp::Eq, t_fn(TermKind::Target, ev), f->rhs));
    if (f->elabel) body.push_back(f_cmp(CmpOp::Eq, t_fn(TermKind::LabelE, ev), f->elabel));
    if (f->has_emark && f->emark != Mark::Any)
      body.push_back(f_cmp(CmpOp::Eq, t_fn(TermKind::MarkE, ev), t_mark(f->emark)));
    return f_exists(QKind::E, z, f_and(std::move(body)));
  }
  if (f->kids.empty()) return f;
  bool changed = false;
  std::vector<FormulaPtr> kids;
  for (const auto& k : f->kids) {
    FormulaPtr n = desugar_edge_predicates(k);
    changed |= (n != k);
    kids.push_back(std::move(n));
  }
  if (!changed) return f;
  return rebuild(f, std::move(kids));
}

}  // namespace gpv
