#include "gpv/slp.hpp"

#include "gpv/diagnostics.hpp"

#include <algorithm>

namespace gpv {

namespace {

bool formula_mentions_term(const FormulaPtr& f, const TermPtr& pattern) {
  if (f->lhs && term_contains(f->lhs, pattern)) return true;
  if (f->rhs && term_contains(f->rhs, pattern)) return true;
  if (f->elabel && term_contains(f->elabel, pattern)) return true;
  if (f->kind == FKind::Exists && term_has_var(pattern, f->var)) return false;  // shadowed
  for (const auto& k : f->kids)
    if (formula_mentions_term(k, pattern)) return true;
  return false;
}

struct Splitter {
  const RuleSchema& r;
  std::vector<std::string> node_ids, edge_ids;

  explicit Splitter(const RuleSchema& rr) : r(rr) {
    for (const auto& n : r.lhs.nodes) node_ids.push_back(n.id);
    for (const auto& e : r.lhs.edges) edge_ids.push_back(e.id);
  }

  FormulaPtr run(const FormulaPtr& c) {
    switch (c->kind) {
      case FKind::Not: return f_not(run(c->kids[0]));
      case FKind::And:
      case FKind::Or: {
        std::vector<FormulaPtr> kids;
        for (const auto& k : c->kids) kids.push_back(run(k));
        return c->kind == FKind::And ? f_and(std::move(kids)) : f_or(std::move(kids));
      }
      case FKind::Exists:
        if (c->q == QKind::L) return f_exists(QKind::L, c->var, run(c->kids[0]));
        if (c->q == QKind::V) return split_node(c);
        return split_edge(c);
      default:
        return c;  // base case: atoms pass through
    }
  }

  FormulaPtr split_node(const FormulaPtr& c) {
    const std::string& x = c->var;
    const FormulaPtr& body = c->kids[0];
    std::vector<FormulaPtr> cases;
    for (const auto& v : node_ids) cases.push_back(run(subst_var(body, x, t_node(v))));
    std::vector<FormulaPtr> guard;
    for (const auto& v : node_ids)
      guard.push_back(f_cmp(CmpOp::Ne, t_var(x, Sort::Node), t_node(v)));
    guard.push_back(run(body));
    cases.push_back(f_exists(QKind::V, x, f_and(std::move(guard))));
    return f_or(std::move(cases));
  }

  FormulaPtr split_edge(const FormulaPtr& c) {
    const std::string& x = c->var;
    const FormulaPtr& body = c->kids[0];
    std::vector<FormulaPtr> cases;
    for (const auto& e : edge_ids) cases.push_back(run(subst_var(body, x, t_edge(e))));
    std::vector<FormulaPtr> guard;
    for (const auto& e : edge_ids)
      guard.push_back(f_cmp(CmpOp::Ne, t_var(x, Sort::Edge), t_edge(e)));
    guard.push_back(inc_cases(body, x));
    cases.push_back(f_exists(QKind::E, x, f_and(std::move(guard))));
    return f_or(std::move(cases));
  }

  // Endpoint case analysis for an edge variable not matched to an L-edge: its
  // source/target may still land on L-nodes. Cases where the body does not
  // mention s(x) resp. t(x) collapse (the sub-cases are exhaustive).
  FormulaPtr inc_cases(const FormulaPtr& body, const std::string& x) {
    TermPtr xv = t_var(x, Sort::Edge);
    TermPtr sx = t_fn(TermKind::Source, xv);
    TermPtr tx = t_fn(TermKind::Target, xv);
    bool uses_s = formula_mentions_term(body, sx);
    bool uses_t = formula_mentions_term(body, tx);
    auto s_eq = [&](const std::string& v) { return f_cmp(CmpOp::Eq, sx, t_node(v)); };
    auto t_eq = [&](const std::string& v) { return f_cmp(CmpOp::Eq, tx, t_node(v)); };
    auto s_all_ne = [&] {
      std::vector<FormulaPtr> out;
      for (const auto& v : node_ids) out.push_back(f_cmp(CmpOp::Ne, sx, t_node(v)));
      return out;
    };
    auto t_all_ne = [&] {
      std::vector<FormulaPtr> out;
      for (const auto& v : node_ids) out.push_back(f_cmp(CmpOp::Ne, tx, t_node(v)));
      return out;
    };
    if (!uses_s && !uses_t) return run(body);
    if (uses_s && !uses_t) {
      std::vector<FormulaPtr> cases;
      for (const auto& v : node_ids)
        cases.push_back(f_and2(s_eq(v), run(subst_term(body, sx, t_node(v)))));
      auto guard = s_all_ne();
      guard.push_back(run(body));
      cases.push_back(f_and(std::move(guard)));
      return f_or(std::move(cases));
    }
    if (!uses_s && uses_t) {
      std::vector<FormulaPtr> cases;
      for (const auto& v : node_ids)
        cases.push_back(f_and2(t_eq(v), run(subst_term(body, tx, t_node(v)))));
      auto guard = t_all_ne();
      guard.push_back(run(body));
      cases.push_back(f_and(std::move(guard)));
      return f_or(std::move(cases));
    }
    // Both endpoints relevant: n^2 + 2n + 1 cases.
    std::vector<FormulaPtr> cases;
    for (const auto& vi : node_ids)
      for (const auto& vj : node_ids)
        cases.push_back(f_and({s_eq(vi), t_eq(vj),
                               run(subst_term(subst_term(body, sx, t_node(vi)), tx,
                                              t_node(vj)))}));
    for (const auto& vi : node_ids) {
      std::vector<FormulaPtr> conj{s_eq(vi)};
      auto tne = t_all_ne();
      conj.insert(conj.end(), tne.begin(), tne.end());
      conj.push_back(run(subst_term(body, sx, t_node(vi))));
      cases.push_back(f_and(std::move(conj)));
    }
    for (const auto& vi : node_ids) {
      auto conj = s_all_ne();
      conj.push_back(t_eq(vi));
      conj.push_back(run(subst_term(body, tx, t_node(vi))));
      cases.push_back(f_and(std::move(conj)));
    }
    auto conj = s_all_ne();
    auto tne = t_all_ne();
    conj.insert(conj.end(), tne.begin(), tne.end());
    conj.push_back(run(body));
    cases.push_back(f_and(std::move(conj)));
    return f_or(std::move(cases));
  }
};

}  // namespace

namespace {
// Split without the variable-disjointness preparation; used by lift, where
// the conjoined left application condition intentionally shares the rule's
// variables.
FormulaPtr split_prepared(const FormulaPtr& c, const RuleSchema& r) {
  Splitter s(r);
  return s.run(desugar_edge_predicates(c));
}
}  // namespace

FormulaPtr split(const FormulaPtr& c, const RuleSchema& r) {
  return split_prepared(rename_label_vars_apart(c, r.param_names()), r);
}

FormulaPtr dang(const RuleSchema& r) {
  std::vector<FormulaPtr> conj;
  for (const auto& n : r.lhs.nodes) {
    if (r.in_interface(n.id)) continue;
    conj.push_back(f_cmp(CmpOp::Eq, t_fn(TermKind::Indeg, t_node(n.id)),
                         t_int(r.lhs.indeg(n.id))));
    conj.push_back(f_cmp(CmpOp::Eq, t_fn(TermKind::Outdeg, t_node(n.id)),
                         t_int(r.lhs.outdeg(n.id))));
  }
  return f_and(std::move(conj));
}

namespace {

// Formula-level part of Val: root predicates over constants fold to L's
// rootedness; terms are rewritten by the term transform.
FormulaPtr val_rec(const FormulaPtr& d, const RuleSchema& r,
                   const std::function<TermPtr(const TermPtr&)>& tfn) {
  if (d->kind == FKind::RootPred && d->lhs->kind == TermKind::NodeConst) {
    const RuleNode* n = r.lhs.node(d->lhs->text);
    if (n && n->rooted) return *n->rooted ? f_true() : f_false();
    return d;
  }
  if (d->kids.empty()) return formula_transform_terms(d, tfn);
  std::vector<FormulaPtr> kids;
  for (const auto& k : d->kids) kids.push_back(val_rec(k, r, tfn));
  Formula copy = *d;
  copy.kids = std::move(kids);
  return std::make_shared<const Formula>(std::move(copy));
}

}  // namespace

FormulaPtr val(const FormulaPtr& d, const RuleSchema& r) {
  auto tfn = [&r](const TermPtr& t) -> TermPtr {
    switch (t->kind) {
      case TermKind::Source:
      case TermKind::Target: {
        if (t->args[0]->kind != TermKind::EdgeConst) return t;
        const RuleEdge* e = r.lhs.edge(t->args[0]->text);
        if (!e) return t;
        return t_node(t->kind == TermKind::Source ? e->src : e->tgt);
      }
      case TermKind::LabelV: {
        if (t->args[0]->kind != TermKind::NodeConst) return t;
        const RuleNode* n = r.lhs.node(t->args[0]->text);
        return n && n->label ? n->label : t;
      }
      case TermKind::MarkV: {
        if (t->args[0]->kind != TermKind::NodeConst) return t;
        const RuleNode* n = r.lhs.node(t->args[0]->text);
        return n && n->mark ? t_mark(*n->mark) : t;
      }
      case TermKind::LabelE: {
        if (t->args[0]->kind != TermKind::EdgeConst) return t;
        const RuleEdge* e = r.lhs.edge(t->args[0]->text);
        return e ? e->label : t;
      }
      case TermKind::MarkE: {
        if (t->args[0]->kind != TermKind::EdgeConst) return t;
        const RuleEdge* e = r.lhs.edge(t->args[0]->text);
        return e ? t_mark(e->mark) : t;
      }
      case TermKind::Indeg:
      case TermKind::Outdeg: {
        if (t->args[0]->kind != TermKind::NodeConst) return t;
        const std::string& id = t->args[0]->text;
        if (!r.lhs.has_node(id)) return t;
        int deg = t->kind == TermKind::Indeg ? r.lhs.indeg(id) : r.lhs.outdeg(id);
        if (r.in_interface(id)) {
          TermKind aux = t->kind == TermKind::Indeg ? TermKind::InCon : TermKind::OutCon;
          return t_bin(TermKind::Add, t_int(deg), t_fn(aux, t->args[0]));
        }
        return t_int(deg);  // deleted node: dangling pins the degree
      }
      default:
        return t;
    }
  };
  return simplify(val_rec(d, r, tfn));
}

FormulaPtr lift(const FormulaPtr& c, const GeneralisedRule& w) {
  FormulaPtr renamed = rename_label_vars_apart(c, w.core.param_names());
  FormulaPtr conjoined = f_and2(renamed, w.ac_left);
  return val(f_and2(split_prepared(conjoined, w.core), dang(w.core)), w.core);
}

namespace {

struct Adjuster {
  const RuleSchema& r;
  std::set<std::string> deleted_nodes, deleted_edges;
  std::vector<std::string> created_nodes, created_edges;

  explicit Adjuster(const RuleSchema& rr) : r(rr) {
    for (const auto& n : r.lhs.nodes)
      if (!r.in_interface(n.id)) deleted_nodes.insert(n.id);
    for (const auto& e : r.lhs.edges) deleted_edges.insert(e.id);
    for (const auto& n : r.rhs.nodes)
      if (!r.in_interface(n.id)) created_nodes.push_back(n.id);
    for (const auto& e : r.rhs.edges) created_edges.push_back(e.id);
  }

  TermPtr strip_aux(const TermPtr& t) const {
    return term_transform(t, [this](const TermPtr& x) -> TermPtr {
      if (x->kind != TermKind::InCon && x->kind != TermKind::OutCon) return x;
      const std::string& id = x->args[0]->text;
      if (!r.in_interface(id))
        fail(Err::ResidualAuxTerm, print_term(x) + " on non-interface node");
      int deg = x->kind == TermKind::InCon ? r.rhs.indeg(id) : r.rhs.outdeg(id);
      TermKind fn = x->kind == TermKind::InCon ? TermKind::Indeg : TermKind::Outdeg;
      return t_bin(TermKind::Sub, t_fn(fn, x->args[0]), t_int(deg));
    });
  }

  bool is_deleted(const TermPtr& t) const {
    if (t->kind == TermKind::NodeConst) return deleted_nodes.count(t->text) > 0;
    if (t->kind == TermKind::EdgeConst) return deleted_edges.count(t->text) > 0;
    return false;
  }

  FormulaPtr run(const FormulaPtr& c) {
    switch (c->kind) {
      case FKind::True:
      case FKind::False:
        return c;
      case FKind::Not:
        return f_not(run(c->kids[0]));
      case FKind::And:
      case FKind::Or: {
        std::vector<FormulaPtr> kids;
        for (const auto& k : c->kids) kids.push_back(run(k));
        return c->kind == FKind::And ? f_and(std::move(kids)) : f_or(std::move(kids));
      }
      case FKind::Exists: {
        FormulaPtr body = run(c->kids[0]);
        std::vector<FormulaPtr> guard;
        if (c->q == QKind::V) {
          for (const auto& v : created_nodes)
            guard.push_back(f_cmp(CmpOp::Ne, t_var(c->var, Sort::Node), t_node(v)));
        } else if (c->q == QKind::E) {
          for (const auto& e : created_edges)
            guard.push_back(f_cmp(CmpOp::Ne, t_var(c->var, Sort::Edge), t_edge(e)));
        }
        guard.push_back(body);
        return f_exists(c->q, c->var, f_and(std::move(guard)));
      }
      case FKind::Cmp: {
        if (c->op == CmpOp::Eq && (is_deleted(c->lhs) || is_deleted(c->rhs)))
          return f_false();
        if (c->op == CmpOp::Ne && (is_deleted(c->lhs) || is_deleted(c->rhs)))
          return f_true();
        return f_cmp(c->op, strip_aux(c->lhs), strip_aux(c->rhs));
      }
      case FKind::TypePred:
        return f_type(c->tsort, strip_aux(c->lhs));
      case FKind::RootPred:
        return f_root(strip_aux(c->lhs));
      case FKind::EdgePred:
        return c;  // only reachable through ac_R, which is already over R
    }
    return c;
  }
};

}  // namespace

FormulaPtr adj(const FormulaPtr& d, const RuleSchema& r) {
  Adjuster a(r);
  FormulaPtr out = simplify(a.run(d));
  // Sanity: no deleted identifier may survive into the condition over R.
  // Identifiers that R reuses for its own items are fine.
  std::set<std::string> ns, es;
  collect_constants(out, ns, es);
  for (const auto& n : ns)
    if (a.deleted_nodes.count(n) && !r.rhs.has_node(n))
      fail(Err::Internal, "deleted node " + n + " survived adjustment");
  for (const auto& e : es)
    if (a.deleted_edges.count(e) && !r.rhs.has_edge(e))
      fail(Err::Internal, "deleted edge " + e + " survived adjustment");
  return out;
}

FormulaPtr spec_graph(const RuleGraph& g, const std::vector<VarDecl>& params) {
  std::set<std::string> used;
  for (const auto& n : g.nodes)
    if (n.label) term_vars(n.label, used);
  for (const auto& e : g.edges) term_vars(e.label, used);

  std::vector<FormulaPtr> conj;
  for (const auto& p : params) {
    if (!used.count(p.name)) continue;
    switch (p.sort) {
      case Sort::Int: conj.push_back(f_type(Sort::Int, t_var(p.name, Sort::Int))); break;
      case Sort::Char: conj.push_back(f_type(Sort::Char, t_var(p.name, Sort::Char))); break;
      case Sort::String:
        conj.push_back(f_type(Sort::String, t_var(p.name, Sort::String)));
        break;
      case Sort::Atom: conj.push_back(f_type(Sort::Atom, t_var(p.name, Sort::Atom))); break;
      default: break;  // list: no constraint
    }
  }
  for (const auto& n : g.nodes) {
    conj.push_back(f_cmp(CmpOp::Eq, t_fn(TermKind::LabelV, t_node(n.id)), n.label));
    conj.push_back(f_cmp(CmpOp::Eq, t_fn(TermKind::MarkV, t_node(n.id)), t_mark(*n.mark)));
    FormulaPtr rooted = f_root(t_node(n.id));
    conj.push_back(*n.rooted ? rooted : f_not(rooted));
  }
  for (const auto& e : g.edges) {
    conj.push_back(f_cmp(CmpOp::Eq, t_fn(TermKind::Source, t_edge(e.id)), t_node(e.src)));
    conj.push_back(f_cmp(CmpOp::Eq, t_fn(TermKind::Target, t_edge(e.id)), t_node(e.tgt)));
    conj.push_back(f_cmp(CmpOp::Eq, t_fn(TermKind::LabelE, t_edge(e.id)), e.label));
    conj.push_back(f_cmp(CmpOp::Eq, t_fn(TermKind::MarkE, t_edge(e.id)), t_mark(e.mark)));
  }
  return f_and(std::move(conj));
}

FormulaPtr shift(const FormulaPtr& c, const GeneralisedRule& w) {
  FormulaPtr lifted = lift(c, w);
  FormulaPtr adjusted = adj(lifted, w.core);
  RuleSchema inv = inverse_schema(w.core);
  return simplify(f_and({adjusted, w.ac_right, spec_graph(w.core.rhs, w.core.params),
                         dang(inv)}));
}

// Variablisation ----------------------------------------------------------------

namespace {

struct VariabliseParts {
  FormulaPtr body;
  std::vector<std::string> node_vars, edge_vars;
  std::vector<FormulaPtr> node_diseqs, edge_diseqs;
};

VariabliseParts variablise_parts(const FormulaPtr& d) {
  std::set<std::string> nodes, edges;
  collect_constants(d, nodes, edges);
  std::set<std::string> used = all_var_names(d);

  static const char* pool[] = {"u", "v", "w", "x", "y", "z"};
  size_t pool_pos = 0;
  int numbered = 1;
  auto fresh = [&]() -> std::string {
    while (pool_pos < 6) {
      std::string cand = pool[pool_pos++];
      if (!used.count(cand)) {
        used.insert(cand);
        return cand;
      }
    }
    for (;; ++numbered) {
      std::string cand = "v" + std::to_string(numbered);
      if (!used.count(cand)) {
        used.insert(cand);
        return cand;
      }
    }
  };

  VariabliseParts out;
  std::map<std::string, std::string> nren, eren;
  for (const auto& id : nodes) {
    std::string name = fresh();
    nren[id] = name;
    out.node_vars.push_back(name);
  }
  for (const auto& id : edges) {
    std::string name = fresh();
    eren[id] = name;
    out.edge_vars.push_back(name);
  }
  out.body = formula_transform_terms(d, [&](const TermPtr& t) -> TermPtr {
    if (t->kind == TermKind::NodeConst && nren.count(t->text))
      return t_var(nren[t->text], Sort::Node);
    if (t->kind == TermKind::EdgeConst && eren.count(t->text))
      return t_var(eren[t->text], Sort::Edge);
    return t;
  });
  for (size_t i = 0; i < out.node_vars.size(); ++i)
    for (size_t j = i + 1; j < out.node_vars.size(); ++j)
      out.node_diseqs.push_back(f_cmp(CmpOp::Ne, t_var(out.node_vars[i], Sort::Node),
                                      t_var(out.node_vars[j], Sort::Node)));
  for (size_t i = 0; i < out.edge_vars.size(); ++i)
    for (size_t j = i + 1; j < out.edge_vars.size(); ++j)
      out.edge_diseqs.push_back(f_cmp(CmpOp::Ne, t_var(out.edge_vars[i], Sort::Edge),
                                      t_var(out.edge_vars[j], Sort::Edge)));
  return out;
}

FormulaPtr list_sorted_label_vars(const FormulaPtr& f) {
  return formula_transform_terms(f, [](const TermPtr& t) -> TermPtr {
    if (t->kind == TermKind::Var && is_label_sort(t->sort) && t->sort != Sort::List)
      return t_var(t->text, Sort::List);
    return t;
  });
}

}  // namespace

FormulaPtr variablise(const FormulaPtr& d) {
  VariabliseParts p = variablise_parts(d);
  std::vector<FormulaPtr> conj;
  conj.insert(conj.end(), p.node_diseqs.begin(), p.node_diseqs.end());
  conj.insert(conj.end(), p.edge_diseqs.begin(), p.edge_diseqs.end());
  conj.push_back(p.body);
  return f_and(std::move(conj));
}

FormulaPtr post_formula(const FormulaPtr& c, const GeneralisedRule& w) {
  FormulaPtr sh = shift(c, w);
  VariabliseParts p = variablise_parts(sh);
  FormulaPtr body = list_sorted_label_vars(p.body);

  std::vector<std::string> label_vars;
  for (const auto& [name, sort] : free_vars(body))
    if (is_label_sort(sort)) label_vars.push_back(name);
  std::sort(label_vars.begin(), label_vars.end());

  FormulaPtr core = body;
  for (auto it = label_vars.rbegin(); it != label_vars.rend(); ++it)
    core = f_exists(QKind::L, *it, core);
  {
    std::vector<FormulaPtr> conj = p.edge_diseqs;
    conj.push_back(core);
    core = f_and(std::move(conj));
  }
  for (auto it = p.edge_vars.rbegin(); it != p.edge_vars.rend(); ++it)
    core = f_exists(QKind::E, *it, core);
  {
    std::vector<FormulaPtr> conj = p.node_diseqs;
    conj.push_back(core);
    core = f_and(std::move(conj));
  }
  for (auto it = p.node_vars.rbegin(); it != p.node_vars.rend(); ++it)
    core = f_exists(QKind::V, *it, core);
  return core;
}

namespace {

void require_closed(const FormulaPtr& c, const char* what) {
  if (!is_closed(c))
    fail(Err::UnboundVariable, std::string(what) + " must be a closed formula");
}

}  // namespace

FormulaPtr slp_rule(const FormulaPtr& c, const RuleSchema& r) {
  require_closed(c, "precondition");
  std::vector<FormulaPtr> disjuncts;
  std::vector<std::string> seen;
  for (const auto& variant : expand_any_marks(r)) {
    FormulaPtr f = post_formula(c, generalise(variant));
    std::string key = canon_string(f);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    disjuncts.push_back(f);
  }
  return simplify(f_or(std::move(disjuncts)));
}

FormulaPtr wlp_rule(const FormulaPtr& d, const RuleSchema& r) {
  require_closed(d, "postcondition");
  FormulaPtr neg = simplify(f_not(d));
  std::vector<FormulaPtr> conjuncts;
  std::vector<std::string> seen;
  for (const auto& variant : expand_any_marks(r)) {
    FormulaPtr f = f_not(post_formula(neg, inverse(generalise(variant))));
    std::string key = canon_string(f);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    conjuncts.push_back(f);
  }
  return simplify(f_and(std::move(conjuncts)));
}

FormulaPtr success_rule(const RuleSchema& r) {
  std::vector<FormulaPtr> disjuncts;
  std::vector<std::string> seen;
  for (const auto& variant : expand_any_marks(r)) {
    FormulaPtr f = post_formula(f_true(), inverse(generalise(variant)));
    std::string key = canon_string(f);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    disjuncts.push_back(f);
  }
  return simplify(f_or(std::move(disjuncts)));
}

}  // namespace gpv
