#include "gpv/rule.hpp"

#include "gpv/diagnostics.hpp"
#include "gpv/eval.hpp"

#include <algorithm>

namespace gpv {

bool RuleSchema::in_interface(const std::string& id) const {
  return std::find(interface_nodes.begin(), interface_nodes.end(), id) !=
         interface_nodes.end();
}

std::map<std::string, Sort> RuleSchema::param_map() const {
  std::map<std::string, Sort> out;
  for (const auto& p : params) out[p.name] = p.sort;
  return out;
}

std::set<std::string> RuleSchema::param_names() const {
  std::set<std::string> out;
  for (const auto& p : params) out.insert(p.name);
  return out;
}

bool RuleSchema::has_any_marks() const {
  for (const auto& n : lhs.nodes)
    if (n.mark && *n.mark == Mark::Any) return true;
  for (const auto& e : lhs.edges)
    if (e.mark == Mark::Any) return true;
  return false;
}

// Simplicity (Def. 2.3) ------------------------------------------------------

namespace {

// One positional item of a flattened list pattern.
struct PatItem {
  enum Kind { ConstAtom, AtomVar, ListVar, StringPat, NonSimple } kind;
  Atom atom;           // ConstAtom
  std::string var;     // AtomVar / ListVar name
  Sort sort = Sort::List;
  TermPtr strpat;      // StringPat
};

bool flatten_list_pattern(const TermPtr& t, std::vector<PatItem>& out) {
  switch (t->kind) {
    case TermKind::Empty: return true;
    case TermKind::IntConst:
      out.push_back({PatItem::ConstAtom, Atom::of_int(t->num), {}, Sort::List, nullptr});
      return true;
    case TermKind::StrConst:
      out.push_back({PatItem::ConstAtom, Atom::of_str(t->text), {}, Sort::List, nullptr});
      return true;
    case TermKind::Var:
      if (t->sort == Sort::List) {
        out.push_back({PatItem::ListVar, {}, t->text, Sort::List, nullptr});
      } else {
        out.push_back({PatItem::AtomVar, {}, t->text, t->sort, nullptr});
      }
      return true;
    case TermKind::ListConcat:
      return flatten_list_pattern(t->args[0], out) && flatten_list_pattern(t->args[1], out);
    case TermKind::StrConcat:
      out.push_back({PatItem::StringPat, {}, {}, Sort::String, t});
      return true;
    default:
      out.push_back({PatItem::NonSimple, {}, {}, Sort::List, nullptr});
      return false;
  }
}

struct StrItem {
  enum Kind { Lit, CharVar, StringVar, Bad } kind;
  std::string lit;
  std::string var;
};

bool flatten_string_pattern(const TermPtr& t, std::vector<StrItem>& out) {
  switch (t->kind) {
    case TermKind::StrConst:
      out.push_back({StrItem::Lit, t->text, {}});
      return true;
    case TermKind::Var:
      if (t->sort == Sort::Char) {
        out.push_back({StrItem::CharVar, {}, t->text});
        return true;
      }
      if (t->sort == Sort::String) {
        out.push_back({StrItem::StringVar, {}, t->text});
        return true;
      }
      out.push_back({StrItem::Bad, {}, {}});
      return false;
    case TermKind::StrConcat:
      return flatten_string_pattern(t->args[0], out) &&
             flatten_string_pattern(t->args[1], out);
    default:
      out.push_back({StrItem::Bad, {}, {}});
      return false;
  }
}

}  // namespace

bool is_simple_expr(const TermPtr& t) {
  std::vector<PatItem> items;
  if (!flatten_list_pattern(t, items)) return false;
  int list_vars = 0;
  for (const auto& it : items) {
    if (it.kind == PatItem::ListVar) ++list_vars;
    if (it.kind == PatItem::StringPat) {
      std::vector<StrItem> sitems;
      if (!flatten_string_pattern(it.strpat, sitems)) return false;
      int svars = 0;
      for (const auto& s : sitems)
        if (s.kind == StrItem::StringVar) ++svars;
      if (svars > 1) return false;
    }
  }
  return list_vars <= 1;
}

// Validation ------------------------------------------------------------------

void validate_rule(const RuleSchema& r) {
  auto params = r.param_map();
  auto check_vars = [&](const TermPtr& t, const char* where) {
    std::set<std::string> vars;
    term_vars(t, vars);
    for (const auto& v : vars)
      if (!params.count(v))
        fail(Err::UndeclaredVariable, r.name + ": variable " + v + " in " + where);
  };
  if (!r.lhs.is_total()) fail(Err::TypeMismatch, r.name + ": left graph must be total");
  if (!r.rhs.is_total()) fail(Err::TypeMismatch, r.name + ": right graph must be total");
  for (const auto& id : r.interface_nodes) {
    if (!r.lhs.has_node(id) || !r.rhs.has_node(id))
      fail(Err::TypeMismatch, r.name + ": interface node " + id + " missing from L or R");
  }
  std::set<std::string> lhs_vars;
  for (const auto& n : r.lhs.nodes) {
    check_vars(n.label, "left-hand graph");
    if (!is_simple_expr(n.label))
      fail(Err::NonSimpleLHS, r.name + ": label " + print_term(n.label));
    if (!is_rule_node_mark(*n.mark))
      fail(Err::TypeMismatch, r.name + ": node mark " + mark_name(*n.mark));
    term_vars(n.label, lhs_vars);
  }
  for (const auto& e : r.lhs.edges) {
    check_vars(e.label, "left-hand graph");
    if (!is_simple_expr(e.label))
      fail(Err::NonSimpleLHS, r.name + ": label " + print_term(e.label));
    if (!is_rule_edge_mark(e.mark))
      fail(Err::TypeMismatch, r.name + ": edge mark " + mark_name(e.mark));
    term_vars(e.label, lhs_vars);
  }
  for (const auto& n : r.rhs.nodes) {
    check_vars(n.label, "right-hand graph");
    std::set<std::string> vs;
    term_vars(n.label, vs);
    for (const auto& v : vs)
      if (!lhs_vars.count(v)) fail(Err::RHSVariableNotInLHS, r.name + ": " + v);
    if (*n.mark == Mark::Any) {
      const RuleNode* ln = r.lhs.node(n.id);
      if (!r.in_interface(n.id) || !ln || *ln->mark != Mark::Any)
        fail(Err::TypeMismatch,
             r.name + ": right-hand `any` mark without matching wildcard on " + n.id);
    } else if (!is_node_mark(*n.mark)) {
      fail(Err::TypeMismatch, r.name + ": node mark " + mark_name(*n.mark));
    }
  }
  for (const auto& e : r.rhs.edges) {
    check_vars(e.label, "right-hand graph");
    std::set<std::string> vs;
    term_vars(e.label, vs);
    for (const auto& v : vs)
      if (!lhs_vars.count(v)) fail(Err::RHSVariableNotInLHS, r.name + ": " + v);
    if (!is_edge_mark(e.mark))
      fail(Err::TypeMismatch, r.name + ": edge mark " + mark_name(e.mark) +
                                  " (wildcards cannot occur on created edges)");
  }
  if (r.condition) {
    std::map<std::string, Sort> cond_vars = free_vars(r.condition);
    for (const auto& [v, s] : cond_vars) {
      if (is_label_sort(s) && !lhs_vars.count(v))
        fail(Err::UndeclaredVariable, r.name + ": condition variable " + v +
                                          " does not occur in the left-hand graph");
    }
    std::set<std::string> cnodes, cedges;
    collect_constants(r.condition, cnodes, cedges);
    for (const auto& id : cnodes)
      if (!r.lhs.has_node(id))
        fail(Err::UndeclaredVariable, r.name + ": condition node " + id);
    for (const auto& id : cedges)
      if (!r.lhs.has_edge(id))
        fail(Err::UndeclaredVariable, r.name + ": condition edge " + id);
  }
}

// Generalisation / inversion ---------------------------------------------------

GeneralisedRule generalise(const RuleSchema& r) {
  GeneralisedRule w;
  w.core = r;
  w.core.condition = f_true();
  w.ac_left = r.condition ? r.condition : f_true();
  w.ac_right = f_true();
  return w;
}

RuleSchema inverse_schema(const RuleSchema& r) {
  RuleSchema inv = r;
  std::swap(inv.lhs, inv.rhs);
  inv.condition = f_true();
  inv.name = r.name + "_inv";
  return inv;
}

GeneralisedRule inverse(const GeneralisedRule& w) {
  GeneralisedRule out;
  out.core = w.core;
  std::swap(out.core.lhs, out.core.rhs);
  out.ac_left = w.ac_right;
  out.ac_right = w.ac_left;
  return out;
}

std::vector<RuleSchema> expand_any_marks(const RuleSchema& r) {
  std::vector<std::string> any_nodes;
  std::vector<std::string> any_edges;
  for (const auto& n : r.lhs.nodes)
    if (*n.mark == Mark::Any) any_nodes.push_back(n.id);
  for (const auto& e : r.lhs.edges)
    if (e.mark == Mark::Any) any_edges.push_back(e.id);
  std::vector<RuleSchema> out;
  std::vector<Mark> node_choice(any_nodes.size());
  std::vector<Mark> edge_choice(any_edges.size());

  std::function<void(size_t)> pick_edge = [&](size_t j) {
    if (j == any_edges.size()) {
      RuleSchema v = r;
      for (size_t i = 0; i < any_nodes.size(); ++i) {
        for (auto& n : v.lhs.nodes)
          if (n.id == any_nodes[i]) n.mark = node_choice[i];
        for (auto& n : v.rhs.nodes)
          if (n.id == any_nodes[i] && n.mark && *n.mark == Mark::Any)
            n.mark = node_choice[i];
      }
      for (size_t i = 0; i < any_edges.size(); ++i)
        for (auto& e : v.lhs.edges)
          if (e.id == any_edges[i]) e.mark = edge_choice[i];
      out.push_back(std::move(v));
      return;
    }
    for (Mark m : any_edge_marks()) {
      edge_choice[j] = m;
      pick_edge(j + 1);
    }
  };
  std::function<void(size_t)> pick_node = [&](size_t i) {
    if (i == any_nodes.size()) {
      pick_edge(0);
      return;
    }
    for (Mark m : any_node_marks()) {
      node_choice[i] = m;
      pick_node(i + 1);
    }
  };
  pick_node(0);
  return out;
}

// Matching ---------------------------------------------------------------------

namespace {

// Label bindings with an undo trail for backtracking.
struct Bindings {
  std::map<std::string, ListValue> vals;
  std::vector<std::string> trail;

  size_t mark() const { return trail.size(); }
  void undo(size_t m) {
    while (trail.size() > m) {
      vals.erase(trail.back());
      trail.pop_back();
    }
  }
  bool bind(const std::string& name, Sort sort, const ListValue& v) {
    auto it = vals.find(name);
    if (it != vals.end()) return it->second == v;
    if (!value_has_sort(v, sort)) return false;
    vals[name] = v;
    trail.push_back(name);
    return true;
  }
};

bool unify_string(const TermPtr& pat, const std::string& value, Bindings& b);

// Matches one atom-position pattern item against one atom.
bool unify_atom_item(const PatItem& item, const Atom& a, Bindings& b) {
  switch (item.kind) {
    case PatItem::ConstAtom: return item.atom == a;
    case PatItem::AtomVar: {
      auto bound = b.vals.find(item.var);
      if (bound != b.vals.end()) return bound->second == ListValue{a};
      return b.bind(item.var, item.sort, {a});
    }
    case PatItem::StringPat:
      if (a.is_int) return false;
      return unify_string(item.strpat, a.str, b);
    default: return false;
  }
}

bool unify_string(const TermPtr& pat, const std::string& value, Bindings& b) {
  std::vector<StrItem> items;
  if (!flatten_string_pattern(pat, items)) return false;
  // Expand bound variables into literals; find the single unbound string var.
  std::vector<StrItem> flat;
  int svar = -1;
  for (auto& it : items) {
    if (it.kind == StrItem::Lit) {
      flat.push_back(it);
    } else {
      auto bound = b.vals.find(it.var);
      if (bound != b.vals.end()) {
        if (!is_string_value(bound->second)) return false;
        flat.push_back({StrItem::Lit, bound->second[0].str, {}});
      } else if (it.kind == StrItem::CharVar) {
        flat.push_back(it);
      } else {
        if (svar >= 0) return false;  // two unbound string vars: not simple
        svar = (int)flat.size();
        flat.push_back(it);
      }
    }
  }
  size_t lo = 0, hi = value.size();
  int end = svar < 0 ? (int)flat.size() : svar;
  for (int i = 0; i < end; ++i) {
    const StrItem& it = flat[i];
    if (it.kind == StrItem::Lit) {
      if (hi - lo < it.lit.size() || value.compare(lo, it.lit.size(), it.lit) != 0)
        return false;
      lo += it.lit.size();
    } else {  // char var
      if (lo >= hi) return false;
      if (!b.bind(it.var, Sort::Char, {Atom::of_str(std::string(1, value[lo]))})) return false;
      ++lo;
    }
  }
  if (svar < 0) return lo == hi;
  for (int i = (int)flat.size() - 1; i > svar; --i) {
    const StrItem& it = flat[i];
    if (it.kind == StrItem::Lit) {
      if (hi - lo < it.lit.size() || value.compare(hi - it.lit.size(), it.lit.size(), it.lit) != 0)
        return false;
      hi -= it.lit.size();
    } else {
      if (lo >= hi) return false;
      if (!b.bind(it.var, Sort::Char, {Atom::of_str(std::string(1, value[hi - 1]))}))
        return false;
      --hi;
    }
  }
  return b.bind(flat[svar].var, Sort::String, {Atom::of_str(value.substr(lo, hi - lo))});
}

enum class UnifyResult { Ok, Fail, NonSimple };

UnifyResult unify_list(const TermPtr& pattern, const ListValue& value, Bindings& b) {
  std::vector<PatItem> raw;
  if (!flatten_list_pattern(pattern, raw)) return UnifyResult::NonSimple;
  // Expand bound list variables positionally; locate the unbound list var.
  std::vector<PatItem> items;
  int lvar = -1;
  for (auto& it : raw) {
    if (it.kind == PatItem::ListVar) {
      auto bound = b.vals.find(it.var);
      if (bound != b.vals.end()) {
        for (const auto& a : bound->second)
          items.push_back({PatItem::ConstAtom, a, {}, Sort::List, nullptr});
        continue;
      }
      if (lvar >= 0) return UnifyResult::NonSimple;
      lvar = (int)items.size();
      items.push_back(it);
      continue;
    }
    if (it.kind == PatItem::AtomVar) {
      auto bound = b.vals.find(it.var);
      if (bound != b.vals.end()) {
        if (bound->second.size() != 1) return UnifyResult::Fail;
        items.push_back({PatItem::ConstAtom, bound->second[0], {}, Sort::List, nullptr});
        continue;
      }
    }
    items.push_back(it);
  }
  if (lvar < 0) {
    if (items.size() != value.size()) return UnifyResult::Fail;
    for (size_t i = 0; i < items.size(); ++i)
      if (!unify_atom_item(items[i], value[i], b)) return UnifyResult::Fail;
    return UnifyResult::Ok;
  }
  size_t before = (size_t)lvar, after = items.size() - lvar - 1;
  if (value.size() < before + after) return UnifyResult::Fail;
  for (size_t i = 0; i < before; ++i)
    if (!unify_atom_item(items[i], value[i], b)) return UnifyResult::Fail;
  for (size_t i = 0; i < after; ++i)
    if (!unify_atom_item(items[lvar + 1 + i], value[value.size() - after + i], b))
      return UnifyResult::Fail;
  ListValue middle(value.begin() + before, value.end() - after);
  return b.bind(items[lvar].var, Sort::List, middle) ? UnifyResult::Ok : UnifyResult::Fail;
}

struct DeferredEq {
  TermPtr expr;
  ListValue value;
};

// Backtracking matcher shared by schema and generalised application.
struct Matcher {
  const RuleSchema& r;
  const HostGraph& g;
  bool allow_nonsimple;
  std::vector<MatchBinding> out;
  bool used_enumeration = false;

  // state
  Bindings b;
  MatchBinding mb;
  std::vector<bool> used_nodes, used_edges;
  std::vector<DeferredEq> deferred;
  const LabelUniverse* universe = nullptr;
  std::set<std::string> must_bind;  // variables needed beyond L-label unification

  Matcher(const RuleSchema& rr, const HostGraph& gg, bool nonsimple, const LabelUniverse* u)
      : r(rr), g(gg), allow_nonsimple(nonsimple), universe(u) {
    used_nodes.assign(g.nodes.size(), false);
    used_edges.assign(g.edges.size(), false);
  }

  bool mark_ok(Mark pat, Mark host, bool node_side, const std::string& id) {
    if (pat == Mark::Any) {
      if (host == Mark::None) return false;
      auto& mu = node_side ? mb.mu_nodes : mb.mu_edges;
      mu[id] = host;  // unique per id, no undo needed beyond erase on fail
      return true;
    }
    return pat == host;
  }

  UnifyResult label_ok(const TermPtr& pat, const ListValue& value) {
    UnifyResult res = unify_list(pat, value, b);
    if (res == UnifyResult::NonSimple && allow_nonsimple) {
      deferred.push_back({pat, value});
      used_enumeration = true;
      return UnifyResult::Ok;
    }
    return res;
  }

  void match_nodes(size_t i) {
    if (i == r.lhs.nodes.size()) {
      match_edges(0);
      return;
    }
    const RuleNode& ln = r.lhs.nodes[i];
    for (size_t j = 0; j < g.nodes.size(); ++j) {
      if (used_nodes[j]) continue;
      const HostNode& hn = g.nodes[j];
      if (*ln.rooted != hn.rooted) continue;
      size_t trail = b.mark();
      size_t dmark = deferred.size();
      if (mark_ok(*ln.mark, hn.mark, true, ln.id) &&
          label_ok(ln.label, hn.label) == UnifyResult::Ok) {
        used_nodes[j] = true;
        mb.nodes[ln.id] = (int)j;
        match_nodes(i + 1);
        used_nodes[j] = false;
        mb.nodes.erase(ln.id);
      }
      mb.mu_nodes.erase(ln.id);
      deferred.resize(dmark);
      b.undo(trail);
    }
  }

  void match_edges(size_t k) {
    if (k == r.lhs.edges.size()) {
      finish();
      return;
    }
    const RuleEdge& le = r.lhs.edges[k];
    int src = mb.nodes[le.src], tgt = mb.nodes[le.tgt];
    for (int ei : g.out_edges(src)) {
      if (used_edges[ei]) continue;
      const HostEdge& he = g.edges[ei];
      if (he.tgt != tgt) continue;
      size_t trail = b.mark();
      size_t dmark = deferred.size();
      if (mark_ok(le.mark, he.mark, false, le.id) &&
          label_ok(le.label, he.label) == UnifyResult::Ok) {
        used_edges[ei] = true;
        mb.edges[le.id] = ei;
        match_edges(k + 1);
        used_edges[ei] = false;
        mb.edges.erase(le.id);
      }
      mb.mu_edges.erase(le.id);
      deferred.resize(dmark);
      b.undo(trail);
    }
  }

  void finish() {
    // Enumerate assignments for variables left open by non-simple labels or
    // needed only by right-hand labels / application conditions.
    std::set<std::string> open;
    for (const auto& d : deferred) {
      std::set<std::string> vs;
      term_vars(d.expr, vs);
      for (const auto& v : vs)
        if (!b.vals.count(v)) open.insert(v);
    }
    for (const auto& v : must_bind)
      if (!b.vals.count(v)) open.insert(v);
    if (open.empty()) {
      if (deferred_ok()) emit();
      return;
    }
    used_enumeration = true;
    std::vector<std::string> vars(open.begin(), open.end());
    auto sorts = r.param_map();
    std::function<void(size_t)> assign = [&](size_t i) {
      if (i == vars.size()) {
        if (deferred_ok()) emit();
        return;
      }
      Sort s = sorts.count(vars[i]) ? sorts[vars[i]] : Sort::List;
      size_t trail = b.mark();
      for (const auto& val : universe->lists()) {
        if (!value_has_sort(val, s)) continue;
        if (b.bind(vars[i], s, val)) assign(i + 1);
        b.undo(trail);
      }
    };
    assign(0);
  }

  bool deferred_ok() {
    if (deferred.empty()) return true;
    std::map<std::string, int> node_map(mb.nodes.begin(), mb.nodes.end());
    for (const auto& d : deferred) {
      auto v = eval_label_term(d.expr, g, b.vals, node_map);
      if (!v || !(*v == d.value)) return false;
    }
    return true;
  }

  void emit() {
    MatchBinding res = mb;
    res.labels = b.vals;
    out.push_back(std::move(res));
  }
};

FormulaPtr instantiate_condition(const RuleSchema& r, const MatchBinding& m,
                                 const HostGraph& g) {
  std::map<std::string, std::string> nren, eren;
  for (const auto& [lid, idx] : m.nodes) nren[lid] = g.nodes[idx].id;
  for (const auto& [lid, idx] : m.edges) eren[lid] = g.edges[idx].id;
  return rewrite_constants(r.condition, nren, eren);
}

}  // namespace

Premorphism to_premorphism(const MatchBinding& m, const HostGraph& g) {
  Premorphism p;
  for (const auto& [lid, idx] : m.nodes) p.node_map[lid] = g.nodes[idx].id;
  for (const auto& [lid, idx] : m.edges) p.edge_map[lid] = g.edges[idx].id;
  return p;
}

std::vector<MatchBinding> find_matches(const RuleSchema& r, const HostGraph& g) {
  Matcher m(r, g, /*allow_nonsimple=*/false, nullptr);
  m.match_nodes(0);
  if (!r.condition || r.condition->kind == FKind::True) return std::move(m.out);
  std::vector<MatchBinding> filtered;
  LabelUniverse u;  // schema conditions are quantifier-free; universe unused
  for (auto& match : m.out) {
    FormulaPtr ground = instantiate_condition(r, match, g);
    Evaluator ev(g, u);
    Assignment a;
    a.labels = match.labels;
    if (ev.eval(ground, a)) filtered.push_back(std::move(match));
  }
  return filtered;
}

bool check_dangling(const RuleSchema& r, const HostGraph& g, const MatchBinding& m) {
  std::set<int> image_edges;
  for (const auto& [id, idx] : m.edges) image_edges.insert(idx);
  for (const auto& n : r.lhs.nodes) {
    if (r.in_interface(n.id)) continue;
    int h = m.nodes.at(n.id);
    for (int ei : g.out_edges(h))
      if (!image_edges.count(ei)) return false;
    for (int ei : g.in_edges(h))
      if (!image_edges.count(ei)) return false;
  }
  return true;
}

std::optional<HostGraph> apply_match(const RuleSchema& r, const HostGraph& g,
                                     const MatchBinding& m, Premorphism* rh_morphism) {
  std::map<std::string, int> node_map(m.nodes.begin(), m.nodes.end());
  std::set<int> deleted_nodes;
  std::set<int> deleted_edges;
  for (const auto& n : r.lhs.nodes)
    if (!r.in_interface(n.id)) deleted_nodes.insert(m.nodes.at(n.id));
  for (const auto& [id, idx] : m.edges) deleted_edges.insert(idx);

  auto rhs_mark = [&](const std::string& id, const std::optional<Mark>& mk,
                      bool node_side) -> std::optional<Mark> {
    if (!mk) return std::nullopt;
    if (*mk != Mark::Any) return *mk;
    const auto& mu = node_side ? m.mu_nodes : m.mu_edges;
    auto it = mu.find(id);
    if (it == mu.end()) return std::nullopt;
    return it->second;
  };

  struct PendingEdge {
    std::string id, src, tgt;
    ListValue label;
    Mark mark;
  };

  HostGraph h;
  std::set<std::string> used_node_ids;
  std::map<std::string, std::string> k_image;  // K node id -> host id
  for (const auto& [lid, idx] : m.nodes)
    if (r.in_interface(lid)) k_image[lid] = g.nodes[idx].id;

  // Surviving host nodes; interface images are relabelled per R.
  std::map<int, const RuleNode*> rewrite;  // host idx -> R node
  for (const auto& rn : r.rhs.nodes)
    if (r.in_interface(rn.id)) rewrite[m.nodes.at(rn.id)] = &rn;
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    if (deleted_nodes.count((int)i)) continue;
    HostNode n = g.nodes[i];
    auto it = rewrite.find((int)i);
    if (it != rewrite.end()) {
      auto label = eval_label_term(it->second->label, g, m.labels, node_map);
      if (!label) return std::nullopt;
      auto mk = rhs_mark(it->second->id, it->second->mark, true);
      if (!mk) return std::nullopt;
      n.label = std::move(*label);
      n.mark = *mk;
      n.rooted = *it->second->rooted;
    }
    used_node_ids.insert(n.id);
    h.nodes.push_back(std::move(n));
  }
  // Created nodes.
  std::map<std::string, std::string> r_node_ids = k_image;
  for (const auto& rn : r.rhs.nodes) {
    if (r.in_interface(rn.id)) continue;
    auto label = eval_label_term(rn.label, g, m.labels, node_map);
    if (!label) return std::nullopt;
    auto mk = rhs_mark(rn.id, rn.mark, true);
    if (!mk) return std::nullopt;
    std::string id = rn.id;
    while (used_node_ids.count(id)) id += "'";
    used_node_ids.insert(id);
    r_node_ids[rn.id] = id;
    h.nodes.push_back({id, std::move(*label), *mk, *rn.rooted});
  }
  h.finalize();

  // Surviving host edges.
  std::set<std::string> used_edge_ids;
  std::vector<PendingEdge> pending;
  for (size_t i = 0; i < g.edges.size(); ++i) {
    if (deleted_edges.count((int)i)) continue;
    const HostEdge& e = g.edges[i];
    pending.push_back({e.id, g.nodes[e.src].id, g.nodes[e.tgt].id, e.label, e.mark});
    used_edge_ids.insert(e.id);
  }
  // Created edges (all R edges).
  std::map<std::string, std::string> r_edge_ids;
  for (const auto& re : r.rhs.edges) {
    auto label = eval_label_term(re.label, g, m.labels, node_map);
    if (!label) return std::nullopt;
    std::string id = re.id;
    while (used_edge_ids.count(id)) id += "'";
    used_edge_ids.insert(id);
    r_edge_ids[re.id] = id;
    pending.push_back({id, r_node_ids.at(re.src), r_node_ids.at(re.tgt), std::move(*label),
                       re.mark == Mark::Any ? Mark::None : re.mark});
  }
  for (auto& pe : pending) {
    HostEdge e;
    e.id = pe.id;
    e.src = h.node_index(pe.src);
    e.tgt = h.node_index(pe.tgt);
    e.label = std::move(pe.label);
    e.mark = pe.mark;
    h.edges.push_back(std::move(e));
  }
  h.finalize();
  if (rh_morphism) {
    rh_morphism->node_map = r_node_ids;
    rh_morphism->edge_map = r_edge_ids;
  }
  return h;
}

bool insert_unique_iso(std::vector<HostGraph>& set, HostGraph g) {
  for (const auto& e : set)
    if (isomorphic(e, g)) return false;
  set.push_back(std::move(g));
  return true;
}

std::vector<HostGraph> apply_rule(const RuleSchema& r, const HostGraph& g) {
  std::vector<HostGraph> out;
  for (const auto& m : find_matches(r, g)) {
    if (!check_dangling(r, g, m)) continue;
    auto h = apply_match(r, g, m);
    if (h) insert_unique_iso(out, std::move(*h));
  }
  return out;
}

GenApplyResult apply_generalised(const GeneralisedRule& w, const HostGraph& g,
                                 const LabelUniverse& u) {
  GenApplyResult res;
  Matcher matcher(w.core, g, /*allow_nonsimple=*/true, &u);
  for (const auto& n : w.core.rhs.nodes) term_vars(n.label, matcher.must_bind);
  for (const auto& e : w.core.rhs.edges) term_vars(e.label, matcher.must_bind);
  for (const auto& [v, s] : free_vars(w.ac_left))
    if (is_label_sort(s)) matcher.must_bind.insert(v);
  for (const auto& [v, s] : free_vars(w.ac_right))
    if (is_label_sort(s)) matcher.must_bind.insert(v);
  matcher.match_nodes(0);
  if (matcher.used_enumeration) {
    res.universe_limited = false;
    // Report bounded matching when some host label falls outside the universe.
    for (const auto& n : g.nodes)
      if (!u.contains(n.label)) res.universe_limited = true;
    for (const auto& e : g.edges)
      if (!u.contains(e.label)) res.universe_limited = true;
  }
  for (const auto& m : matcher.out) {
    if (!check_dangling(w.core, g, m)) continue;
    Assignment a;
    a.labels = m.labels;
    if (!(w.ac_left->kind == FKind::True)) {
      HostGraph rho = replacement_graph(g, to_premorphism(m, g));
      Evaluator ev(rho, u);
      if (!ev.eval(w.ac_left, a)) continue;
    }
    Premorphism rh;
    auto h = apply_match(w.core, g, m, &rh);
    if (!h) continue;
    if (!(w.ac_right->kind == FKind::True)) {
      HostGraph rho = replacement_graph(*h, rh);
      Evaluator ev(rho, u);
      if (!ev.eval(w.ac_right, a)) continue;
    }
    insert_unique_iso(res.results, std::move(*h));
  }
  return res;
}

}  // namespace gpv
