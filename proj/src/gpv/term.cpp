#include "gpv/term.hpp"

#include "gpv/diagnostics.hpp"

namespace gpv {

namespace {
TermPtr make(Term t) { return std::make_shared<const Term>(std::move(t)); }
}  // namespace

TermPtr t_empty() {
  static TermPtr e = make({TermKind::Empty});
  return e;
}

TermPtr t_int(long long v) {
  Term t{TermKind::IntConst};
  t.num = v;
  return make(std::move(t));
}

TermPtr t_str(const std::string& s) {
  Term t{TermKind::StrConst};
  t.text = s;
  return make(std::move(t));
}

TermPtr t_var(const std::string& name, Sort sort) {
  Term t{TermKind::Var};
  t.text = name;
  t.sort = sort;
  return make(std::move(t));
}

TermPtr t_node(const std::string& id) {
  Term t{TermKind::NodeConst};
  t.text = id;
  return make(std::move(t));
}

TermPtr t_edge(const std::string& id) {
  Term t{TermKind::EdgeConst};
  t.text = id;
  return make(std::move(t));
}

TermPtr t_mark(Mark m) {
  Term t{TermKind::MarkConst};
  t.mark = m;
  return make(std::move(t));
}

TermPtr t_bin(TermKind k, TermPtr a, TermPtr b) {
  Term t{k};
  t.args = {std::move(a), std::move(b)};
  return make(std::move(t));
}

TermPtr t_fn(TermKind k, TermPtr a) {
  Term t{k};
  t.args = {std::move(a)};
  return make(std::move(t));
}

TermPtr t_list(const ListValue& v) {
  if (v.empty()) return t_empty();
  TermPtr acc;
  for (const auto& a : v) {
    TermPtr atom = a.is_int ? t_int(a.num) : t_str(a.str);
    acc = acc ? t_bin(TermKind::ListConcat, acc, atom) : atom;
  }
  return acc;
}

TermCat term_cat(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::NodeConst:
    case TermKind::Source:
    case TermKind::Target:
      return TermCat::NodeT;
    case TermKind::EdgeConst:
      return TermCat::EdgeT;
    case TermKind::MarkConst:
    case TermKind::MarkV:
    case TermKind::MarkE:
      return TermCat::MarkT;
    case TermKind::Var:
      if (t->sort == Sort::Node) return TermCat::NodeT;
      if (t->sort == Sort::Edge) return TermCat::EdgeT;
      return TermCat::ListT;
    default:
      return TermCat::ListT;
  }
}

bool equal_terms(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Empty: return true;
    case TermKind::IntConst: return a->num == b->num;
    case TermKind::StrConst: return a->text == b->text;
    case TermKind::Var: return a->text == b->text && a->sort == b->sort;
    case TermKind::NodeConst:
    case TermKind::EdgeConst: return a->text == b->text;
    case TermKind::MarkConst: return a->mark == b->mark;
    case TermKind::InCon:
    case TermKind::OutCon:
    default: break;
  }
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!equal_terms(a->args[i], b->args[i])) return false;
  return true;
}

namespace {

int term_prec(const Term& t) {
  switch (t.kind) {
    case TermKind::ListConcat: return 1;
    case TermKind::Add:
    case TermKind::Sub: return 2;
    case TermKind::Mul:
    case TermKind::Div: return 3;
    case TermKind::StrConcat: return 4;
    default: return 9;
  }
}

const char* term_op(TermKind k) {
  switch (k) {
    case TermKind::ListConcat: return ":";
    case TermKind::StrConcat: return ".";
    case TermKind::Add: return "+";
    case TermKind::Sub: return "-";
    case TermKind::Mul: return "*";
    case TermKind::Div: return "/";
    default: return "?";
  }
}

const char* fn_name(TermKind k) {
  switch (k) {
    case TermKind::Indeg: return "indeg";
    case TermKind::Outdeg: return "outdeg";
    case TermKind::Length: return "length";
    case TermKind::Source: return "s";
    case TermKind::Target: return "t";
    case TermKind::LabelV: return "lV";
    case TermKind::LabelE: return "lE";
    case TermKind::MarkV: return "mV";
    case TermKind::MarkE: return "mE";
    case TermKind::InCon: return "incon";
    case TermKind::OutCon: return "outcon";
    default: return "?";
  }
}

void print_rec(const TermPtr& t, int parent_prec, std::string& out) {
  int p = term_prec(*t);
  switch (t->kind) {
    case TermKind::Empty: out += "empty"; return;
    case TermKind::IntConst:
      if (t->num < 0 && parent_prec > 1) {
        out += "(" + std::to_string(t->num) + ")";
      } else {
        out += std::to_string(t->num);
      }
      return;
    case TermKind::StrConst: out += "\"" + t->text + "\""; return;
    case TermKind::Var:
    case TermKind::NodeConst:
    case TermKind::EdgeConst: out += t->text; return;
    case TermKind::MarkConst: out += mark_name(t->mark); return;
    case TermKind::ListConcat:
    case TermKind::StrConcat:
    case TermKind::Add:
    case TermKind::Sub:
    case TermKind::Mul:
    case TermKind::Div: {
      bool paren = p < parent_prec;
      if (paren) out += "(";
      print_rec(t->args[0], p, out);
      out += term_op(t->kind);
      print_rec(t->args[1], p + 1, out);
      if (paren) out += ")";
      return;
    }
    default:
      out += fn_name(t->kind);
      out += "(";
      print_rec(t->args[0], 0, out);
      out += ")";
      return;
  }
}

}  // namespace

std::string print_term(const TermPtr& t) {
  std::string out;
  print_rec(t, 0, out);
  return out;
}

bool term_has_var(const TermPtr& t, const std::string& name) {
  if (t->kind == TermKind::Var) return t->text == name;
  for (const auto& a : t->args)
    if (term_has_var(a, name)) return true;
  return false;
}

void term_vars(const TermPtr& t, std::set<std::string>& out) {
  if (t->kind == TermKind::Var) out.insert(t->text);
  for (const auto& a : t->args) term_vars(a, out);
}

bool term_contains(const TermPtr& t, const TermPtr& pattern) {
  if (equal_terms(t, pattern)) return true;
  for (const auto& a : t->args)
    if (term_contains(a, pattern)) return true;
  return false;
}

TermPtr term_subst_var(const TermPtr& t, const std::string& name, const TermPtr& repl) {
  if (t->kind == TermKind::Var) return t->text == name ? repl : t;
  if (t->args.empty()) return t;
  bool changed = false;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) {
    TermPtr n = term_subst_var(a, name, repl);
    changed |= (n != a);
    args.push_back(std::move(n));
  }
  if (!changed) return t;
  Term copy = *t;
  copy.args = std::move(args);
  return std::make_shared<const Term>(std::move(copy));
}

TermPtr term_rewrite(const TermPtr& t, const TermPtr& pattern, const TermPtr& repl) {
  if (equal_terms(t, pattern)) return repl;
  if (t->args.empty()) return t;
  bool changed = false;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) {
    TermPtr n = term_rewrite(a, pattern, repl);
    changed |= (n != a);
    args.push_back(std::move(n));
  }
  if (!changed) return t;
  Term copy = *t;
  copy.args = std::move(args);
  return std::make_shared<const Term>(std::move(copy));
}

bool term_ground_value(const TermPtr& t, ListValue& out) {
  switch (t->kind) {
    case TermKind::Empty: out.clear(); return true;
    case TermKind::IntConst: out = {Atom::of_int(t->num)}; return true;
    case TermKind::StrConst: out = {Atom::of_str(t->text)}; return true;
    case TermKind::ListConcat: {
      ListValue a, b;
      if (!term_ground_value(t->args[0], a) || !term_ground_value(t->args[1], b)) return false;
      a.insert(a.end(), b.begin(), b.end());
      out = std::move(a);
      return true;
    }
    case TermKind::StrConcat: {
      ListValue a, b;
      if (!term_ground_value(t->args[0], a) || !term_ground_value(t->args[1], b)) return false;
      if (!is_string_value(a) || !is_string_value(b)) return false;
      out = {Atom::of_str(a[0].str + b[0].str)};
      return true;
    }
    case TermKind::Add:
    case TermKind::Sub:
    case TermKind::Mul:
    case TermKind::Div: {
      ListValue a, b;
      if (!term_ground_value(t->args[0], a) || !term_ground_value(t->args[1], b)) return false;
      if (!is_int_value(a) || !is_int_value(b)) return false;
      long long x = a[0].num, y = b[0].num, r = 0;
      switch (t->kind) {
        case TermKind::Add: r = x + y; break;
        case TermKind::Sub: r = x - y; break;
        case TermKind::Mul: r = x * y; break;
        case TermKind::Div:
          if (y == 0) return false;
          r = x / y;
          break;
        default: return false;
      }
      out = {Atom::of_int(r)};
      return true;
    }
    case TermKind::Length: {
      ListValue a;
      if (!term_ground_value(t->args[0], a)) return false;
      if (is_string_value(a)) {
        out = {Atom::of_int((long long)a[0].str.size())};
      } else {
        out = {Atom::of_int((long long)a.size())};
      }
      return true;
    }
    default:
      return false;
  }
}

}  // namespace gpv
