#include "gpv/formula_parser.hpp"

#include "gpv/diagnostics.hpp"

#include <optional>

namespace gpv {

namespace {

bool is_fn_name(const std::string& s) {
  return s == "s" || s == "t" || s == "lV" || s == "lE" || s == "mV" || s == "mE" ||
         s == "indeg" || s == "outdeg" || s == "length" || s == "incon" || s == "outcon";
}

class Parser {
 public:
  Parser(Lexer& lx, const ParseContext& ctx, bool schema_mode)
      : lx_(lx), ctx_(ctx), schema_mode_(schema_mode) {}

  FormulaPtr formula() { return parse_or(); }

  TermPtr label_expr() { return expr(); }

 private:
  Lexer& lx_;
  const ParseContext& ctx_;
  bool schema_mode_;  // Fig. 4 conditions: edge uses '#', no quantifiers
  std::vector<std::pair<std::string, Sort>> binders_;

  std::optional<Sort> lookup_var(const std::string& name) const {
    for (auto it = binders_.rbegin(); it != binders_.rend(); ++it)
      if (it->first == name) return it->second;
    auto d = ctx_.vars.find(name);
    if (d != ctx_.vars.end()) return d->second;
    return std::nullopt;
  }

  // ---- formulas ----

  FormulaPtr parse_or() {
    FormulaPtr l = parse_and();
    std::vector<FormulaPtr> kids{l};
    while (lx_.accept_sym("\\/") || lx_.accept_ident("or")) kids.push_back(parse_and());
    return f_or(std::move(kids));
  }

  FormulaPtr parse_and() {
    FormulaPtr l = parse_unary();
    std::vector<FormulaPtr> kids{l};
    while (lx_.accept_sym("/\\") || lx_.accept_ident("and")) kids.push_back(parse_unary());
    return f_and(std::move(kids));
  }

  static bool is_quant(const std::string& s) {
    return s == "existsV" || s == "existsE" || s == "existsL" || s == "forallV" ||
           s == "forallE" || s == "forallL";
  }

  FormulaPtr parse_unary() {
    if (lx_.accept_sym("~") || lx_.accept_ident("not")) return f_not(parse_unary());
    const Token& t = lx_.peek();
    if (t.kind == Token::Ident && !schema_mode_ && is_quant(t.text)) return parse_quant();
    if (t.kind == Token::Ident && t.text == "true" && !starts_cmp_after(1)) {
      lx_.next();
      return f_true();
    }
    if (t.kind == Token::Ident && t.text == "false" && !starts_cmp_after(1)) {
      lx_.next();
      return f_false();
    }
    if (lx_.is_sym("(")) {
      // '(' can open a subformula or a parenthesised term; try formula first.
      size_t pos = lx_.position();
      try {
        lx_.next();
        FormulaPtr f = parse_or();
        lx_.expect_sym(")");
        if (!next_is_term_continuation()) return f;
      } catch (const GpvError&) {
      }
      lx_.rewind(pos);
    }
    return parse_atom();
  }

  bool starts_cmp_after(int ahead) const {
    const Token& t = lx_.peek(ahead);
    if (t.kind != Token::Sym) return false;
    return t.text == "=" || t.text == "!=" || t.text == "<" || t.text == "<=" ||
           t.text == ">" || t.text == ">=";
  }

  bool next_is_term_continuation() const {
    const Token& t = lx_.peek();
    if (t.kind != Token::Sym) return false;
    static const char* conts[] = {"=", "!=", "<", "<=", ">", ">=", ":", "+",
                                  "-", "*", "/", "."};
    for (const char* c : conts)
      if (t.text == c) return true;
    return false;
  }

  FormulaPtr parse_quant() {
    std::string q = lx_.next().text;
    bool universal = q[0] == 'f';
    QKind k = q.back() == 'V' ? QKind::V : q.back() == 'E' ? QKind::E : QKind::L;
    std::vector<std::string> names;
    names.push_back(lx_.expect_ident("quantified variable"));
    while (lx_.accept_sym(",")) names.push_back(lx_.expect_ident("quantified variable"));
    lx_.expect_sym("(");
    for (const auto& n : names) binders_.emplace_back(n, qkind_sort(k));
    FormulaPtr body = formula();
    for (size_t i = 0; i < names.size(); ++i) binders_.pop_back();
    lx_.expect_sym(")");
    for (auto it = names.rbegin(); it != names.rend(); ++it)
      body = universal ? f_forall(k, *it, body) : f_exists(k, *it, body);
    return body;
  }

  FormulaPtr parse_atom() {
    const Token& t = lx_.peek();
    if (t.kind == Token::Ident) {
      if (t.text == "int" || t.text == "char" || t.text == "string" || t.text == "atom") {
        if (lx_.is_sym("(", 1)) {
          Sort s = t.text == "int"      ? Sort::Int
                   : t.text == "char"   ? Sort::Char
                   : t.text == "string" ? Sort::String
                                        : Sort::Atom;
          lx_.next();
          lx_.expect_sym("(");
          TermPtr arg = expr();
          lx_.expect_sym(")");
          if (term_cat(arg) != TermCat::ListT)
            fail(Err::TypeMismatch, "type predicate needs a label term");
          return f_type(s, arg);
        }
      }
      if (t.text == "root" && lx_.is_sym("(", 1)) {
        lx_.next();
        lx_.expect_sym("(");
        TermPtr arg = node_term();
        lx_.expect_sym(")");
        return f_root(arg);
      }
      if (t.text == "edge" && lx_.is_sym("(", 1)) return parse_edge_pred();
    }
    return parse_cmp();
  }

  FormulaPtr parse_edge_pred() {
    lx_.next();  // edge
    lx_.expect_sym("(");
    TermPtr a = node_term();
    lx_.expect_sym(",");
    TermPtr b = node_term();
    TermPtr label;
    bool has_mark = false;
    Mark mark = Mark::None;
    if (lx_.accept_sym(",")) {
      const Token& t = lx_.peek();
      auto m = t.kind == Token::Ident ? mark_from_name(t.text) : std::nullopt;
      if (m && !lx_.is_sym("(", 1) && !next_after_is_term_op()) {
        has_mark = true;
        mark = *m;
        lx_.next();
      } else {
        label = expr();
        if (schema_mode_) {
          if (lx_.accept_sym("#")) {
            auto mm = mark_from_name(lx_.expect_ident("edge mark"));
            if (!mm) lx_.error("expected edge mark");
            has_mark = true;
            mark = *mm;
          }
        } else if (lx_.accept_sym(",")) {
          auto mm = mark_from_name(lx_.expect_ident("edge mark"));
          if (!mm) lx_.error("expected edge mark");
          has_mark = true;
          mark = *mm;
        }
      }
    }
    lx_.expect_sym(")");
    return f_edge(a, b, label, has_mark, mark);
  }

  bool next_after_is_term_op() const {
    const Token& t = lx_.peek(1);
    if (t.kind != Token::Sym) return false;
    static const char* ops[] = {":", "+", "-", "*", "/", ".", "#"};
    for (const char* c : ops)
      if (t.text == c) return true;
    return false;
  }

  FormulaPtr parse_cmp() {
    TermPtr lhs = expr();
    CmpOp op;
    if (lx_.accept_sym("=")) {
      op = CmpOp::Eq;
    } else if (lx_.accept_sym("!=")) {
      op = CmpOp::Ne;
    } else if (lx_.accept_sym("<=")) {
      op = CmpOp::Le;
    } else if (lx_.accept_sym("<")) {
      op = CmpOp::Lt;
    } else if (lx_.accept_sym(">=")) {
      op = CmpOp::Ge;
    } else if (lx_.accept_sym(">")) {
      op = CmpOp::Gt;
    } else {
      lx_.error("expected comparison operator");
    }
    TermCat lcat = term_cat(lhs);
    TermPtr rhs;
    switch (lcat) {
      case TermCat::NodeT: rhs = node_term(); break;
      case TermCat::EdgeT: rhs = edge_term(); break;
      default: rhs = expr(); break;
    }
    // An integer literal compared against a node/edge term denotes that
    // identifier (common in conditions over graphs).
    if (lcat == TermCat::ListT) {
      TermCat rcat = term_cat(rhs);
      if (rcat == TermCat::NodeT && lhs->kind == TermKind::IntConst)
        lhs = t_node(std::to_string(lhs->num));
      else if (rcat == TermCat::EdgeT && lhs->kind == TermKind::IntConst)
        lhs = t_edge(std::to_string(lhs->num));
      else if (rcat == TermCat::MarkT && lhs->kind == TermKind::MarkConst) {
        // fine: mark = mark
      }
    }
    TermCat rcat = term_cat(rhs);
    lcat = term_cat(lhs);
    bool ident_cat = lcat == TermCat::NodeT || lcat == TermCat::EdgeT || lcat == TermCat::MarkT;
    if (lcat != rcat) {
      // mark terms may meet mark constants only; anything else is a mismatch
      fail(Err::TypeMismatch, "cannot compare " + print_term(lhs) + " with " +
                                  print_term(rhs));
    }
    if (ident_cat && op != CmpOp::Eq && op != CmpOp::Ne)
      fail(Err::TypeMismatch, "ordered comparison needs integer operands");
    return f_cmp(op, lhs, rhs);
  }

  // ---- terms ----

  TermPtr expr() {
    TermPtr l = addsub();
    while (lx_.is_sym(":")) {
      lx_.next();
      TermPtr r = addsub();
      require_label(l);
      require_label(r);
      l = t_bin(TermKind::ListConcat, l, r);
    }
    return l;
  }

  TermPtr addsub() {
    TermPtr l = muldiv();
    while (lx_.is_sym("+") || lx_.is_sym("-")) {
      TermKind k = lx_.next().text == "+" ? TermKind::Add : TermKind::Sub;
      TermPtr r = muldiv();
      require_label(l);
      require_label(r);
      l = t_bin(k, l, r);
    }
    return l;
  }

  TermPtr muldiv() {
    TermPtr l = strcat();
    while (lx_.is_sym("*") || lx_.is_sym("/")) {
      TermKind k = lx_.next().text == "*" ? TermKind::Mul : TermKind::Div;
      TermPtr r = strcat();
      require_label(l);
      require_label(r);
      l = t_bin(k, l, r);
    }
    return l;
  }

  TermPtr strcat() {
    TermPtr l = primary();
    while (lx_.is_sym(".")) {
      lx_.next();
      TermPtr r = primary();
      require_label(l);
      require_label(r);
      l = t_bin(TermKind::StrConcat, l, r);
    }
    return l;
  }

  void require_label(const TermPtr& t) {
    if (term_cat(t) != TermCat::ListT)
      fail(Err::TypeMismatch, "label operator applied to " + print_term(t));
  }

  TermPtr primary() {
    const Token& t = lx_.peek();
    if (t.kind == Token::Int) {
      lx_.next();
      return t_int(t.num);
    }
    if (lx_.is_sym("-")) {
      lx_.next();
      if (lx_.peek().kind != Token::Int) lx_.error("expected number after '-'");
      return t_int(-lx_.next().num);
    }
    if (t.kind == Token::Str) {
      lx_.next();
      return t_str(t.text);
    }
    if (lx_.is_sym("(")) {
      lx_.next();
      TermPtr e = expr();
      lx_.expect_sym(")");
      return e;
    }
    if (t.kind != Token::Ident) lx_.error("expected term");
    if (t.text == "empty") {
      lx_.next();
      return t_empty();
    }
    if (auto m = mark_from_name(t.text); m && !lx_.is_sym("(", 1)) {
      lx_.next();
      return t_mark(*m);
    }
    if (is_fn_name(t.text) && lx_.is_sym("(", 1)) return fn_term();
    lx_.next();
    return resolve_ident(t.text, /*prefer=*/TermCat::ListT);
  }

  TermPtr fn_term() {
    std::string name = lx_.next().text;
    lx_.expect_sym("(");
    TermPtr out;
    if (name == "s" || name == "t") {
      out = t_fn(name == "s" ? TermKind::Source : TermKind::Target, edge_term());
    } else if (name == "lV" || name == "mV" || name == "indeg" || name == "outdeg" ||
               name == "incon" || name == "outcon") {
      TermKind k = name == "lV"       ? TermKind::LabelV
                   : name == "mV"     ? TermKind::MarkV
                   : name == "indeg"  ? TermKind::Indeg
                   : name == "outdeg" ? TermKind::Outdeg
                   : name == "incon"  ? TermKind::InCon
                                      : TermKind::OutCon;
      out = t_fn(k, node_term());
    } else if (name == "lE" || name == "mE") {
      out = t_fn(name == "lE" ? TermKind::LabelE : TermKind::MarkE, edge_term());
    } else if (name == "length") {
      TermPtr arg = expr();
      require_label(arg);
      out = t_fn(TermKind::Length, arg);
    } else {
      lx_.error("unknown function " + name);
    }
    lx_.expect_sym(")");
    return out;
  }

  TermPtr node_term() {
    const Token& t = lx_.peek();
    if (t.kind == Token::Int) {
      lx_.next();
      return t_node(t.text);
    }
    if (t.kind == Token::Ident && (t.text == "s" || t.text == "t") && lx_.is_sym("(", 1))
      return fn_term();
    if (t.kind != Token::Ident) lx_.error("expected node");
    lx_.next();
    return resolve_ident(t.text, TermCat::NodeT);
  }

  TermPtr edge_term() {
    const Token& t = lx_.peek();
    if (t.kind == Token::Int) {
      lx_.next();
      return t_edge(t.text);
    }
    if (t.kind != Token::Ident) lx_.error("expected edge");
    lx_.next();
    return resolve_ident(t.text, TermCat::EdgeT);
  }

  TermPtr resolve_ident(const std::string& name, TermCat prefer) {
    if (auto s = lookup_var(name)) {
      if (prefer == TermCat::NodeT && *s != Sort::Node)
        fail(Err::TypeMismatch, name + " is not a node variable");
      if (prefer == TermCat::EdgeT && *s != Sort::Edge)
        fail(Err::TypeMismatch, name + " is not an edge variable");
      return t_var(name, *s);
    }
    if (ctx_.graph) {
      if (prefer != TermCat::EdgeT && ctx_.graph->has_node(name)) return t_node(name);
      if (prefer != TermCat::NodeT && ctx_.graph->has_edge(name)) return t_edge(name);
    }
    switch (prefer) {
      case TermCat::NodeT: return t_node(name);
      case TermCat::EdgeT: return t_edge(name);
      default: return t_var(name, Sort::List);
    }
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
  ParseContext ctx;
  return parse_formula(text, ctx);
}

FormulaPtr parse_formula(const std::string& text, const ParseContext& ctx) {
  Lexer lx(text);
  FormulaPtr f = parse_formula(lx, ctx);
  if (!lx.at_end()) lx.error("trailing input after formula");
  return f;
}

FormulaPtr parse_formula(Lexer& lx, const ParseContext& ctx) {
  Parser p(lx, ctx, /*schema_mode=*/false);
  return p.formula();
}

TermPtr parse_label_expr(Lexer& lx, const ParseContext& ctx) {
  Parser p(lx, ctx, /*schema_mode=*/false);
  return p.label_expr();
}

FormulaPtr parse_schema_condition(Lexer& lx, const ParseContext& ctx) {
  Parser p(lx, ctx, /*schema_mode=*/true);
  return p.formula();
}

}  // namespace gpv
