#include "gpv/program.hpp"

#include "gpv/diagnostics.hpp"
#include "gpv/formula_parser.hpp"
#include "gpv/graph_io.hpp"
#include "gpv/lexer.hpp"

#include <algorithm>

namespace gpv {

namespace {
CommandPtr make(Command c) { return std::make_shared<const Command>(std::move(c)); }
}  // namespace

CommandPtr cmd_rule_call(std::vector<std::string> rules) {
  Command c{CmdKind::RuleCall};
  c.rules = std::move(rules);
  return make(std::move(c));
}

CommandPtr cmd_seq(CommandPtr a, CommandPtr b) {
  Command c{CmdKind::Seq};
  c.a = std::move(a);
  c.b = std::move(b);
  return make(std::move(c));
}

CommandPtr cmd_if(CommandPtr cond, CommandPtr t, CommandPtr e) {
  Command c{CmdKind::If};
  c.a = std::move(cond);
  c.b = std::move(t);
  c.c = std::move(e);
  return make(std::move(c));
}

CommandPtr cmd_try(CommandPtr cond, CommandPtr t, CommandPtr e) {
  Command c{CmdKind::Try};
  c.a = std::move(cond);
  c.b = std::move(t);
  c.c = std::move(e);
  return make(std::move(c));
}

CommandPtr cmd_loop(CommandPtr body) {
  Command c{CmdKind::Loop};
  c.a = std::move(body);
  return make(std::move(c));
}

CommandPtr cmd_or(CommandPtr a, CommandPtr b) {
  Command c{CmdKind::Or};
  c.a = std::move(a);
  c.b = std::move(b);
  return make(std::move(c));
}

CommandPtr cmd_atom(CmdKind k) { return make(Command{k}); }

bool equal_commands(const CommandPtr& a, const CommandPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  if (a->rules != b->rules) return false;
  return equal_commands(a->a, b->a) && equal_commands(a->b, b->b) &&
         equal_commands(a->c, b->c);
}

namespace {

int cmd_prec(const Command& c) {
  switch (c.kind) {
    case CmdKind::Or: return 1;
    case CmdKind::Seq: return 2;
    default: return 3;
  }
}

void print_rec(const CommandPtr& c, int parent, std::string& out) {
  int p = cmd_prec(*c);
  bool paren = p < parent;
  if (paren) out += "(";
  switch (c->kind) {
    case CmdKind::RuleCall:
      if (c->rules.size() == 1) {
        out += c->rules[0];
      } else {
        out += "{";
        for (size_t i = 0; i < c->rules.size(); ++i) {
          if (i) out += ", ";
          out += c->rules[i];
        }
        out += "}";
      }
      break;
    case CmdKind::Seq:
      print_rec(c->a, 2, out);
      out += "; ";
      print_rec(c->b, 2, out);
      break;
    case CmdKind::If:
      out += "if ";
      print_rec(c->a, 3, out);
      out += " then ";
      print_rec(c->b, 3, out);
      out += " else ";
      print_rec(c->c, 3, out);
      break;
    case CmdKind::Try:
      out += "try ";
      print_rec(c->a, 3, out);
      out += " then ";
      print_rec(c->b, 3, out);
      out += " else ";
      print_rec(c->c, 3, out);
      break;
    case CmdKind::Loop: {
      bool atomic = c->a->kind == CmdKind::RuleCall || c->a->kind == CmdKind::Loop ||
                    c->a->kind == CmdKind::Break || c->a->kind == CmdKind::Skip ||
                    c->a->kind == CmdKind::Fail;
      std::string body;
      print_rec(c->a, 0, body);
      out += atomic ? body + "!" : "(" + body + ")!";
      break;
    }
    case CmdKind::Or:
      print_rec(c->a, 1, out);
      out += " or ";
      print_rec(c->b, 1, out);
      break;
    case CmdKind::Break: out += "break"; break;
    case CmdKind::Skip: out += "skip"; break;
    case CmdKind::Fail: out += "fail"; break;
  }
  if (paren) out += ")";
}

}  // namespace

std::string print_command(const CommandPtr& c) {
  std::string out;
  print_rec(c, 0, out);
  return out;
}

const RuleSchema* Program::find_rule(const std::string& name) const {
  for (const auto& r : rules)
    if (r.name == name) return &r;
  return nullptr;
}

const RuleSchema& Program::rule(const std::string& name) const {
  const RuleSchema* r = find_rule(name);
  if (!r) fail(Err::UndeclaredVariable, "unknown rule " + name);
  return *r;
}

// Parsing ----------------------------------------------------------------------

namespace {

bool is_command_keyword(const std::string& s) {
  return s == "if" || s == "then" || s == "else" || s == "try" || s == "or" ||
         s == "break" || s == "skip" || s == "fail";
}

// Commands are parsed with procedure calls unresolved, then expanded.
struct RawCmd;
using RawPtr = std::shared_ptr<RawCmd>;
struct RawCmd {
  CmdKind kind = CmdKind::Skip;
  std::vector<std::string> names;  // RuleCall: rule or procedure names
  RawPtr a, b, c;
};

class ProgramParser {
 public:
  explicit ProgramParser(Lexer& lx) : lx_(lx) {}

  void parse_declarations() {
    while (!lx_.at_end()) {
      if (lx_.peek().kind != Token::Ident) lx_.error("expected declaration");
      std::string name = lx_.peek().text;
      if (lx_.is_sym("(", 1)) {
        rules_.push_back(parse_rule_decl());
      } else if (lx_.is_sym("=", 1)) {
        lx_.next();
        lx_.next();
        RawPtr body = parse_comseq();
        if (!procs_.emplace(name, body).second)
          lx_.error("duplicate declaration of " + name);
        decl_order_.push_back(name);
      } else {
        lx_.error("expected rule or procedure declaration");
      }
    }
  }

  RuleSchema parse_rule_decl() {
    RuleSchema r;
    r.name = lx_.expect_ident("rule name");
    lx_.expect_sym("(");
    if (!lx_.is_sym(")")) {
      while (true) {
        std::vector<std::string> group;
        group.push_back(lx_.expect_ident("variable"));
        while (lx_.accept_sym(",")) group.push_back(lx_.expect_ident("variable"));
        lx_.expect_sym(":");
        std::string ty = lx_.expect_ident("type");
        Sort s;
        if (ty == "list") {
          s = Sort::List;
        } else if (ty == "atom") {
          s = Sort::Atom;
        } else if (ty == "int") {
          s = Sort::Int;
        } else if (ty == "string") {
          s = Sort::String;
        } else if (ty == "char") {
          s = Sort::Char;
        } else {
          lx_.error("unknown variable type " + ty);
        }
        for (auto& g : group) r.params.push_back({g, s});
        if (!lx_.accept_sym(";")) break;
      }
    }
    lx_.expect_sym(")");
    std::map<std::string, Sort> vars = r.param_map();
    lx_.expect_sym("[");
    r.lhs = parse_rule_graph_body(lx_, vars);
    lx_.expect_sym("]");
    lx_.expect_sym("=>");
    lx_.expect_sym("[");
    r.rhs = parse_rule_graph_body(lx_, vars);
    lx_.expect_sym("]");
    lx_.expect_ident("interface");
    lx_.expect_sym("{");
    if (!lx_.is_sym("}")) {
      while (true) {
        const Token& t = lx_.peek();
        if (t.kind != Token::Ident && t.kind != Token::Int) lx_.error("expected node id");
        r.interface_nodes.push_back(lx_.next().text);
        if (!lx_.accept_sym(",")) break;
      }
    }
    lx_.expect_sym("}");
    if (lx_.accept_ident("where")) {
      ParseContext ctx;
      ctx.vars = vars;
      ctx.graph = &r.lhs;
      r.condition = parse_schema_condition(lx_, ctx);
    } else {
      r.condition = f_true();
    }
    validate_rule(r);
    return r;
  }

  RawPtr parse_comseq() {
    RawPtr l = parse_or();
    if (lx_.accept_sym(";")) {
      RawPtr r = parse_comseq();  // right-nested
      auto seq = std::make_shared<RawCmd>();
      seq->kind = CmdKind::Seq;
      seq->a = l;
      seq->b = r;
      return seq;
    }
    return l;
  }

  RawPtr parse_or() {
    RawPtr l = parse_postfix();
    while (lx_.is_ident("or")) {
      lx_.next();
      RawPtr r = parse_postfix();
      auto o = std::make_shared<RawCmd>();
      o->kind = CmdKind::Or;
      o->a = l;
      o->b = r;
      l = o;
    }
    return l;
  }

  RawPtr parse_postfix() {
    RawPtr c = parse_primary();
    while (lx_.accept_sym("!")) {
      auto l = std::make_shared<RawCmd>();
      l->kind = CmdKind::Loop;
      l->a = c;
      c = l;
    }
    return c;
  }

  RawPtr parse_primary() {
    if (lx_.accept_sym("(")) {
      RawPtr c = parse_comseq();
      lx_.expect_sym(")");
      return c;
    }
    if (lx_.accept_sym("{")) {
      auto c = std::make_shared<RawCmd>();
      c->kind = CmdKind::RuleCall;
      if (!lx_.is_sym("}")) {
        c->names.push_back(lx_.expect_ident("rule name"));
        while (lx_.accept_sym(",")) c->names.push_back(lx_.expect_ident("rule name"));
      }
      lx_.expect_sym("}");
      return c;
    }
    const Token& t = lx_.peek();
    if (t.kind != Token::Ident) lx_.error("expected command");
    if (t.text == "if" || t.text == "try") {
      bool is_if = t.text == "if";
      lx_.next();
      RawPtr cond = parse_comseq();
      RawPtr then, els;
      if (lx_.accept_ident("then")) then = parse_comseq();
      if (lx_.accept_ident("else")) els = parse_comseq();
      auto c = std::make_shared<RawCmd>();
      c->kind = is_if ? CmdKind::If : CmdKind::Try;
      c->a = cond;
      c->b = then ? then : atom(CmdKind::Skip);
      c->c = els ? els : atom(CmdKind::Skip);
      return c;
    }
    if (t.text == "break" || t.text == "skip" || t.text == "fail") {
      lx_.next();
      return atom(t.text == "break" ? CmdKind::Break
                  : t.text == "skip" ? CmdKind::Skip
                                     : CmdKind::Fail);
    }
    if (is_command_keyword(t.text)) lx_.error("unexpected keyword " + t.text);
    lx_.next();
    auto c = std::make_shared<RawCmd>();
    c->kind = CmdKind::RuleCall;
    c->names.push_back(t.text);
    return c;
  }

  static RawPtr atom(CmdKind k) {
    auto c = std::make_shared<RawCmd>();
    c->kind = k;
    return c;
  }

  // Procedure expansion with recursion detection.
  CommandPtr resolve(const RawPtr& c, std::vector<std::string>& stack) const {
    switch (c->kind) {
      case CmdKind::RuleCall: {
        if (c->names.size() == 1) {
          const std::string& n = c->names[0];
          auto done = resolved_procs_.find(n);
          if (done != resolved_procs_.end()) return done->second;
          auto proc = procs_.find(n);
          if (proc != procs_.end()) {
            if (std::find(stack.begin(), stack.end(), n) != stack.end())
              fail(Err::RecursiveProcedure, n);
            stack.push_back(n);
            CommandPtr body = resolve(proc->second, stack);
            stack.pop_back();
            return body;
          }
        }
        for (const auto& n : c->names) {
          if (procs_.count(n) || resolved_procs_.count(n))
            fail(Err::Syntax, "procedure " + n + " cannot appear in a rule set");
          bool found = false;
          for (const auto& r : rules_)
            if (r.name == n) found = true;
          if (!found) fail(Err::UndeclaredVariable, "unknown rule " + n);
        }
        return cmd_rule_call(c->names);
      }
      case CmdKind::Seq:
        return cmd_seq(resolve(c->a, stack), resolve(c->b, stack));
      case CmdKind::If:
        return cmd_if(resolve(c->a, stack), resolve(c->b, stack), resolve(c->c, stack));
      case CmdKind::Try:
        return cmd_try(resolve(c->a, stack), resolve(c->b, stack), resolve(c->c, stack));
      case CmdKind::Loop:
        return cmd_loop(resolve(c->a, stack));
      case CmdKind::Or:
        return cmd_or(resolve(c->a, stack), resolve(c->b, stack));
      default:
        return cmd_atom(c->kind);
    }
  }

  Program finish() {
    if (!procs_.count("Main")) fail(Err::MissingMain, "no Main declaration");
    Program p;
    for (const auto& [name, raw] : procs_) {
      std::vector<std::string> stack{name};
      p.procedures[name] = resolve(raw, stack);
    }
    p.rules = std::move(rules_);
    p.main = p.procedures.at("Main");
    return p;
  }

  std::vector<RuleSchema> rules_;
  std::map<std::string, RawPtr> procs_;
  std::map<std::string, CommandPtr> resolved_procs_;
  std::vector<std::string> decl_order_;

 private:
  Lexer& lx_;
};

}  // namespace

Program parse_program(const std::string& text) {
  Lexer lx(text, "program");
  ProgramParser pp(lx);
  pp.parse_declarations();
  return pp.finish();
}

RuleSchema parse_rule(const std::string& text) {
  Lexer lx(text, "rule");
  ProgramParser pp(lx);
  RuleSchema r = pp.parse_rule_decl();
  if (!lx.at_end()) lx.error("trailing input after rule");
  return r;
}

CommandPtr parse_command_over(const std::string& text, const Program& p) {
  Lexer lx(text, "command");
  ProgramParser pp(lx);
  pp.rules_ = p.rules;
  pp.resolved_procs_ = p.procedures;
  RawPtr raw = pp.parse_comseq();
  if (!lx.at_end()) lx.error("trailing input after command");
  std::vector<std::string> stack;
  return pp.resolve(raw, stack);
}

std::string print_rule(const RuleSchema& r) {
  std::string out = r.name + "(";
  for (size_t i = 0; i < r.params.size(); ++i) {
    if (i) out += ", ";
    out += r.params[i].name + ": " + sort_name(r.params[i].sort);
  }
  out += ")\n[\n" + print_rule_graph(r.lhs) + "]\n=>\n[\n" + print_rule_graph(r.rhs) + "]\n";
  out += "interface {";
  for (size_t i = 0; i < r.interface_nodes.size(); ++i) {
    if (i) out += ", ";
    out += r.interface_nodes[i];
  }
  out += "}\n";
  if (r.condition && r.condition->kind != FKind::True)
    out += "where " + print_formula(r.condition) + "\n";
  return out;
}

std::string print_program(const Program& p) {
  std::string out = "Main = " + print_command(p.main) + "\n\n";
  for (const auto& r : p.rules) out += print_rule(r) + "\n";
  return out;
}

}  // namespace gpv
