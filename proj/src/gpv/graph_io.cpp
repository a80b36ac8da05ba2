#include "gpv/graph_io.hpp"

#include "gpv/diagnostics.hpp"
#include "gpv/formula_parser.hpp"

namespace gpv {

namespace {

std::string parse_id(Lexer& lx) {
  const Token& t = lx.peek();
  if (t.kind == Token::Ident || t.kind == Token::Int) return lx.next().text;
  lx.error("expected identifier");
}

Mark parse_mark(Lexer& lx) {
  std::string name = lx.expect_ident("mark");
  auto m = mark_from_name(name);
  if (!m) lx.error("unknown mark " + name);
  return *m;
}

}  // namespace

RuleGraph parse_rule_graph_body(Lexer& lx, const std::map<std::string, Sort>& vars) {
  ParseContext ctx;
  ctx.vars = vars;
  RuleGraph g;
  while (true) {
    if (lx.accept_ident("node")) {
      RuleNode n;
      n.id = parse_id(lx);
      if (g.has_node(n.id)) lx.error("duplicate node " + n.id);
      n.label = parse_label_expr(lx, ctx);
      n.mark = parse_mark(lx);
      n.rooted = lx.accept_ident("root");
      g.nodes.push_back(std::move(n));
      continue;
    }
    if (lx.accept_ident("edge")) {
      RuleEdge e;
      e.id = parse_id(lx);
      if (g.has_edge(e.id)) lx.error("duplicate edge " + e.id);
      e.src = parse_id(lx);
      e.tgt = parse_id(lx);
      if (!g.has_node(e.src)) lx.error("edge " + e.id + " from unknown node " + e.src);
      if (!g.has_node(e.tgt)) lx.error("edge " + e.id + " to unknown node " + e.tgt);
      e.label = parse_label_expr(lx, ctx);
      e.mark = parse_mark(lx);
      g.edges.push_back(std::move(e));
      continue;
    }
    break;
  }
  return g;
}

HostGraph parse_host_graph(const std::string& text) {
  Lexer lx(text);
  RuleGraph g = parse_rule_graph_body(lx, {});
  if (!lx.at_end()) lx.error("trailing input in graph");
  auto diags = validate_host_graph(g);
  if (!diags.empty()) fail(Err::TypeMismatch, "not a host graph: " + diags.front());
  return to_host_graph(g);
}

std::string print_host_graph(const HostGraph& g) {
  std::string out;
  for (const auto& n : g.nodes) {
    out += "node " + n.id + " " + print_list(n.label) + " " + mark_name(n.mark);
    if (n.rooted) out += " root";
    out += "\n";
  }
  for (const auto& e : g.edges) {
    out += "edge " + e.id + " " + g.nodes[e.src].id + " " + g.nodes[e.tgt].id + " " +
           print_list(e.label) + " " + mark_name(e.mark) + "\n";
  }
  return out;
}

std::string print_rule_graph(const RuleGraph& g) {
  std::string out;
  for (const auto& n : g.nodes) {
    out += "node " + n.id + " " + (n.label ? print_term(n.label) : "?") + " " +
           (n.mark ? mark_name(*n.mark) : "?");
    if (n.rooted && *n.rooted) out += " root";
    out += "\n";
  }
  for (const auto& e : g.edges) {
    out += "edge " + e.id + " " + e.src + " " + e.tgt + " " + print_term(e.label) + " " +
           mark_name(e.mark) + "\n";
  }
  return out;
}

}  // namespace gpv
