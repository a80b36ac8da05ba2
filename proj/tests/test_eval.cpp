#include <doctest.h>

#include "testutil.hpp"

using namespace gpv;
using gpvtest::fol;
using gpvtest::host;

namespace {
const LabelUniverse kU;
}

TEST_CASE("evaluate truth constants and the running example q") {
  HostGraph g = host(gpvtest::data_file("hosts/path2.graph"));
  CHECK(eval_on(g, f_true(), kU));
  FormulaPtr q = fol(gpvtest::paper::kPreQ);
  CHECK(eval_on(g, q, kU));
  // marking the source red falsifies q
  HostGraph marked = g;
  marked.nodes[0].mark = Mark::Red;
  marked.finalize();
  CHECK(!eval_on(marked, q, kU));
}

TEST_CASE("formula d on a wrongly coloured triangle") {
  HostGraph tri = host(gpvtest::data_file("hosts/triangle.graph"));
  tri.nodes[0].mark = Mark::Red;
  tri.nodes[1].mark = Mark::Blue;
  tri.nodes[2].mark = Mark::Red;
  tri.finalize();
  FormulaPtr d = fol(gpvtest::paper::kPostD);
  // n3 (red) is adjacent to n1 (red)
  CHECK(!eval_on(tri, d, kU));
  tri.nodes[2].mark = Mark::Blue;
  tri.nodes[1].mark = Mark::Red;
  tri.finalize();
  // now colours alternate red, red... still illegal? n1 red, n2 red adjacent
  CHECK(!eval_on(tri, d, kU));
}

TEST_CASE("quantifier semantics: forall is a conjunction over nodes") {
  HostGraph g = host("node a 1 none\nnode b 2 red");
  FormulaPtr all_marked = fol("forallV x (mV(x) != none)");
  CHECK(!eval_on(g, all_marked, kU));
  g.nodes[0].mark = Mark::Blue;
  g.finalize();
  CHECK(eval_on(g, all_marked, kU));
  // empty graph: vacuous truth / false existential
  HostGraph empty;
  empty.finalize();
  CHECK(eval_on(empty, all_marked, kU));
  CHECK(!eval_on(empty, fol("existsV x (true)"), kU));
}

TEST_CASE("terms: degrees, labels, lists, arithmetic, edge predicate, root") {
  HostGraph g = host(
      "node a 1:2 none root\nnode b \"ab\" grey\n"
      "edge e1 a b 5 dashed\nedge e2 a a empty none");
  CHECK(eval_on(g, fol("existsV x (root(x))"), kU));
  CHECK(eval_on(g, fol("outdeg(a) = 2 /\\ indeg(a) = 1 /\\ indeg(b) = 1"), kU));
  CHECK(eval_on(g, fol("lV(a) = 1:2"), kU));
  CHECK(eval_on(g, fol("existsE x (lE(x) = 2+3)"), kU));
  CHECK(eval_on(g, fol("edge(a, b)"), kU));
  CHECK(eval_on(g, fol("edge(a, b, 5)"), kU));
  CHECK(!eval_on(g, fol("edge(a, b, 6)"), kU));
  CHECK(eval_on(g, fol("edge(a, b, 5, dashed)"), kU));
  CHECK(eval_on(g, fol("edge(a, b, 5, any)"), kU));  // wildcard
  CHECK(!eval_on(g, fol("edge(b, a)"), kU));
  CHECK(eval_on(g, fol("string(lV(b)) /\\ ~int(lV(b)) /\\ ~char(lV(b))"), kU));
  CHECK(eval_on(g, fol("length(lV(a)) = 2 /\\ length(lV(b)) = 2"), kU));
}

TEST_CASE("division by zero makes the atom false and is recorded") {
  HostGraph g = host("node a 1 none");
  Evaluator ev(g, kU);
  CHECK(!ev.eval(fol("lV(a) = 1/0")));
  CHECK(!ev.diagnostics().empty());
  // ... and under negation the atom's falsity flips
  Evaluator ev2(g, kU);
  CHECK(ev2.eval(fol("~(lV(a) = 1/0)")));
}

TEST_CASE("residual auxiliary terms are an error") {
  HostGraph g = host("node a 1 none");
  Evaluator ev(g, kU);
  FormulaPtr f = f_cmp(CmpOp::Eq, t_fn(TermKind::InCon, t_node("a")), t_int(0));
  CHECK_THROWS_AS(ev.eval(f), GpvError);
}

TEST_CASE("existsL enumerates the bounded universe") {
  HostGraph g = host("node a 1:2 none");
  CHECK(eval_on(g, fol("existsL x (lV(a) = x)"), kU));
  CHECK(eval_on(g, fol("existsL x (x = 3)"), kU));
  CHECK(!eval_on(g, fol("existsL x (x = 4)"), kU));  // outside int range
  // determined by a linear equation: x + 1 = 3
  CHECK(eval_on(g, fol("existsL x (x+1 = 3 /\\ int(x))"), kU));
  CHECK(eval_on(g, fol("existsL x (3-x = 1 /\\ x = 2)"), kU));
  // out-of-universe forced value
  HostGraph big = host("node a 9 none");
  CHECK(!eval_on(big, fol("existsL x (lV(a) = x)"), kU));
}

TEST_CASE("assignments bind free variables") {
  HostGraph g = host("node a 1 red\nnode b 2 none\nedge e a b 7 none");
  Evaluator ev(g, kU);
  Assignment asg;
  asg.node_edge["x"] = "a";
  asg.labels["v"] = {Atom::of_int(7)};
  FormulaPtr f = f_and2(f_cmp(CmpOp::Eq, t_fn(TermKind::MarkV, t_var("x", Sort::Node)),
                              t_mark(Mark::Red)),
                        fol("existsE y (lE(y) = v)"));
  CHECK(ev.eval(f, asg));
  asg.node_edge["x"] = "b";
  Evaluator ev2(g, kU);
  CHECK(!ev2.eval(f, asg));
}

TEST_CASE("substitution lemma on enumerated small graphs") {
  // evaluate(c[x -> id], g) == evaluate(c, g, [x -> id])
  FormulaPtr c = f_or2(f_root(t_var("x", Sort::Node)),
                       f_cmp(CmpOp::Ne, t_fn(TermKind::MarkV, t_var("x", Sort::Node)),
                             t_mark(Mark::None)));
  GraphEnumConfig cfg;
  cfg.max_nodes = 2;
  cfg.max_edges = 1;
  cfg.node_marks = {Mark::None, Mark::Red};
  cfg.edge_marks = {Mark::None};
  for_each_host(cfg, [&](const HostGraph& g) {
    for (const auto& n : g.nodes) {
      FormulaPtr direct = subst_var(c, "x", t_node(n.id));
      Evaluator ev(g, kU);
      Assignment asg;
      asg.node_edge["x"] = n.id;
      Evaluator ev2(g, kU);
      CHECK(ev.eval(direct) == ev2.eval(c, asg));
    }
    return true;
  });
}

TEST_CASE("simplify preserves truth on all enumerated models") {
  std::vector<FormulaPtr> formulas = {
      fol(gpvtest::paper::kPreC),
      fol(gpvtest::paper::kPostD),
      fol(gpvtest::paper::kInvF),
      fol("~(~root(n1) \\/ ~(mV(n1) = red /\\ true))"),
      fol("~existsV x (~(mV(x) = red \\/ 1 <= 0) /\\ ~false)"),
  };
  GraphEnumConfig cfg;
  cfg.max_nodes = 2;
  cfg.max_edges = 1;
  cfg.node_marks = {Mark::None, Mark::Red, Mark::Blue};
  cfg.edge_marks = {Mark::None, Mark::Red};
  for (const auto& f : formulas) {
    FormulaPtr s = simplify(f);
    for_each_host(cfg, [&](const HostGraph& g) {
      if (g.node_index("n1") < 0 && !is_closed(f)) return true;
      Evaluator e1(g, kU), e2(g, kU);
      bool a, b;
      try {
        a = e1.eval(f);
        b = e2.eval(s);
      } catch (const GpvError&) {
        return true;  // constants absent from this graph
      }
      CHECK_MESSAGE(a == b, "simplify changed truth of ", print_formula(f), " on\n",
                    print_host_graph(g));
      return true;
    });
  }
}

TEST_CASE("implies_bounded finds and misses counterexamples as specified") {
  LabelUniverse u;
  GraphEnumConfig cfg;
  cfg.max_nodes = 2;
  cfg.max_edges = 1;
  FormulaPtr c = fol(gpvtest::paper::kPreC);
  FormulaPtr d = fol(gpvtest::paper::kPostD);
  // c implies c \/ d at any bound
  auto v1 = implies_bounded(c, f_or2(c, d), cfg, u);
  CHECK(v1.no_counterexample);
  CHECK(v1.graphs_checked > 0);
  // d does not imply c: a single blue node satisfies d but not c
  auto v2 = implies_bounded(d, c, cfg, u);
  REQUIRE(!v2.no_counterexample);
  REQUIRE(v2.counterexample.has_value());
  Evaluator ev(*v2.counterexample, u);
  CHECK(ev.eval(d));
  Evaluator ev2(*v2.counterexample, u);
  CHECK(!ev2.eval(c));
  // determinism: the first counterexample is stable
  auto v3 = implies_bounded(d, c, cfg, u);
  CHECK(print_host_graph(*v3.counterexample) == print_host_graph(*v2.counterexample));
}
