#include <doctest.h>

#include "testutil.hpp"

#include <random>

using namespace gpv;
using gpvtest::fol;

TEST_CASE("forall desugars to negated existential") {
  FormulaPtr f = fol("forallV x (int(lV(x)))");
  CHECK(f->kind == FKind::Not);
  CHECK(f->kids[0]->kind == FKind::Exists);
  CHECK(f->kids[0]->kids[0]->kind == FKind::Not);
  CHECK(print_formula(f) == "~existsV x (~int(lV(x)))");
}

TEST_CASE("parse of the running example's negation") {
  FormulaPtr f = fol("existsE x (mV(s(x)) != none)");
  CHECK(f->kind == FKind::Exists);
  CHECK(f->q == QKind::E);
  const Formula& cmp = *f->kids[0];
  CHECK(cmp.kind == FKind::Cmp);
  CHECK(cmp.op == CmpOp::Ne);
  CHECK(cmp.lhs->kind == TermKind::MarkV);
  CHECK(cmp.lhs->args[0]->kind == TermKind::Source);
}

TEST_CASE("parse/print round trip on paper formulas") {
  for (const char* text : {gpvtest::paper::kPreC, gpvtest::paper::kPostD,
                           gpvtest::paper::kInvE, gpvtest::paper::kInvF,
                           gpvtest::paper::kPreQ, gpvtest::paper::kSlpFInit,
                           gpvtest::paper::kSlpFColBlue, gpvtest::paper::kSlpFUnmark,
                           gpvtest::paper::kFailColour, gpvtest::paper::kFailIllegal,
                           gpvtest::paper::kSuccessIllegal}) {
    FormulaPtr f = fol(text);
    FormulaPtr again = fol(print_formula(f));
    CHECK_MESSAGE(equal_formulas(f, again), "round trip failed for: ", text);
  }
}

TEST_CASE("terms round trip with precedence") {
  for (const char* text :
       {"lE(x) = d+e", "lV(y) = 1:2:\"ab\"", "lV(y) = a:(b:c)", "lE(x) = d*(e+1)",
        "lV(y) = \"a\".\"b\":2", "indeg(x) = 2", "lV(y) = (-2)", "length(a) = 0"}) {
    FormulaPtr f = fol(text);
    FormulaPtr again = fol(print_formula(f));
    CHECK_MESSAGE(equal_formulas(f, again), "round trip failed for: ", text,
                  " printed as ", print_formula(f));
  }
}

TEST_CASE("simplify performs the required rewrites") {
  CHECK(simplify(fol("~~true"))->kind == FKind::True);
  CHECK(simplify(fol("~true"))->kind == FKind::False);
  // none != none evaluates to false and units collapse
  FormulaPtr f = simplify(fol("~(none != none \\/ existsE x (mE(x) != none))"));
  CHECK(print_formula(f) == "~existsE x (mE(x) != none)");
  // De Morgan
  FormulaPtr g = simplify(f_not(fol("root(x) /\\ existsV y (true)")));
  CHECK(g->kind == FKind::Or);
  // ground comparisons
  CHECK(simplify(fol("5 >= 3"))->kind == FKind::True);
  CHECK(simplify(fol("1:2 = 1:2"))->kind == FKind::True);
  CHECK(simplify(fol("\"a\" = \"b\""))->kind == FKind::False);
  // conjunction units
  CHECK(print_formula(simplify(fol("root(x) /\\ true"))) == "root(x)");
  CHECK(simplify(fol("root(x) /\\ false"))->kind == FKind::False);
  CHECK(simplify(fol("root(x) \\/ true"))->kind == FKind::True);
  CHECK(print_formula(simplify(fol("root(x) \\/ false"))) == "root(x)");
}

TEST_CASE("simplify is idempotent on assorted formulas") {
  for (const char* text : {gpvtest::paper::kSlpFColBlue, gpvtest::paper::kFailColour,
                           "~(~root(x) \\/ ~(mV(x) = red /\\ true))"}) {
    FormulaPtr once = simplify(fol(text));
    FormulaPtr twice = simplify(once);
    CHECK(equal_formulas(once, twice));
  }
}

TEST_CASE("substitution replaces free occurrences only") {
  // (mV(x) != none)[x -> 1] with x a free node variable
  FormulaPtr atom =
      f_cmp(CmpOp::Ne, t_fn(TermKind::MarkV, t_var("x", Sort::Node)), t_mark(Mark::None));
  FormulaPtr f = subst_var(atom, "x", t_node("1"));
  CHECK(print_formula(f) == "mV(1) != none");
  // a binder of the same name shadows
  FormulaPtr g = subst_var(f_and2(f_root(t_var("x", Sort::Node)),
                                  fol("existsV x (root(x))")),
                           "x", t_node("1"));
  CHECK(print_formula(g) == "root(1) /\\ existsV x (root(x))");
  // term pattern s(x) -> v1
  FormulaPtr h = fol("existsE x (mV(s(x)) != none)");
  FormulaPtr inner = h->kids[0];
  FormulaPtr sub = subst_term(inner, t_fn(TermKind::Source, t_var("x", Sort::Edge)),
                              t_node("v1"));
  CHECK(print_formula(sub) == "mV(v1) != none");
}

TEST_CASE("canonical form ignores names, order, and double negation") {
  FormulaPtr a = fol("existsV x, y (x != y /\\ mV(x) = red)");
  FormulaPtr b = fol("existsV u, v (mV(u) = red /\\ v != u)");
  CHECK(canon_equal(a, b));
  CHECK(canon_equal(fol("root(n1) /\\ ~~int(lV(n1))"), fol("int(lV(n1)) /\\ root(n1)")));
  CHECK(!canon_equal(fol("existsV x (mV(x) = red)"), fol("existsV x (mV(x) = blue)")));
  CHECK(canon_equal(fol("existsV x (1 < indeg(x))"), fol("existsV x (indeg(x) > 1)")));
}

TEST_CASE("free variables and closedness") {
  CHECK(is_closed(fol(gpvtest::paper::kPreC)));
  // free label variable through the parser
  FormulaPtr open = fol("existsV y (lV(y) = a)");
  auto fv = free_vars(open);
  REQUIRE(fv.size() == 1);
  CHECK(fv.at("a") == Sort::List);
  CHECK(!is_closed(open));
  // free node variable built directly (bare identifiers in node positions
  // parse as constants, not variables)
  FormulaPtr node_open = f_root(t_var("x", Sort::Node));
  CHECK(free_vars(node_open).at("x") == Sort::Node);
}

TEST_CASE("rename label variables apart") {
  FormulaPtr f = fol("existsL a (lV(y) = a /\\ d >= e)");
  FormulaPtr renamed = rename_label_vars_apart(f, {"a", "d"});
  auto names = all_var_names(renamed);
  CHECK(!names.count("a"));
  CHECK(names.count("a0"));
  CHECK(names.count("d0"));
  CHECK(names.count("e"));
  // node/edge variables are untouched
  FormulaPtr g = rename_label_vars_apart(fol("existsV x (root(x))"), {"x"});
  CHECK(print_formula(g) == "existsV x (root(x))");
}

TEST_CASE("edge predicate desugaring") {
  FormulaPtr f = desugar_edge_predicates(fol("edge(1, 2, 5, red)"));
  CHECK(print_formula(f) ==
        "existsE z (s(z) = 1 /\\ t(z) = 2 /\\ lE(z) = 5 /\\ mE(z) = red)");
  // `any` is a wildcard: no mark conjunct
  FormulaPtr g = desugar_edge_predicates(fol("edge(1, 2, 5, any)"));
  CHECK(print_formula(g) == "existsE z (s(z) = 1 /\\ t(z) = 2 /\\ lE(z) = 5)");
}

// Grammar-directed random formula generator for the round-trip property.
namespace {

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  FormulaPtr formula(int depth) { return go(depth, {}); }

 private:
  std::mt19937 rng_;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  TermPtr node_term(const std::vector<std::pair<std::string, QKind>>& env) {
    std::vector<std::string> nodes, edges;
    for (const auto& [v, q] : env) {
      if (q == QKind::V) nodes.push_back(v);
      if (q == QKind::E) edges.push_back(v);
    }
    if (!edges.empty() && pick(2) == 0) {
      TermPtr e = t_var(edges[pick((int)edges.size())], Sort::Edge);
      return t_fn(pick(2) ? TermKind::Source : TermKind::Target, e);
    }
    if (!nodes.empty()) return t_var(nodes[pick((int)nodes.size())], Sort::Node);
    return t_node("n" + std::to_string(pick(3) + 1));
  }

  TermPtr label_term(const std::vector<std::pair<std::string, QKind>>& env, int depth) {
    switch (depth > 0 ? pick(6) : pick(3)) {
      case 0: return t_int(pick(7) - 3);
      case 1: return t_str(pick(2) ? "a" : "b");
      case 2: {
        std::vector<std::string> lists;
        for (const auto& [v, q] : env)
          if (q == QKind::L) lists.push_back(v);
        if (!lists.empty()) return t_var(lists[pick((int)lists.size())], Sort::List);
        return t_empty();
      }
      case 3: return t_fn(TermKind::LabelV, node_term(env));
      case 4:
        return t_bin(TermKind::ListConcat, label_term(env, depth - 1),
                     label_term(env, depth - 1));
      default:
        return t_bin(pick(2) ? TermKind::Add : TermKind::Mul, t_int(pick(5)),
                     t_fn(TermKind::Indeg, node_term(env)));
    }
  }

  FormulaPtr go(int depth, std::vector<std::pair<std::string, QKind>> env) {
    if (depth <= 0) {
      switch (pick(5)) {
        case 0: return f_true();
        case 1: return f_root(node_term(env));
        case 2:
          return f_cmp(pick(2) ? CmpOp::Eq : CmpOp::Ne,
                       t_fn(TermKind::MarkV, node_term(env)),
                       t_mark(pick(2) ? Mark::Red : Mark::None));
        case 3:
          return f_cmp(pick(2) ? CmpOp::Le : CmpOp::Gt, label_term(env, 0),
                       label_term(env, 0));
        default:
          return f_type(Sort::Int, label_term(env, 1));
      }
    }
    switch (pick(6)) {
      case 0: return f_not(go(depth - 1, env));
      case 1: return f_and2(go(depth - 1, env), go(depth - 1, env));
      case 2: return f_or2(go(depth - 1, env), go(depth - 1, env));
      case 3: {
        std::string v = "q" + std::to_string(env.size());
        env.emplace_back(v, QKind::V);
        return f_exists(QKind::V, v, go(depth - 1, env));
      }
      case 4: {
        std::string v = "q" + std::to_string(env.size());
        env.emplace_back(v, QKind::E);
        return f_exists(QKind::E, v, go(depth - 1, env));
      }
      default: {
        std::string v = "q" + std::to_string(env.size());
        env.emplace_back(v, QKind::L);
        return f_exists(QKind::L, v, go(depth - 1, env));
      }
    }
  }
};

}  // namespace

TEST_CASE("round-trip property on random grammar-derived formulas") {
  Gen gen(20240809);
  for (int i = 0; i < 300; ++i) {
    FormulaPtr f = gen.formula(3);
    std::string text = print_formula(f);
    CAPTURE(text);
    FormulaPtr again = fol(text);
    CHECK(equal_formulas(f, again));
    // a mutated token must not silently parse to the same tree
    std::string mutated = text;
    auto pos = mutated.find("red");
    if (pos != std::string::npos) {
      mutated.replace(pos, 3, "blue");
      FormulaPtr other = fol(mutated);
      CHECK(!equal_formulas(f, other));
    }
  }
}
