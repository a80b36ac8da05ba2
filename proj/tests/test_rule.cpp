#include <doctest.h>

#include "testutil.hpp"

using namespace gpv;
using gpvtest::fol;
using gpvtest::host;

namespace {

RuleSchema del_rule() { return parse_rule(gpvtest::data_file("del.gpr")); }

const LabelUniverse kU;

}  // namespace

TEST_CASE("parse_rule reads the del declaration faithfully") {
  RuleSchema r = del_rule();
  CHECK(r.name == "del");
  REQUIRE(r.params.size() == 5);
  CHECK(r.params[3].name == "d");
  CHECK(r.params[3].sort == Sort::Int);
  CHECK(r.lhs.nodes.size() == 3);
  CHECK(r.lhs.edges.size() == 2);
  CHECK(r.rhs.nodes.size() == 2);
  CHECK(r.rhs.edges.size() == 1);
  CHECK(r.interface_nodes == std::vector<std::string>{"1", "2"});
  CHECK(*r.rhs.node("1")->mark == Mark::Red);
  CHECK(print_formula(r.condition) == "d >= e");
  CHECK(print_term(r.rhs.edge("e1")->label) == "d+e");
}

TEST_CASE("rule validation rejects the spec's error cases") {
  // d+e in the left-hand side is not simple
  CHECK_THROWS_WITH_AS(
      parse_rule("bad(d, e: int)\n[ node 1 d+e none ]\n=>\n[ node 1 d+e none ]\n"
                 "interface {1}"),
      doctest::Contains("NonSimpleLHS"), GpvError);
  // two list variables in one label are not simple
  CHECK_THROWS_WITH_AS(
      parse_rule("bad(a, b: list)\n[ node 1 a:b:a none ]\n=>\n[ node 1 a none ]\n"
                 "interface {1}"),
      doctest::Contains("NonSimpleLHS"), GpvError);
  // condition variable absent from the left-hand graph
  CHECK_THROWS_WITH_AS(
      parse_rule("bad(a: list; d: int)\n[ node 1 a none ]\n=>\n[ node 1 a none ]\n"
                 "interface {1}\nwhere d >= 0"),
      doctest::Contains("UndeclaredVariable"), GpvError);
  // right-hand variable not in the left
  CHECK_THROWS_WITH_AS(
      parse_rule("bad(a, b: list)\n[ node 1 a none ]\n=>\n[ node 1 b none ]\n"
                 "interface {1}"),
      doctest::Contains("RHSVariableNotInLHS"), GpvError);
  // undeclared variable anywhere
  CHECK_THROWS_WITH_AS(
      parse_rule("bad(a: list)\n[ node 1 c none ]\n=>\n[ node 1 a none ]\n"
                 "interface {1}"),
      doctest::Contains("UndeclaredVariable"), GpvError);
}

TEST_CASE("find_matches on the paper's del host") {
  RuleSchema r = del_rule();
  HostGraph g = host(gpvtest::data_file("hosts/del_host.graph"));
  auto matches = find_matches(r, g);
  REQUIRE(matches.size() == 1);  // the swapped match violates d >= e
  const MatchBinding& m = matches[0];
  CHECK(g.nodes[m.nodes.at("1")].id == "n1");
  CHECK(g.nodes[m.nodes.at("2")].id == "n2");
  CHECK(g.nodes[m.nodes.at("3")].id == "n3");
  CHECK(m.labels.at("a") == ListValue{Atom::of_int(0)});
  CHECK(m.labels.at("b") == ListValue{Atom::of_int(1)});
  CHECK(m.labels.at("c") == ListValue{Atom::of_int(2)});
  CHECK(m.labels.at("d") == ListValue{Atom::of_int(5)});
  CHECK(m.labels.at("e") == ListValue{Atom::of_int(3)});

  // brute-force oracle: exactly two injective premorphisms preserve structure
  auto all = gpvtest::premorphism_oracle(r.lhs, g);
  CHECK(all.size() == 2);

  // empty graph: no matches
  HostGraph empty;
  empty.finalize();
  CHECK(find_matches(r, empty).empty());
}

TEST_CASE("any-marked node matches grey and binds mu") {
  RuleSchema unmark = parse_rule(
      "unmark(a: list)\n[ node 1 a any ]\n=>\n[ node 1 a none ]\ninterface {1}");
  HostGraph g = host("node n1 0 grey");
  auto matches = find_matches(unmark, g);
  REQUIRE(matches.size() == 1);
  CHECK(matches[0].mu_nodes.at("1") == Mark::Grey);
  // unmarked nodes are not matched by the wildcard
  HostGraph h = host("node n1 0 none");
  CHECK(find_matches(unmark, h).empty());
}

TEST_CASE("check_dangling") {
  RuleSchema r = del_rule();
  HostGraph g = host(gpvtest::data_file("hosts/del_host.graph"));
  auto matches = find_matches(r, g);
  REQUIRE(matches.size() == 1);
  CHECK(check_dangling(r, g, matches[0]));

  // an extra edge at n3 blocks deletion
  HostGraph bad = host(gpvtest::data_file("hosts/del_host.graph") +
                       "edge extra n2 n3 empty none\n");
  auto matches2 = find_matches(r, bad);
  REQUIRE(matches2.size() == 1);
  CHECK(!check_dangling(r, bad, matches2[0]));
  CHECK(apply_rule(r, bad).empty());

  // a rule that deletes nothing never dangles
  RuleSchema keep = parse_rule(
      "keep(a: list)\n[ node 1 a none ]\n=>\n[ node 1 a red ]\ninterface {1}");
  HostGraph tri = host(gpvtest::data_file("hosts/triangle.graph"));
  for (const auto& m : find_matches(keep, tri)) CHECK(check_dangling(keep, tri, m));
}

TEST_CASE("apply realises the hand-built double pushout for del") {
  RuleSchema r = del_rule();
  HostGraph g = host(gpvtest::data_file("hosts/del_host.graph"));
  auto results = apply_rule(r, g);
  REQUIRE(results.size() == 1);
  HostGraph expected = host(
      "node n1 0 red\nnode n2 1 none\nedge e1 n1 n2 8 none");
  CHECK(isomorphic(results[0], expected).has_value());
  CHECK(gpvtest::iso_oracle(results[0], expected));
}

TEST_CASE("a rule with empty left-hand side always applies") {
  RuleSchema grow = parse_rule(
      "grow()\n[]\n=>\n[ node 1 0 green ]\ninterface {}");
  HostGraph g = host("node n1 7 none");
  auto results = apply_rule(grow, g);
  REQUIRE(results.size() == 1);
  CHECK(results[0].nodes.size() == 2);
  // and an inapplicable rule yields the empty set
  RuleSchema blue = parse_rule(
      "blue(a: list)\n[ node 1 a blue ]\n=>\n[ node 1 a blue ]\ninterface {1}");
  CHECK(apply_rule(blue, g).empty());
}

TEST_CASE("string and list pattern matching") {
  RuleSchema r = parse_rule(
      "pat(x: list; s: string; c: char)\n"
      "[ node 1 1:x none\n  node 2 c.s none ]\n=>\n"
      "[ node 1 x none\n  node 2 s none ]\ninterface {1, 2}");
  HostGraph g = host("node n1 1:2:3 none\nnode n2 \"abc\" none");
  auto matches = find_matches(r, g);
  REQUIRE(matches.size() == 1);
  CHECK(matches[0].labels.at("x") == ListValue({Atom::of_int(2), Atom::of_int(3)}));
  CHECK(matches[0].labels.at("c") == ListValue{Atom::of_str("a")});
  CHECK(matches[0].labels.at("s") == ListValue{Atom::of_str("bc")});
  auto results = apply_rule(r, g);
  REQUIRE(results.size() == 1);
  HostGraph expected = host("node n1 2:3 none\nnode n2 \"bc\" none");
  CHECK(isomorphic(results[0], expected).has_value());
}

TEST_CASE("repeated variables across labels force equal host labels") {
  RuleSchema del2 = parse_rule(gpvtest::data_file("dupdel.gpp").substr(0, 0) +
                               "delete(a: list)\n[ node 1 a grey\n  node 2 a grey ]\n"
                               "=>\n[]\ninterface {}");
  HostGraph equal_labels = host("node n1 5 grey\nnode n2 5 grey");
  CHECK(find_matches(del2, equal_labels).size() == 2);  // two symmetric matches
  HostGraph diff_labels = host("node n1 5 grey\nnode n2 6 grey");
  CHECK(find_matches(del2, diff_labels).empty());
}

TEST_CASE("generalised application agrees with schema application") {
  // apply_generalised(r_or, g) == apply(r, g) on enumerated hosts
  RuleSchema r = del_rule();
  GeneralisedRule w = generalise(r);
  GraphEnumConfig cfg;
  cfg.max_nodes = 3;
  cfg.max_edges = 2;
  cfg.labels = {{Atom::of_int(0)}, {Atom::of_int(1)}};
  cfg.node_marks = {Mark::None};
  cfg.edge_marks = {Mark::None};
  cfg.vary_roots = false;
  long long graphs = 0, applications = 0;
  for_each_host(cfg, [&](const HostGraph& g) {
    ++graphs;
    auto direct = apply_rule(r, g);
    auto general = apply_generalised(w, g, kU);
    REQUIRE_MESSAGE(direct.size() == general.results.size(), "host:\n",
                    print_host_graph(g));
    applications += (long long)direct.size();
    for (const auto& h : direct) {
      bool found = false;
      for (const auto& h2 : general.results)
        if (isomorphic(h, h2)) found = true;
      CHECK(found);
    }
    return true;
  });
  CHECK(graphs > 100);
  CHECK(applications > 0);
}

TEST_CASE("inverse rule recovers the input graph") {
  RuleSchema r = del_rule();
  // labels kept inside the default universe so the inverse can rebind them
  HostGraph g = host(
      "node n1 0 none\nnode n2 1 none\nnode n3 2 none\n"
      "edge e1 n1 n2 2 none\nedge e2 n1 n3 1 none");
  auto forward = apply_rule(r, g);
  REQUIRE(forward.size() == 1);
  GeneralisedRule winv = inverse(generalise(r));
  auto back = apply_generalised(winv, forward[0], kU);
  bool recovered = false;
  for (const auto& h : back.results)
    if (isomorphic(h, g)) recovered = true;
  CHECK(recovered);
}

TEST_CASE("a false right application condition blocks every application") {
  RuleSchema r = del_rule();
  GeneralisedRule w = generalise(r);
  w.ac_right = f_false();
  HostGraph g = host(gpvtest::data_file("hosts/del_host.graph"));
  CHECK(apply_generalised(w, g, kU).results.empty());
}

TEST_CASE("expand_any_marks instantiates wildcards") {
  RuleSchema unmark = parse_rule(
      "unmark(a: list)\n[ node 1 a any ]\n=>\n[ node 1 a none ]\ninterface {1}");
  auto variants = expand_any_marks(unmark);
  REQUIRE(variants.size() == 4);  // red green blue grey
  std::set<Mark> seen;
  for (const auto& v : variants) seen.insert(*v.lhs.node("1")->mark);
  CHECK(seen == std::set<Mark>{Mark::Red, Mark::Green, Mark::Blue, Mark::Grey});
  // a rule without wildcards expands to itself
  CHECK(expand_any_marks(del_rule()).size() == 1);
}
