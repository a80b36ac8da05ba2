#include <doctest.h>

#include "testutil.hpp"

using namespace gpv;
using gpvtest::fol;
using gpvtest::host;

namespace {
const LabelUniverse kU;

Program twocol() { return parse_program(gpvtest::data_file("twocolouring.gpp")); }
}  // namespace

TEST_CASE("parse_program expands procedures and normalises if-then") {
  Program p = twocol();
  CHECK(p.rules.size() == 8);
  // Main = (init; Colour!)!; if Illegal then unmark! (else skip inserted)
  REQUIRE(p.main->kind == CmdKind::Seq);
  const Command& loop = *p.main->a;
  CHECK(loop.kind == CmdKind::Loop);
  CHECK(loop.a->kind == CmdKind::Seq);
  CHECK(loop.a->a->rules == std::vector<std::string>{"init"});
  CHECK(loop.a->b->kind == CmdKind::Loop);
  CHECK(loop.a->b->a->rules.size() == 4);  // the Colour set
  const Command& branch = *p.main->b;
  CHECK(branch.kind == CmdKind::If);
  CHECK(branch.a->rules.size() == 2);  // Illegal
  CHECK(branch.b->kind == CmdKind::Loop);
  CHECK(branch.c->kind == CmdKind::Skip);
  CHECK(print_command(p.main) ==
        "(init; {col_blue_fw, col_blue_bw, col_red_fw, col_red_bw}!)!; "
        "if {ill_blue, ill_red} then unmark! else skip");
}

TEST_CASE("trivial and erroneous programs") {
  Program p = parse_program("Main = skip");
  CHECK(p.main->kind == CmdKind::Skip);
  CHECK_THROWS_WITH_AS(parse_program("Main = P\nP = P"),
                       doctest::Contains("RecursiveProcedure"), GpvError);
  CHECK_THROWS_WITH_AS(parse_program("P = skip"), doctest::Contains("MissingMain"),
                       GpvError);
  // command round trip through the printer
  Program q = parse_program("Main = (skip or fail); break");
  CHECK(equal_commands(parse_command_over(print_command(q.main), q), q.main));
}

TEST_CASE("execute: skip, fail, sequences, or") {
  Program p = parse_program("Main = skip");
  HostGraph g = host("node n1 0 none");
  ExecOutcome out = execute(p, g);
  REQUIRE(out.results.size() == 1);
  CHECK(equal_hosts(out.results[0], g));
  CHECK(!out.fail);
  CHECK(!out.diverged);

  ExecOutcome f = execute(parse_program("Main = fail"), g);
  CHECK(f.results.empty());
  CHECK(f.fail);

  ExecOutcome o = execute(parse_program("Main = skip or fail"), g);
  CHECK(o.results.size() == 1);
  CHECK(o.fail);
}

TEST_CASE("execute: rule calls and failure") {
  Program p = parse_program(
      "Main = mark\n"
      "mark(a: list)\n[ node 1 a none ]\n=>\n[ node 1 a red ]\ninterface {1}");
  HostGraph g = host("node n1 0 none\nnode n2 1 none");
  ExecOutcome out = execute(p, g);
  CHECK(out.results.size() == 2);  // either node, deduped up to iso? labels differ
  CHECK(!out.fail);
  HostGraph marked = host("node n1 0 red\nnode n2 1 red");
  ExecOutcome none_left = execute(p, marked);
  CHECK(none_left.results.empty());
  CHECK(none_left.fail);
}

TEST_CASE("execute: loop semantics including failure exit") {
  // mark! marks every node; the loop exits with the fully marked graph
  Program p = parse_program(
      "Main = mark!\n"
      "mark(a: list)\n[ node 1 a none ]\n=>\n[ node 1 a red ]\ninterface {1}");
  HostGraph g = host("node n1 0 none\nnode n2 1 none");
  ExecOutcome out = execute(p, g);
  REQUIRE(out.results.size() == 1);
  for (const auto& n : out.results[0].nodes) CHECK(n.mark == Mark::Red);
  CHECK(!out.fail);  // Loop2 turns body failure into loop exit
  CHECK(!out.diverged);
}

TEST_CASE("execute: break leaves the loop with the reached graph") {
  Program p = parse_program(
      "Main = (mark; break)!\n"
      "mark(a: list)\n[ node 1 a none ]\n=>\n[ node 1 a red ]\ninterface {1}");
  HostGraph g = host("node n1 0 none\nnode n2 1 none");
  ExecOutcome out = execute(p, g);
  // exactly one application happens, then break exits
  REQUIRE(out.results.size() == 2);
  for (const auto& h : out.results) {
    int reds = 0;
    for (const auto& n : h.nodes) reds += n.mark == Mark::Red;
    CHECK(reds == 1);
  }
  CHECK(!out.fail);
}

TEST_CASE("execute: if does not commit the condition's effect, try does") {
  const char* rules =
      "mark(a: list)\n[ node 1 a none ]\n=>\n[ node 1 a red ]\ninterface {1}\n";
  HostGraph g = host("node n1 0 none");
  ExecOutcome iff =
      execute(parse_program(std::string("Main = if mark then skip else fail\n") + rules), g);
  REQUIRE(iff.results.size() == 1);
  CHECK(iff.results[0].nodes[0].mark == Mark::None);  // effect discarded
  ExecOutcome tr =
      execute(parse_program(std::string("Main = try mark then skip else fail\n") + rules), g);
  REQUIRE(tr.results.size() == 1);
  CHECK(tr.results[0].nodes[0].mark == Mark::Red);  // effect kept
  // failing condition selects the else branch on the original graph
  HostGraph red = host("node n1 0 red");
  ExecOutcome els =
      execute(parse_program(std::string("Main = if mark then fail else skip\n") + rules), red);
  CHECK(els.results.size() == 1);
  CHECK(!els.fail);
}

TEST_CASE("execute: fuel exhaustion reports divergence") {
  Program p = parse_program(
      "Main = spin!\n"
      "spin(a: list)\n[ node 1 a none ]\n=>\n[ node 1 a:0 none ]\ninterface {1}");
  HostGraph g = host("node n1 0 none");
  ExecOutcome out = execute(p, g, 50);
  CHECK(out.diverged);
}

TEST_CASE("2-colouring on a 2-node path satisfies d on every branch") {
  Program p = twocol();
  HostGraph g = host(gpvtest::data_file("hosts/path2.graph"));
  ExecOutcome out = execute(p, g);
  CHECK(!out.fail);
  CHECK(!out.diverged);
  REQUIRE(!out.results.empty());
  FormulaPtr d = fol(gpvtest::paper::kPostD);
  for (const auto& h : out.results) CHECK(eval_on(h, d, kU));
}

TEST_CASE("2-colouring restores odd cycles") {
  Program p = twocol();
  HostGraph tri = host(gpvtest::data_file("hosts/triangle.graph"));
  ExecOutcome out = execute(p, tri, 100000);
  CHECK(!out.diverged);
  REQUIRE(!out.results.empty());
  for (const auto& h : out.results) CHECK(isomorphic(h, tri).has_value());
}

TEST_CASE("execution result sets are deterministic") {
  Program p = twocol();
  HostGraph g = host(gpvtest::data_file("hosts/path2.graph"));
  ExecOutcome a = execute(p, g);
  ExecOutcome b = execute(p, g);
  REQUIRE(a.results.size() == b.results.size());
  for (size_t i = 0; i < a.results.size(); ++i)
    CHECK(equal_hosts(a.results[i], b.results[i]));
}
