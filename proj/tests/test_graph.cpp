#include <doctest.h>

#include "testutil.hpp"

using namespace gpv;
using gpvtest::host;

TEST_CASE("host graph validation") {
  // empty graph is a host graph
  CHECK(validate_host_graph(RuleGraph{}).empty());
  // variable label is rejected
  RuleGraph g;
  g.nodes.push_back({"1", t_var("a", Sort::List), Mark::None, false});
  CHECK(!validate_host_graph(g).empty());
  // `any` mark is rejected
  RuleGraph h;
  h.nodes.push_back({"1", t_int(0), Mark::Any, false});
  CHECK(!validate_host_graph(h).empty());
  // dashed is an edge mark only
  RuleGraph k;
  k.nodes.push_back({"1", t_int(0), Mark::Dashed, false});
  CHECK(!validate_host_graph(k).empty());
  // grey is a node mark only
  RuleGraph m;
  m.nodes.push_back({"1", t_int(0), Mark::Grey, false});
  m.nodes.push_back({"2", t_int(0), Mark::None, false});
  m.edges.push_back({"e1", "1", "2", t_empty(), Mark::Grey});
  CHECK(!validate_host_graph(m).empty());
}

TEST_CASE("graph text format round trip") {
  std::string text = gpvtest::data_file("hosts/del_host.graph");
  HostGraph g = host(text);
  CHECK(g.nodes.size() == 3);
  CHECK(g.edges.size() == 2);
  std::string printed = print_host_graph(g);
  HostGraph again = host(printed);
  CHECK(equal_hosts(g, again));
  // printing is bit-stable
  CHECK(print_host_graph(again) == printed);
}

TEST_CASE("isomorphism examples") {
  HostGraph g = host("node a 1 red root\nnode b 2 none\nedge e a b empty none");
  // identity
  auto self = isomorphic(g, g);
  REQUIRE(self.has_value());
  CHECK(self->node_map.at("a") == "a");
  // path vs antiparallel pair
  HostGraph path = host("node a 0 none\nnode b 0 none\nedge x a b empty none");
  HostGraph anti = host("node a 0 none\nnode b 0 none\nedge x a b empty none\n"
                        "edge y b a empty none");
  CHECK(!isomorphic(path, anti).has_value());
  // permuted identifiers
  HostGraph perm = host("node b 2 none\nnode a 1 red root\nedge f a b empty none");
  auto m = isomorphic(g, perm);
  REQUIRE(m.has_value());
  CHECK(m->node_map.at("a") == "a");
  CHECK(m->node_map.at("b") == "b");
  CHECK(m->edge_map.at("e") == "f");
}

TEST_CASE("isomorphic agrees with the brute-force oracle on enumerated graphs") {
  GraphEnumConfig cfg;
  cfg.max_nodes = 2;
  cfg.max_edges = 2;
  cfg.node_marks = {Mark::None, Mark::Red};
  cfg.edge_marks = {Mark::None};
  cfg.vary_roots = true;
  std::vector<HostGraph> all;
  for_each_host(cfg, [&](const HostGraph& g) {
    all.push_back(g);
    return true;
  });
  REQUIRE(all.size() > 20);
  int checked = 0;
  for (size_t i = 0; i < all.size(); i += 7)
    for (size_t j = 0; j < all.size(); j += 11) {
      bool fast = isomorphic(all[i], all[j]).has_value();
      bool slow = gpvtest::iso_oracle(all[i], all[j]);
      CHECK_MESSAGE(fast == slow, "iso mismatch:\n", print_host_graph(all[i]), "--\n",
                    print_host_graph(all[j]));
      ++checked;
    }
  CHECK(checked > 100);
}

TEST_CASE("isomorphism is an equivalence on a sample") {
  HostGraph a = host("node x 0 none\nnode y 0 none\nedge e x y 1 none");
  HostGraph b = host("node p 0 none\nnode q 0 none\nedge f p q 1 none");
  HostGraph c = host("node s 0 none\nnode t 0 none\nedge g s t 1 none");
  CHECK(isomorphic(a, a).has_value());
  CHECK(isomorphic(a, b).has_value() == isomorphic(b, a).has_value());
  CHECK((isomorphic(a, b) && isomorphic(b, c)) ? isomorphic(a, c).has_value() : true);
}

TEST_CASE("replacement graph renames the image and freshens collisions") {
  HostGraph g = host("node n7 0 none\nnode n8 1 none\nedge k n7 n8 5 none");
  // identity-style inclusion: renaming to itself changes nothing
  Premorphism id;
  id.node_map = {{"n7", "n7"}, {"n8", "n8"}};
  id.edge_map = {{"k", "k"}};
  HostGraph same = replacement_graph(g, id);
  CHECK(equal_hosts(g, same));

  // rename host node n7 to L's id 1
  Premorphism m;
  m.node_map = {{"1", "n7"}};
  HostGraph r = replacement_graph(g, m);
  CHECK(r.node_index("1") >= 0);
  CHECK(r.node_index("n7") < 0);
  REQUIRE(isomorphic(r, g).has_value());

  // collision: host already has a node named 1 outside the image
  HostGraph h = host("node 1 0 none\nnode n2 1 none");
  Premorphism m2;
  m2.node_map = {{"1", "n2"}};
  HostGraph r2 = replacement_graph(h, m2);
  CHECK(r2.node_index("1") >= 0);   // the image now carries id 1
  CHECK(r2.node_index("1'") >= 0);  // the outside node was freshened
  CHECK(isomorphic(r2, h).has_value());
  auto lbl = r2.nodes[r2.node_index("1")].label;
  CHECK(lbl == ListValue{Atom::of_int(1)});  // image of n2

  // non-injective map is rejected
  Premorphism bad;
  bad.node_map = {{"1", "n2"}, {"2", "n2"}};
  CHECK_THROWS_AS(replacement_graph(h, bad), GpvError);
}

TEST_CASE("replacement output is always isomorphic to its input") {
  HostGraph g = host(gpvtest::data_file("hosts/triangle.graph"));
  Premorphism m;
  m.node_map = {{"1", "n2"}, {"2", "n3"}};
  m.edge_map = {{"e1", "e2"}};
  HostGraph r = replacement_graph(g, m);
  CHECK(isomorphic(r, g).has_value());
  CHECK(gpvtest::iso_oracle(r, g));
}
