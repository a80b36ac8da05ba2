#include "gpv/graph.hpp"

#include "gpv/diagnostics.hpp"

#include <algorithm>
#include <set>

namespace gpv {

const RuleNode* RuleGraph::node(const std::string& id) const {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

const RuleEdge* RuleGraph::edge(const std::string& id) const {
  for (const auto& e : edges)
    if (e.id == id) return &e;
  return nullptr;
}

int RuleGraph::indeg(const std::string& node_id) const {
  int d = 0;
  for (const auto& e : edges)
    if (e.tgt == node_id) ++d;
  return d;
}

int RuleGraph::outdeg(const std::string& node_id) const {
  int d = 0;
  for (const auto& e : edges)
    if (e.src == node_id) ++d;
  return d;
}

bool RuleGraph::is_total() const {
  for (const auto& n : nodes)
    if (!n.label || !n.mark || !n.rooted) return false;
  return true;
}

void HostGraph::finalize() {
  node_idx_.clear();
  edge_idx_.clear();
  out_.assign(nodes.size(), {});
  in_.assign(nodes.size(), {});
  for (size_t i = 0; i < nodes.size(); ++i) node_idx_[nodes[i].id] = (int)i;
  for (size_t i = 0; i < edges.size(); ++i) {
    edge_idx_[edges[i].id] = (int)i;
    out_[edges[i].src].push_back((int)i);
    in_[edges[i].tgt].push_back((int)i);
  }
}

int HostGraph::node_index(const std::string& id) const {
  auto it = node_idx_.find(id);
  return it == node_idx_.end() ? -1 : it->second;
}

int HostGraph::edge_index(const std::string& id) const {
  auto it = edge_idx_.find(id);
  return it == edge_idx_.end() ? -1 : it->second;
}

std::string HostGraph::fresh_node_id(const std::string& base) const {
  std::string id = base;
  while (node_index(id) >= 0) id += "'";
  return id;
}

std::string HostGraph::fresh_edge_id(const std::string& base) const {
  std::string id = base;
  while (edge_index(id) >= 0) id += "'";
  return id;
}

std::vector<std::string> validate_host_graph(const RuleGraph& g) {
  std::vector<std::string> out;
  std::set<std::string> node_ids, edge_ids;
  for (const auto& n : g.nodes) {
    if (!node_ids.insert(n.id).second) out.push_back("duplicate node id " + n.id);
    if (!n.label) {
      out.push_back("node " + n.id + " has undefined label");
    } else {
      ListValue v;
      if (!term_ground_value(n.label, v))
        out.push_back("node " + n.id + " label is not a host list: " + print_term(n.label));
    }
    if (!n.mark) {
      out.push_back("node " + n.id + " has undefined mark");
    } else if (!is_node_mark(*n.mark)) {
      out.push_back("node " + n.id + " carries non-host mark " + mark_name(*n.mark));
    }
    if (!n.rooted) out.push_back("node " + n.id + " has undefined rootedness");
  }
  for (const auto& e : g.edges) {
    if (!edge_ids.insert(e.id).second) out.push_back("duplicate edge id " + e.id);
    if (!g.has_node(e.src)) out.push_back("edge " + e.id + " has unknown source " + e.src);
    if (!g.has_node(e.tgt)) out.push_back("edge " + e.id + " has unknown target " + e.tgt);
    if (!e.label) {
      out.push_back("edge " + e.id + " has undefined label");
    } else {
      ListValue v;
      if (!term_ground_value(e.label, v))
        out.push_back("edge " + e.id + " label is not a host list: " + print_term(e.label));
    }
    if (!is_edge_mark(e.mark))
      out.push_back("edge " + e.id + " carries non-host mark " + mark_name(e.mark));
  }
  return out;
}

HostGraph to_host_graph(const RuleGraph& g) {
  auto diags = validate_host_graph(g);
  if (!diags.empty()) fail(Err::TypeMismatch, "not a host graph: " + diags.front());
  HostGraph h;
  for (const auto& n : g.nodes) {
    HostNode hn;
    hn.id = n.id;
    term_ground_value(n.label, hn.label);
    hn.mark = *n.mark;
    hn.rooted = *n.rooted;
    h.nodes.push_back(std::move(hn));
  }
  h.finalize();
  for (const auto& e : g.edges) {
    HostEdge he;
    he.id = e.id;
    he.src = h.node_index(e.src);
    he.tgt = h.node_index(e.tgt);
    term_ground_value(e.label, he.label);
    he.mark = e.mark;
    h.edges.push_back(std::move(he));
  }
  h.finalize();
  return h;
}

RuleGraph to_rule_graph(const HostGraph& g) {
  RuleGraph r;
  for (const auto& n : g.nodes)
    r.nodes.push_back({n.id, t_list(n.label), n.mark, n.rooted});
  for (const auto& e : g.edges)
    r.edges.push_back({e.id, g.nodes[e.src].id, g.nodes[e.tgt].id, t_list(e.label), e.mark});
  return r;
}

bool equal_hosts(const HostGraph& a, const HostGraph& b) {
  if (a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size()) return false;
  for (const auto& n : a.nodes) {
    int j = b.node_index(n.id);
    if (j < 0) return false;
    const auto& m = b.nodes[j];
    if (!(n.label == m.label && n.mark == m.mark && n.rooted == m.rooted)) return false;
  }
  for (const auto& e : a.edges) {
    int j = b.edge_index(e.id);
    if (j < 0) return false;
    const auto& f = b.edges[j];
    if (a.nodes[e.src].id != b.nodes[f.src].id) return false;
    if (a.nodes[e.tgt].id != b.nodes[f.tgt].id) return false;
    if (!(e.label == f.label && e.mark == f.mark)) return false;
  }
  return true;
}

// Isomorphism ----------------------------------------------------------------

namespace {

// Invariant profile used to prune the backtracking search.
std::string node_profile(const HostGraph& g, int i) {
  const auto& n = g.nodes[i];
  return print_list(n.label) + "|" + mark_name(n.mark) + "|" + (n.rooted ? "r" : "-") + "|" +
         std::to_string(g.indeg(i)) + "," + std::to_string(g.outdeg(i));
}

bool edges_compatible(const HostGraph& a, const HostGraph& b, const std::vector<int>& nmap) {
  // For every edge of a there must be a distinct matching edge of b; since
  // |E_a| = |E_b| a per-pair multiset comparison suffices.
  std::multiset<std::string> ea, eb;
  for (const auto& e : a.edges)
    ea.insert(std::to_string(nmap[e.src]) + ">" + std::to_string(nmap[e.tgt]) + "|" +
              print_list(e.label) + "|" + mark_name(e.mark));
  for (const auto& e : b.edges)
    eb.insert(std::to_string(e.src) + ">" + std::to_string(e.tgt) + "|" + print_list(e.label) +
              "|" + mark_name(e.mark));
  return ea == eb;
}

bool extend(const HostGraph& a, const HostGraph& b, size_t i, std::vector<int>& nmap,
            std::vector<bool>& used, const std::vector<std::string>& prof_a,
            const std::vector<std::string>& prof_b) {
  if (i == a.nodes.size()) return edges_compatible(a, b, nmap);
  for (size_t j = 0; j < b.nodes.size(); ++j) {
    if (used[j] || prof_a[i] != prof_b[j]) continue;
    nmap[i] = (int)j;
    used[j] = true;
    if (extend(a, b, i + 1, nmap, used, prof_a, prof_b)) return true;
    used[j] = false;
  }
  return false;
}

}  // namespace

std::optional<Premorphism> isomorphic(const HostGraph& a, const HostGraph& b) {
  if (a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size()) return std::nullopt;
  std::vector<std::string> prof_a, prof_b;
  for (size_t i = 0; i < a.nodes.size(); ++i) prof_a.push_back(node_profile(a, (int)i));
  for (size_t j = 0; j < b.nodes.size(); ++j) prof_b.push_back(node_profile(b, (int)j));
  {
    auto sa = prof_a, sb = prof_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  std::vector<int> nmap(a.nodes.size(), -1);
  std::vector<bool> used(b.nodes.size(), false);
  if (!extend(a, b, 0, nmap, used, prof_a, prof_b)) return std::nullopt;

  Premorphism p;
  for (size_t i = 0; i < a.nodes.size(); ++i) p.node_map[a.nodes[i].id] = b.nodes[nmap[i]].id;
  // Assign edges greedily between matched endpoints; attributes are equal by
  // edges_compatible, parallel edges are interchangeable.
  std::vector<bool> eused(b.edges.size(), false);
  for (const auto& e : a.edges) {
    bool found = false;
    for (size_t j = 0; j < b.edges.size(); ++j) {
      if (eused[j]) continue;
      const auto& f = b.edges[j];
      if (f.src == nmap[e.src] && f.tgt == nmap[e.tgt] && f.label == e.label &&
          f.mark == e.mark) {
        p.edge_map[e.id] = f.id;
        eused[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;  // unreachable
  }
  return p;
}

HostGraph replacement_graph(const HostGraph& g, const Premorphism& m) {
  // Injectivity check.
  std::set<std::string> seen;
  for (const auto& [l, h] : m.node_map)
    if (!seen.insert(h).second) fail(Err::NotInjective, "node map repeats " + h);
  seen.clear();
  for (const auto& [l, h] : m.edge_map)
    if (!seen.insert(h).second) fail(Err::NotInjective, "edge map repeats " + h);

  std::map<std::string, std::string> node_ren, edge_ren;  // host id -> new id
  std::set<std::string> taken_nodes, taken_edges;
  for (const auto& [lid, hid] : m.node_map) {
    if (g.node_index(hid) < 0) fail(Err::Internal, "match image node missing: " + hid);
    node_ren[hid] = lid;
    taken_nodes.insert(lid);
  }
  for (const auto& [lid, hid] : m.edge_map) {
    if (g.edge_index(hid) < 0) fail(Err::Internal, "match image edge missing: " + hid);
    edge_ren[hid] = lid;
    taken_edges.insert(lid);
  }
  auto rename = [](const std::string& id, std::map<std::string, std::string>& ren,
                   std::set<std::string>& taken) {
    auto it = ren.find(id);
    if (it != ren.end()) return it->second;
    std::string fresh = id;
    while (taken.count(fresh)) fresh += "'";
    ren[id] = fresh;
    taken.insert(fresh);
    return fresh;
  };

  HostGraph out;
  for (const auto& n : g.nodes) {
    HostNode c = n;
    c.id = rename(n.id, node_ren, taken_nodes);
    out.nodes.push_back(std::move(c));
  }
  for (const auto& e : g.edges) {
    HostEdge c = e;
    c.id = rename(e.id, edge_ren, taken_edges);
    out.edges.push_back(std::move(c));
  }
  out.finalize();
  return out;
}

}  // namespace gpv
