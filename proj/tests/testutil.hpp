#pragma once

#include "gpv/calculus.hpp"
#include "gpv/diagnostics.hpp"
#include "gpv/enumerate.hpp"
#include "gpv/eval.hpp"
#include "gpv/formula_parser.hpp"
#include "gpv/graph_io.hpp"
#include "gpv/interp.hpp"
#include "gpv/program.hpp"
#include "gpv/slp.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace gpvtest {

inline std::string data_file(const std::string& name) {
  std::string path = std::string(GPV_DATA_DIR) + "/" + name;
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing data file ", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline gpv::HostGraph host(const std::string& text) { return gpv::parse_host_graph(text); }

inline gpv::FormulaPtr fol(const std::string& text) { return gpv::parse_formula(text); }

// Formulas from the 2-colouring case study (transcribed verbatim; universal
// quantifiers written with the forall sugar).
namespace paper {

inline const char* kPreC =
    "forallV x (mV(x) = none /\\ ~root(x)) /\\ forallE x (mE(x) = none)";

inline const char* kPostD =
    "forallV x (mV(x) = red \\/ mV(x) = blue)"
    " /\\ ~existsE x (s(x) != t(x) /\\ mV(s(x)) = mV(t(x)))";

inline const char* kInvE =
    "forallV x ((mV(x) = red \\/ mV(x) = blue) /\\ ~root(x))"
    " /\\ forallE x (mE(x) = none)";

inline const char* kInvF =
    "forallV x ((mV(x) = red \\/ mV(x) = blue \\/ mV(x) = none) /\\ ~root(x))"
    " /\\ forallE x (mE(x) = none)";

inline const char* kPreQ = "~existsE x (mV(s(x)) != none)";

inline const char* kSlpFInit =
    "existsV y (forallV x (x = y \\/ ((mV(x) = red \\/ mV(x) = blue \\/ mV(x) = none)"
    " /\\ ~root(x))) /\\ mV(y) = red /\\ ~root(y)) /\\ forallE x (mE(x) = none)";

inline const char* kSlpFColBlue =
    "existsV u, v (forallV x (x = u \\/ x = v \\/ ((mV(x) = red \\/ mV(x) = blue \\/"
    " mV(x) = none) /\\ ~root(x))) /\\ mV(u) = red /\\ mV(v) = blue /\\ ~root(u)"
    " /\\ ~root(v) /\\ existsE y ((s(y) = u /\\ t(y) = v) \\/ (t(y) = u /\\ s(y) = v)))"
    " /\\ forallE x (mE(x) = none)";

inline const char* kSlpFUnmark =
    "existsV y (forallV x (x = y \\/ ((mV(x) = red \\/ mV(x) = blue \\/ mV(x) = none)"
    " /\\ ~root(x))) /\\ mV(y) = none /\\ ~root(y)) /\\ forallE x (mE(x) = none)";

inline const char* kFailColour =
    "~existsE x ((((mV(s(x)) = red \\/ mV(s(x)) = blue) /\\ mV(t(x)) = none)"
    " \\/ ((mV(t(x)) = red \\/ mV(t(x)) = blue) /\\ mV(s(x)) = none))"
    " /\\ ~root(s(x)) /\\ ~root(t(x)))";

inline const char* kFailInitColour = "~existsV x (mV(x) = none /\\ ~root(x))";

inline const char* kFailUnmark = "~existsV x (mV(x) != none /\\ ~root(x))";

inline const char* kFailIllegal =
    "~existsE x (s(x) != t(x) /\\ ((mV(s(x)) = red /\\ mV(t(x)) = red)"
    " \\/ (mV(s(x)) = blue /\\ mV(t(x)) = blue)))";

inline const char* kSuccessIllegal =
    "existsE x (s(x) != t(x) /\\ ((mV(s(x)) = red /\\ mV(t(x)) = red)"
    " \\/ (mV(s(x)) = blue /\\ mV(t(x)) = blue)))";

}  // namespace paper

// Bounded logical equivalence of two closed formulas over an enumeration of
// host graphs. Returns an empty optional when they agree everywhere.
inline std::optional<gpv::HostGraph> find_disagreement(const gpv::FormulaPtr& a,
                                                       const gpv::FormulaPtr& b,
                                                       const gpv::GraphEnumConfig& cfg,
                                                       const gpv::LabelUniverse& u) {
  std::optional<gpv::HostGraph> witness;
  gpv::for_each_host(cfg, [&](const gpv::HostGraph& g) {
    gpv::Evaluator ev(g, u);
    if (ev.eval(a) != ev.eval(b)) {
      witness = g;
      return false;
    }
    return true;
  });
  return witness;
}

// Independent isomorphism oracle: brute force over all node bijections and,
// per bijection, a greedy multiset check of edges.
inline bool iso_oracle(const gpv::HostGraph& a, const gpv::HostGraph& b) {
  if (a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size()) return false;
  std::vector<int> perm(a.nodes.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = (int)i;
  do {
    bool ok = true;
    for (size_t i = 0; i < perm.size() && ok; ++i) {
      const auto& x = a.nodes[i];
      const auto& y = b.nodes[perm[i]];
      ok = x.label == y.label && x.mark == y.mark && x.rooted == y.rooted;
    }
    if (ok) {
      std::vector<bool> used(b.edges.size(), false);
      bool edges_ok = true;
      for (const auto& e : a.edges) {
        bool found = false;
        for (size_t j = 0; j < b.edges.size(); ++j) {
          if (used[j]) continue;
          const auto& f = b.edges[j];
          if (f.src == perm[e.src] && f.tgt == perm[e.tgt] && f.label == e.label &&
              f.mark == e.mark) {
            used[j] = true;
            found = true;
            break;
          }
        }
        if (!found) {
          edges_ok = false;
          break;
        }
      }
      if (edges_ok) return true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Independent match oracle: all injective premorphisms L -> g as node/edge
// index maps, ignoring labels and marks (callers refine).
struct RawPremorphism {
  std::map<std::string, int> nodes;
  std::map<std::string, int> edges;
};

inline std::vector<RawPremorphism> premorphism_oracle(const gpv::RuleGraph& lhs,
                                                      const gpv::HostGraph& g) {
  std::vector<RawPremorphism> out;
  RawPremorphism cur;
  std::vector<bool> used_nodes(g.nodes.size(), false), used_edges(g.edges.size(), false);
  std::function<void(size_t)> pick_edge;
  std::function<void(size_t)> pick_node = [&](size_t i) {
    if (i == lhs.nodes.size()) {
      pick_edge(0);
      return;
    }
    for (size_t j = 0; j < g.nodes.size(); ++j) {
      if (used_nodes[j]) continue;
      used_nodes[j] = true;
      cur.nodes[lhs.nodes[i].id] = (int)j;
      pick_node(i + 1);
      cur.nodes.erase(lhs.nodes[i].id);
      used_nodes[j] = false;
    }
  };
  pick_edge = [&](size_t k) {
    if (k == lhs.edges.size()) {
      out.push_back(cur);
      return;
    }
    const auto& le = lhs.edges[k];
    for (size_t j = 0; j < g.edges.size(); ++j) {
      if (used_edges[j]) continue;
      if (g.edges[j].src != cur.nodes[le.src] || g.edges[j].tgt != cur.nodes[le.tgt])
        continue;
      used_edges[j] = true;
      cur.edges[le.id] = (int)j;
      pick_edge(k + 1);
      cur.edges.erase(le.id);
      used_edges[j] = false;
    }
  };
  pick_node(0);
  return out;
}

}  // namespace gpvtest
