#include "gpv/enumerate.hpp"

namespace gpv {

std::string GraphEnumConfig::describe() const {
  std::string marks;
  for (auto m : node_marks) marks += std::string(marks.empty() ? "" : ",") + mark_name(m);
  std::string emarks;
  for (auto m : edge_marks) emarks += std::string(emarks.empty() ? "" : ",") + mark_name(m);
  std::string labs;
  for (const auto& l : labels) labs += (labs.empty() ? "" : ",") + print_list(l);
  return "nodes <= " + std::to_string(max_nodes) + ", edges <= " + std::to_string(max_edges) +
         ", labels {" + labs + "}, node marks {" + marks + "}, edge marks {" + emarks +
         "}, roots " + (vary_roots ? "both" : "unrooted");
}

namespace {

struct NodeCfg {
  const ListValue* label;
  Mark mark;
  bool rooted;
};

struct EdgeCfg {
  int src, tgt;
  const ListValue* label;
  Mark mark;
};

class Enumerator {
 public:
  Enumerator(const GraphEnumConfig& cfg, const std::function<bool(const HostGraph&)>& fn)
      : cfg_(cfg), fn_(fn) {
    for (const auto& l : cfg.labels)
      for (Mark m : cfg.node_marks)
        for (int r = 0; r < (cfg.vary_roots ? 2 : 1); ++r)
          node_cfgs_.push_back({&l, m, r == 1});
  }

  long long run() {
    for (int n = 0; n <= cfg_.max_nodes && !stopped_; ++n) {
      node_choice_.assign(n, 0);
      build_edge_cfgs(n);
      pick_nodes(0, 0, n);
    }
    return count_;
  }

 private:
  const GraphEnumConfig& cfg_;
  const std::function<bool(const HostGraph&)>& fn_;
  std::vector<NodeCfg> node_cfgs_;
  std::vector<EdgeCfg> edge_cfgs_;
  std::vector<int> node_choice_, edge_choice_;
  long long count_ = 0;
  bool stopped_ = false;

  void build_edge_cfgs(int n) {
    edge_cfgs_.clear();
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        for (const auto& l : cfg_.labels)
          for (Mark m : cfg_.edge_marks) edge_cfgs_.push_back({s, t, &l, m});
  }

  void pick_nodes(int i, int min_cfg, int n) {
    if (stopped_) return;
    if (i == n) {
      edge_choice_.clear();
      pick_edges(0, 0, n);
      return;
    }
    for (int c = min_cfg; c < (int)node_cfgs_.size() && !stopped_; ++c) {
      node_choice_[i] = c;
      pick_nodes(i + 1, c, n);  // non-decreasing: one representative per class
    }
  }

  void pick_edges(int m, int min_cfg, int n) {
    if (stopped_) return;
    emit(n);
    if (stopped_ || m == cfg_.max_edges || edge_cfgs_.empty()) return;
    edge_choice_.push_back(0);
    for (int c = min_cfg; c < (int)edge_cfgs_.size() && !stopped_; ++c) {
      edge_choice_.back() = c;
      pick_edges(m + 1, c, n);
    }
    edge_choice_.pop_back();
  }

  void emit(int n) {
    HostGraph g;
    g.nodes.reserve(n);
    for (int i = 0; i < n; ++i) {
      const NodeCfg& c = node_cfgs_[node_choice_[i]];
      g.nodes.push_back({"n" + std::to_string(i + 1), *c.label, c.mark, c.rooted});
    }
    int k = 1;
    for (int ec : edge_choice_) {
      const EdgeCfg& c = edge_cfgs_[ec];
      g.edges.push_back({"e" + std::to_string(k++), c.src, c.tgt, *c.label, c.mark});
    }
    g.finalize();
    ++count_;
    if (!fn_(g)) stopped_ = true;
  }
};

}  // namespace

long long for_each_host(const GraphEnumConfig& cfg,
                        const std::function<bool(const HostGraph&)>& fn) {
  Enumerator e(cfg, fn);
  return e.run();
}

ImpliesVerdict implies_bounded(const FormulaPtr& c, const FormulaPtr& d,
                               const GraphEnumConfig& cfg, const LabelUniverse& u) {
  ImpliesVerdict v;
  v.bound_description = cfg.describe() + "; " + u.describe();
  v.graphs_checked = for_each_host(cfg, [&](const HostGraph& g) {
    Evaluator ev(g, u);
    if (ev.eval(c) && !ev.eval(d)) {
      v.no_counterexample = false;
      v.counterexample = g;
      return false;
    }
    return true;
  });
  return v;
}

}  // namespace gpv
