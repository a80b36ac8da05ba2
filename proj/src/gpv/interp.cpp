#include "gpv/interp.hpp"

#include "gpv/diagnostics.hpp"

namespace gpv {

namespace {

// Intermediate states of one command: proper results, break escapes carrying
// the graph reached, plus fail/divergence flags.
struct States {
  std::vector<HostGraph> graphs;
  std::vector<HostGraph> breaks;
  bool fail = false;
  bool diverged = false;

  void absorb_flags(const States& o) {
    fail |= o.fail;
    diverged |= o.diverged;
  }
};

struct Interp {
  const Program& p;
  long long fuel;

  States run(const CommandPtr& c, const HostGraph& g) {
    States out;
    switch (c->kind) {
      case CmdKind::Skip:
        out.graphs.push_back(g);
        return out;
      case CmdKind::Fail:
        out.fail = true;
        return out;
      case CmdKind::Break:
        out.breaks.push_back(g);
        return out;
      case CmdKind::RuleCall: {
        bool applied = false;
        for (const auto& name : c->rules) {
          const RuleSchema& r = p.rule(name);
          for (const auto& m : find_matches(r, g)) {
            if (!check_dangling(r, g, m)) continue;
            if (fuel <= 0) {
              out.diverged = true;
              return out;
            }
            auto h = apply_match(r, g, m);
            if (!h) continue;  // label evaluation failed: not applicable
            --fuel;
            applied = true;
            insert_unique_iso(out.graphs, std::move(*h));
          }
        }
        if (!applied) out.fail = true;
        return out;
      }
      case CmdKind::Seq: {
        States first = run(c->a, g);
        out.absorb_flags(first);
        out.breaks = std::move(first.breaks);  // break skips the tail
        for (const auto& h : first.graphs) {
          States second = run(c->b, h);
          out.absorb_flags(second);
          for (auto& x : second.graphs) insert_unique_iso(out.graphs, std::move(x));
          for (auto& x : second.breaks) insert_unique_iso(out.breaks, std::move(x));
        }
        return out;
      }
      case CmdKind::Or: {
        States l = run(c->a, g);
        States r = run(c->b, g);
        out = std::move(l);
        out.absorb_flags(r);
        for (auto& x : r.graphs) insert_unique_iso(out.graphs, std::move(x));
        for (auto& x : r.breaks) insert_unique_iso(out.breaks, std::move(x));
        return out;
      }
      case CmdKind::If:
      case CmdKind::Try: {
        States cond = run(c->a, g);
        out.diverged |= cond.diverged;
        bool succeeded = !cond.graphs.empty() || !cond.breaks.empty();
        if (succeeded) {
          if (c->kind == CmdKind::If) {
            States t = run(c->b, g);
            out.absorb_flags(t);
            for (auto& x : t.graphs) insert_unique_iso(out.graphs, std::move(x));
            for (auto& x : t.breaks) insert_unique_iso(out.breaks, std::move(x));
          } else {
            for (const auto& h : cond.graphs) {
              States t = run(c->b, h);
              out.absorb_flags(t);
              for (auto& x : t.graphs) insert_unique_iso(out.graphs, std::move(x));
              for (auto& x : t.breaks) insert_unique_iso(out.breaks, std::move(x));
            }
            for (const auto& h : cond.breaks) {
              States t = run(c->b, h);
              out.absorb_flags(t);
              for (auto& x : t.graphs) insert_unique_iso(out.graphs, std::move(x));
              for (auto& x : t.breaks) insert_unique_iso(out.breaks, std::move(x));
            }
          }
        }
        if (cond.fail) {
          States e = run(c->c, g);
          out.absorb_flags(e);
          for (auto& x : e.graphs) insert_unique_iso(out.graphs, std::move(x));
          for (auto& x : e.breaks) insert_unique_iso(out.breaks, std::move(x));
        }
        return out;
      }
      case CmdKind::Loop: {
        // Worklist over states reached by iterating the body, deduplicated up
        // to isomorphism. [Loop1] continues, [Loop2] exits on body failure,
        // [Loop3] exits through break.
        std::vector<HostGraph> seen;
        std::vector<size_t> work;
        insert_unique_iso(seen, g);
        work.push_back(0);
        while (!work.empty()) {
          size_t idx = work.back();
          work.pop_back();
          HostGraph state = seen[idx];
          States body = run(c->a, state);
          out.diverged |= body.diverged;
          if (body.fail) insert_unique_iso(out.graphs, state);
          for (auto& h : body.breaks) insert_unique_iso(out.graphs, std::move(h));
          for (auto& h : body.graphs) {
            if (insert_unique_iso(seen, std::move(h))) work.push_back(seen.size() - 1);
          }
          if (fuel <= 0) {
            out.diverged = true;
            break;
          }
        }
        return out;
      }
    }
    return out;
  }
};

}  // namespace

ExecOutcome execute_command(const Program& p, const CommandPtr& c, const HostGraph& g,
                            long long fuel) {
  Interp in{p, fuel};
  States s = in.run(c, g);
  ExecOutcome out;
  out.results = std::move(s.graphs);
  // A break escaping all loops terminates the program with its graph.
  for (auto& h : s.breaks) insert_unique_iso(out.results, std::move(h));
  out.fail = s.fail;
  out.diverged = s.diverged;
  return out;
}

ExecOutcome execute(const Program& p, const HostGraph& g, long long fuel) {
  return execute_command(p, p.main, g, fuel);
}

}  // namespace gpv
