#pragma once

#include "gpv/program.hpp"

namespace gpv {

// Collecting outcome of all nondeterministic executions: the set of result
// graphs (up to isomorphism), whether `fail` is a possible outcome, and
// whether the step budget ran out on some branch (approximating divergence).
struct ExecOutcome {
  std::vector<HostGraph> results;
  bool fail = false;
  bool diverged = false;
};

constexpr long long kDefaultFuel = 10000;

// Operational semantics of GP 2 core commands, exploring every branch of
// rule-set calls, `or`, and loops. Fuel counts rule applications.
ExecOutcome execute(const Program& p, const HostGraph& g, long long fuel = kDefaultFuel);
ExecOutcome execute_command(const Program& p, const CommandPtr& c, const HostGraph& g,
                            long long fuel = kDefaultFuel);

}  // namespace gpv
