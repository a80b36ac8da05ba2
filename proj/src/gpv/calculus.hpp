#pragma once

#include "gpv/program.hpp"
#include "gpv/slp.hpp"

namespace gpv {

// Syntactic program classes. loop-free: contains no `!`. non-failing /
// iteration follow the inductive definitions; a control program has loop-free
// branching conditions and iteration-command loop bodies throughout.
struct CommandClass {
  bool loop_free = false;
  bool non_failing = false;
  bool iteration = false;
  bool control = false;
};

CommandClass classify(const CommandPtr& c, const Program& p);
bool contains_break(const CommandPtr& c);

// Indented per-node flag tree for the CLI.
std::string print_classification(const CommandPtr& c, const Program& p);

// First-order characterisations for loop-free programs (Success, Fail, Slp,
// Wlp) and Fail for iteration commands. All throw NotLoopFree / NotIteration
// when the program is outside the constructible class.
FormulaPtr success_lf(const CommandPtr& c, const Program& p);
FormulaPtr fail_lf(const CommandPtr& c, const Program& p);
FormulaPtr fail_iteration(const CommandPtr& c, const Program& p);
FormulaPtr slp_lf(const FormulaPtr& pre, const CommandPtr& c, const Program& p);
FormulaPtr wlp_lf(const FormulaPtr& post, const CommandPtr& c, const Program& p);

}  // namespace gpv
