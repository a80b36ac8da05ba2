#pragma once

#include "gpv/rule.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace gpv {

enum class CmdKind { RuleCall, Seq, If, Try, Loop, Or, Break, Skip, Fail };

struct Command;
using CommandPtr = std::shared_ptr<const Command>;

// GP 2 command AST. Sequences are right-nested. Procedures are expanded at
// parse time (non-recursive macros); `if C then P` is normalised to else-skip.
struct Command {
  CmdKind kind = CmdKind::Skip;
  std::vector<std::string> rules;  // RuleCall
  CommandPtr a, b, c;              // Seq: a;b  If/Try: cond=a then=b else=c  Loop/Or: a[,b]
};

CommandPtr cmd_rule_call(std::vector<std::string> rules);
CommandPtr cmd_seq(CommandPtr a, CommandPtr b);
CommandPtr cmd_if(CommandPtr c, CommandPtr t, CommandPtr e);
CommandPtr cmd_try(CommandPtr c, CommandPtr t, CommandPtr e);
CommandPtr cmd_loop(CommandPtr body);
CommandPtr cmd_or(CommandPtr a, CommandPtr b);
CommandPtr cmd_atom(CmdKind k);  // Break / Skip / Fail

bool equal_commands(const CommandPtr& a, const CommandPtr& b);
std::string print_command(const CommandPtr& c);

struct Program {
  std::vector<RuleSchema> rules;  // declaration order
  std::map<std::string, CommandPtr> procedures;  // expanded bodies, incl. Main
  CommandPtr main;

  const RuleSchema* find_rule(const std::string& name) const;
  const RuleSchema& rule(const std::string& name) const;
};

// Parses a full program: rule declarations, procedure declarations, exactly
// one Main. Throws MissingMain / RecursiveProcedure / parse errors.
Program parse_program(const std::string& text);

// Parses a single rule declaration.
RuleSchema parse_rule(const std::string& text);

// Parses a command over an existing program's declarations (proof scripts
// name subprograms of the proven program).
CommandPtr parse_command_over(const std::string& text, const Program& p);

std::string print_rule(const RuleSchema& r);
std::string print_program(const Program& p);

}  // namespace gpv
