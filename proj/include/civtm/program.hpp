#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "civtm/ruleset.hpp"
#include "civtm/tm.hpp"
#include "civtm/world.hpp"
#include "json.hpp"

namespace civtm {

enum class TapeAction {
  Leave,
  BuildRoad,
  RemoveImprovement,
  PillageRoad,
  RepairRoad,
  BuildRailroad,
  BuildRoadThenPillage,
  SetWorked,
  SetUnworked,
};

std::string to_string(TapeAction a);
TapeAction tape_action_from_string(const std::string& s);

// What the controller does for one (state, symbol) pair: one tape job, a
// signed change of the state index, then a head move (absent when halting).
struct CommandMacro {
  TapeAction tape_action = TapeAction::Leave;
  std::optional<Move> head_move;
  int state_action = 0;
  bool halt = false;

  bool operator==(const CommandMacro&) const = default;
};

using MacroKey = std::pair<int, TapeMark>;

struct ControllerProgram {
  Ruleset ruleset = Ruleset::BE;
  std::vector<State> states;      // position = state index; initial state at 0
  std::vector<Symbol> symbols;    // parallel to `marks`; blank first
  std::vector<TapeMark> marks;
  std::set<int> halting;          // indices of halting states
  std::map<MacroKey, CommandMacro> macros;
  // VI: head moves across City boundaries go through the settler branch.
  bool extension_policy = false;

  int state_index(const State& q) const;
  TapeMark mark_of(const Symbol& s) const;
  const Symbol& symbol_of(TapeMark m) const;
  const CommandMacro* find(int state, TapeMark read) const;

  bool operator==(const ControllerProgram&) const = default;
};

// Tape encodings available in a ruleset, blank first.
std::vector<TapeMark> ruleset_marks(Ruleset r);

// Maps the machine onto the ruleset. Throws CompileError when the alphabet or
// the state region is too small, SpecError when the machine is malformed.
ControllerProgram compile(const TMSpec& spec, const RulesetParams& params);
ControllerProgram compile(const TMSpec& spec, Ruleset ruleset);

TapeAction realize_write(Ruleset r, TapeMark read, TapeMark write);

// Renders a macro in the wording of the construction tables, e.g.
// "Remove Improvement and move L; Build a Terrascape". VI counts follow the
// tables' convention: "Work n more Monasteries" with n = delta + 1, "Work n
// more Farms" with n = -delta - 1.
std::string describe_macro(Ruleset r, TapeMark read, const CommandMacro& m);

nlohmann::json program_to_json(const ControllerProgram& p);
ControllerProgram program_from_json(const nlohmann::json& j);

}  // namespace civtm
