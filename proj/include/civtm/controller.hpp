#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "civtm/codec.hpp"
#include "civtm/errors.hpp"
#include "civtm/program.hpp"
#include "civtm/world.hpp"

namespace civtm {

// Raised when one instruction needs more turns than its budget allows.
class TurnBudgetExceeded : public Error {
 public:
  using Error::Error;
};

inline constexpr Turn kDefaultTurnBudget = 100000;

// Phases of one instruction, in execution order.
enum class Phase { Tape, State, HeadMove, TrainSettler, SettlerMove, FoundCity, WorkerMove, AwaitGrowth };

std::string to_string(Phase p);
bool is_movement(Phase p);

struct PhaseTime {
  Phase phase;
  Turn turns = 0;

  bool operator==(const PhaseTime&) const = default;
};

struct PhaseTimes {
  std::vector<PhaseTime> phases;

  Turn total() const;
  Turn movement() const;
  void add(Phase p, Turn turns) { phases.push_back({p, turns}); }
};

struct InstructionRecord {
  std::int64_t index = 0;  // 1-based
  State state;
  Symbol read;
  TapeMark read_mark = TapeMark::Blank;
  CommandMacro macro;
  Turn start_turn = 0;
  Turn end_turn = 0;
  PhaseTimes phases;
  bool extension = false;       // VI: a Settler founded a new tape City
  std::int64_t tape_length = 0;  // VI: cells before the extension
  bool halted = false;

  Turn turns() const { return end_turn - start_turn; }
};

// Called after every advanced turn; used to check per-turn invariants.
using TurnObserver = std::function<void(const WorldState&)>;

struct ExecutionOptions {
  Turn turn_budget = kDefaultTurnBudget;
  TurnObserver on_turn;
};

// Runs one macro to completion and returns the world at the next
// instruction boundary. Throws StuckError when no macro matches, and lets
// any IllegalCommand from the world escape: that is a compiler bug.
std::pair<WorldState, InstructionRecord> execute_instruction(WorldState world, const ControllerProgram& program,
                                                             const ExecutionOptions& options = {});

struct ExtensionOutcome {
  WorldState world;
  PhaseTimes phases;
  bool trained_settler = false;
};

// VI head move across a City boundary. Relocates the worker when the next
// City exists; otherwise trains a Settler, founds the next City and waits
// until it can hold both tape cells.
ExtensionOutcome extend_tape(WorldState world, Move direction, const ExecutionOptions& options = {});

enum class MacroStep { ApplyTape, ApplyState, MoveWorker, TrainSettler, MoveSettler, FoundCity, AwaitGrowth };

std::string to_string(MacroStep s);

// The n-variant of a VI state runs the base macro followed by the full tape
// extension; the b-variant runs the base macro alone.
std::vector<MacroStep> nb_state_semantics(const ControllerProgram& program, int state_index, bool needs_settler);
std::string nb_state_label(int state_index, bool needs_settler);

// True when moving the head of `world` in `direction` leaves the tape built so far.
bool needs_settler(const WorldState& world, Move direction);

}  // namespace civtm
