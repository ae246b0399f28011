#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "civtm/controller.hpp"
#include "civtm/program.hpp"
#include "civtm/tm.hpp"
#include "civtm/world.hpp"
#include "json.hpp"

namespace civtm {

enum class LockstepOutcome { Equivalent, Diverged, OracleStuck, StepLimit };
enum class Termination { Halted, Stuck, InstructionLimit, TurnBudget, Divergence };

std::string to_string(LockstepOutcome o);
std::string to_string(Termination t);

struct Divergence {
  std::int64_t instruction = 0;
  TMConfig oracle;
  std::optional<TMConfig> decoded;
  std::string reason;
};

struct LockstepReport {
  std::int64_t instructions_verified = 0;
  std::optional<Divergence> first_divergence;
  LockstepOutcome outcome = LockstepOutcome::Equivalent;
  Termination termination = Termination::InstructionLimit;
  Turn total_turns = 0;
  std::int64_t extension_events = 0;
  // VI: every advanced turn is checked for food_stock >= 0.
  std::int64_t food_checked_turns = 0;
  std::int64_t min_food_stock = 0;
  std::vector<InstructionRecord> records;
  TMConfig final_oracle;
  WorldState final_world;
};

// Runs the reference machine and the game side by side, comparing the
// decoded world with the oracle after every instruction.
LockstepReport lockstep_verify(const TMSpec& spec, const ControllerProgram& program,
                               const std::map<CellIndex, Symbol>& initial_tape, std::int64_t max_instructions,
                               const RulesetParams& params, Turn turn_budget = kDefaultTurnBudget);
LockstepReport lockstep_verify(const TMSpec& spec, Ruleset ruleset, const std::map<CellIndex, Symbol>& initial_tape,
                               std::int64_t max_instructions, const RulesetParams& params);

nlohmann::json lockstep_to_json(const LockstepReport& r);

struct InstructionOverhead {
  std::int64_t instruction = 0;
  Turn turns = 0;
  Turn movement_turns = 0;
  Turn job_turns = 0;  // turns - movement_turns
  Turn derived_bound = 0;
  std::optional<Turn> nominal_bound;
  bool extension = false;
  std::int64_t tape_length = 0;
};

struct BoundExcess {
  std::int64_t instruction = 0;
  Turn job_turns = 0;
  Turn nominal_bound = 0;
  std::string cause;
};

struct OverheadReport {
  Ruleset ruleset = Ruleset::BE;
  std::vector<InstructionOverhead> per_instruction;
  Turn max_observed = 0;      // total turns, movement included
  Turn max_job_turns = 0;
  std::string nominal_formula;  // "5T+M", "4B_rr+1", "C+S(L)+3"
  std::optional<Turn> nominal_bound;  // fixed per-instruction bound (BE, V)
  Turn derived_bound = 0;           // max of the per-instruction derived bounds
  bool nominal_bound_satisfied = true;
  bool derived_bound_satisfied = true;
  std::vector<BoundExcess> excess;  // instructions over the nominal bound, itemized
  std::int64_t extension_count = 0;
};

// Turn cost of one tape action / state change, excluding movement.
Turn tape_action_turns(const RulesetParams& p, TapeAction a, TapeMark read);
Turn state_action_turns(const RulesetParams& p, int delta);
// Upper bound on the turns of one ordinary head move.
Turn head_move_turns(const RulesetParams& p);
// Upper bound on a VI tape extension for a tape of `tape_length` cells.
Turn extension_turns(const RulesetParams& p, std::int64_t tape_length);
// Nominal bound for a VI extension: C + S(L) + 3, S(L) in turns of production.
Turn vi_extension_nominal_bound(const RulesetParams& p, std::int64_t tape_length);
// Largest derived per-instruction bound over every macro of the program
// (VI: non-extension instructions only).
Turn program_derived_bound(const ControllerProgram& program, const RulesetParams& p);

// Throws SpecError when the log is not a sequence of complete instructions.
OverheadReport overhead_report(const std::vector<Event>& event_log, const RulesetParams& params);

nlohmann::json overhead_to_json(const OverheadReport& r);

// Seeded machine: total transitions over the non-halting states, exactly one
// halting state ("halt") targeted by at least one entry, blank "0".
// `num_states` counts the halting state.
TMSpec random_tm(std::uint64_t seed, int num_states, int num_symbols);

// Seeded tape over the machine's input alphabet within [-span, span].
std::map<CellIndex, Symbol> random_tape(std::uint64_t seed, const TMSpec& spec, int span = 6);

}  // namespace civtm
