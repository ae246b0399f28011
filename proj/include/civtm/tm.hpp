#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

namespace civtm {

using State = std::string;
using Symbol = std::string;
using CellIndex = std::int64_t;

enum class Move { L, R };

inline int offset(Move m) { return m == Move::L ? -1 : 1; }
char to_char(Move m);
Move move_from_string(const std::string& s);

// One entry of the transition function. A HALT entry writes and stops;
// `move` is kept only for display when the source table lists one.
struct Action {
  Symbol write;
  std::optional<Move> move;
  std::optional<State> next;
  bool halt = false;

  bool operator==(const Action&) const = default;
};

using TransitionKey = std::pair<State, Symbol>;

struct TMSpec {
  std::vector<State> states;
  std::vector<Symbol> alphabet;
  Symbol blank;
  std::vector<Symbol> input_alphabet;
  State initial;
  std::set<State> halting;
  std::map<TransitionKey, Action> transitions;

  bool is_halting(const State& q) const { return halting.contains(q); }
  const Action* find(const State& q, const Symbol& s) const;
  bool has_state(const State& q) const;
  bool has_symbol(const Symbol& s) const;

  bool operator==(const TMSpec&) const = default;
};

// Sparse tape: absent cells hold the blank symbol, which is never stored.
struct TMConfig {
  State state;
  std::map<CellIndex, Symbol> tape;
  CellIndex head = 0;

  Symbol read(const Symbol& blank) const;
  void write(CellIndex at, const Symbol& s, const Symbol& blank);

  bool operator==(const TMConfig&) const = default;
};

TMConfig initial_config(const TMSpec& spec, std::map<CellIndex, Symbol> tape = {});

// Throws SpecError naming the first violated well-formedness rule.
const TMSpec& validate_spec(const TMSpec& spec);

struct Halted {
  TMConfig config;
};

using StepResult = std::variant<TMConfig, Halted>;

// Throws StuckError when the (state, symbol) pair has no entry.
StepResult step(const TMSpec& spec, const TMConfig& config);

enum class RunOutcome { Halted, Stuck, StepLimit };

std::string to_string(RunOutcome o);

struct RunResult {
  std::vector<TMConfig> trace;
  RunOutcome outcome = RunOutcome::StepLimit;
  // Transitions applied, including a final HALT entry.
  std::int64_t steps = 0;

  const TMConfig& final_config() const { return trace.back(); }
};

RunResult run(const TMSpec& spec, const TMConfig& config, std::int64_t max_steps);

std::vector<std::string> builtin_names();
TMSpec builtin_program(const std::string& name);
bool is_builtin(const std::string& name);

// JSON spec file format.
nlohmann::json spec_to_json(const TMSpec& spec);
TMSpec spec_from_json(const nlohmann::json& j);
TMSpec load_spec_file(const std::string& path);

nlohmann::json tape_to_json(const std::map<CellIndex, Symbol>& tape);
std::map<CellIndex, Symbol> tape_from_json(const nlohmann::json& j);

}  // namespace civtm
