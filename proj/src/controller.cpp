#include "civtm/controller.hpp"

#include <algorithm>

namespace civtm {

std::string to_string(Phase p) {
  switch (p) {
    case Phase::Tape: return "tape";
    case Phase::State: return "state";
    case Phase::HeadMove: return "head_move";
    case Phase::TrainSettler: return "train_settler";
    case Phase::SettlerMove: return "settler_move";
    case Phase::FoundCity: return "found_city";
    case Phase::WorkerMove: return "worker_move";
    case Phase::AwaitGrowth: return "await_growth";
  }
  return "?";
}

bool is_movement(Phase p) { return p == Phase::HeadMove || p == Phase::SettlerMove || p == Phase::WorkerMove; }

Turn PhaseTimes::total() const {
  Turn t = 0;
  for (const auto& p : phases) t += p.turns;
  return t;
}

Turn PhaseTimes::movement() const {
  Turn t = 0;
  for (const auto& p : phases) {
    if (is_movement(p.phase)) t += p.turns;
  }
  return t;
}

std::string to_string(MacroStep s) {
  switch (s) {
    case MacroStep::ApplyTape: return "apply_tape";
    case MacroStep::ApplyState: return "apply_state";
    case MacroStep::MoveWorker: return "move_worker";
    case MacroStep::TrainSettler: return "train_settler";
    case MacroStep::MoveSettler: return "move_settler";
    case MacroStep::FoundCity: return "found_city";
    case MacroStep::AwaitGrowth: return "await_growth";
  }
  return "?";
}

std::vector<MacroStep> nb_state_semantics(const ControllerProgram& program, int state_index, bool settler) {
  if (program.ruleset != Ruleset::VI) throw CompileError("n/b state variants exist only in ruleset VI");
  if (state_index < 0 || static_cast<std::size_t>(state_index) >= program.states.size()) {
    throw CompileError("state index " + std::to_string(state_index) + " out of range");
  }
  std::vector<MacroStep> steps = {MacroStep::ApplyTape, MacroStep::ApplyState};
  if (settler) {
    steps.insert(steps.end(),
                 {MacroStep::TrainSettler, MacroStep::MoveSettler, MacroStep::FoundCity, MacroStep::MoveWorker,
                  MacroStep::AwaitGrowth});
  } else {
    steps.push_back(MacroStep::MoveWorker);
  }
  return steps;
}

std::string nb_state_label(int state_index, bool settler) {
  return std::to_string(state_index) + (settler ? "n" : "b");
}

bool needs_settler(const WorldState& world, Move direction) {
  if (world.ruleset() != Ruleset::VI) return false;
  const std::int64_t target = head_tape_index(world) + offset(direction);
  return world.city_at(vi_city_center(vi_city_slot(target), world.params)) == nullptr;
}

namespace {

// Advances turns until `done` holds, charging them to `phase`.
template <typename Pred>
void run_until(WorldState& w, PhaseTimes& times, Phase phase, const ExecutionOptions& opt, Turn& spent, Pred done) {
  Turn turns = 0;
  while (!done(w)) {
    if (spent >= opt.turn_budget) {
      throw TurnBudgetExceeded("instruction exceeded its budget of " + std::to_string(opt.turn_budget) + " turns");
    }
    w = advance_turn(std::move(w));
    ++turns;
    ++spent;
    if (opt.on_turn) opt.on_turn(w);
  }
  times.add(phase, turns);
}

void run_idle(WorldState& w, PhaseTimes& times, Phase phase, const ExecutionOptions& opt, Turn& spent) {
  run_until(w, times, phase, opt, spent, [](const WorldState& s) { return s.idle(); });
}

UnitId unit_of(const WorldState& w, UnitKind k) {
  auto id = w.find_unit(k);
  if (!id) throw InvariantViolation("world has no " + to_string(k));
  return *id;
}

void issue(WorldState& w, std::optional<UnitId> unit, const Command& c) { w = apply_command(std::move(w), unit, c); }

void apply_tape(WorldState& w, TapeAction a, PhaseTimes& times, const ExecutionOptions& opt, Turn& spent) {
  const UnitId worker = unit_of(w, UnitKind::TapeWorker);
  switch (a) {
    case TapeAction::Leave: break;
    case TapeAction::BuildRoad:
      if (w.hex_at(w.unit(worker).position).improvement == Improvement::Railroad) {
        issue(w, worker, Command::remove());
        run_idle(w, times, Phase::Tape, opt, spent);
      }
      issue(w, worker, Command::build_road());
      break;
    case TapeAction::RemoveImprovement: issue(w, worker, Command::remove()); break;
    case TapeAction::PillageRoad: issue(w, unit_of(w, UnitKind::Rover), Command::pillage()); break;
    case TapeAction::RepairRoad: issue(w, worker, Command::repair()); break;
    case TapeAction::BuildRailroad: issue(w, worker, Command::build_railroad()); break;
    case TapeAction::BuildRoadThenPillage:
      issue(w, worker, Command::build_road());
      run_idle(w, times, Phase::Tape, opt, spent);
      issue(w, unit_of(w, UnitKind::Rover), Command::pillage());
      break;
    case TapeAction::SetWorked:
    case TapeAction::SetUnworked: {
      const HexIndex hex = w.unit(worker).position;
      const HexIndex center = vi_city_center(vi_city_slot(head_tape_index(w)), w.params);
      const CitizenSlot cell{CitizenSlot::Kind::TapeCell, hex};
      const CitizenSlot spare{CitizenSlot::Kind::Floodplains, center};
      issue(w, std::nullopt, a == TapeAction::SetWorked ? Command::reassign(spare, cell) : Command::reassign(cell, spare));
      break;
    }
  }
  run_idle(w, times, Phase::Tape, opt, spent);
}

// Builds on the lowest-index free tile and clears the highest-index occupied one.
void apply_state(WorldState& w, int delta, PhaseTimes& times, const ExecutionOptions& opt, Turn& spent) {
  auto& tiles = w.state_region.tiles;
  if (w.ruleset() == Ruleset::VI) {
    using K = CitizenSlot::Kind;
    auto first = [&](Building b, bool worked) -> int {
      for (const auto& t : tiles) {
        if (t.building == b && t.worked == worked) return t.index;
      }
      throw InvariantViolation("state region has no suitable tile");
    };
    auto last = [&](Building b, bool worked) -> int {
      for (auto it = tiles.rbegin(); it != tiles.rend(); ++it) {
        if (it->building == b && it->worked == worked) return it->index;
      }
      throw InvariantViolation("state region has no suitable tile");
    };
    for (int i = 0; i < std::abs(delta); ++i) {
      if (delta > 0) {
        issue(w, std::nullopt,
              Command::reassign({K::Farm, last(Building::Farm, true)}, {K::Monastery, first(Building::Monastery, false)}));
      } else {
        issue(w, std::nullopt,
              Command::reassign({K::Monastery, last(Building::Monastery, true)}, {K::Farm, first(Building::Farm, false)}));
      }
    }
    times.add(Phase::State, 0);
    return;
  }
  const UnitId sw = unit_of(w, UnitKind::StateWorker);
  const bool be = w.ruleset() == Ruleset::BE;
  auto occupied = [be](const StateTile& t) { return be ? t.terrascape : t.railroad; };
  Turn turns_before = spent;
  PhaseTimes scratch;
  for (int i = 0; i < std::abs(delta); ++i) {
    if (delta > 0) {
      auto it = std::find_if(tiles.begin(), tiles.end(), [&](const StateTile& t) { return !occupied(t); });
      if (it == tiles.end()) throw InvariantViolation("state region full");
      issue(w, sw, be ? Command::build_terrascape(it->index) : Command::build_railroad(it->index));
    } else {
      auto it = std::find_if(tiles.rbegin(), tiles.rend(), occupied);
      if (it == tiles.rend()) throw InvariantViolation("state region empty");
      issue(w, sw, Command::remove(it->index));
    }
    run_idle(w, scratch, Phase::State, opt, spent);
  }
  times.add(Phase::State, spent - turns_before);
}

void move_units(WorldState& w, const std::vector<UnitId>& units, std::int64_t hexes, Phase phase, PhaseTimes& times,
                const ExecutionOptions& opt, Turn& spent) {
  for (UnitId u : units) issue(w, u, Command::move(hexes));
  run_idle(w, times, phase, opt, spent);
}

}  // namespace

ExtensionOutcome extend_tape(WorldState world, Move direction, const ExecutionOptions& options) {
  if (world.ruleset() != Ruleset::VI) throw InvariantViolation("tape extension exists only in ruleset VI");
  const auto& p = world.params;
  ExtensionOutcome out;
  Turn spent = 0;
  const UnitId worker = unit_of(world, UnitKind::TapeWorker);
  const std::int64_t from = head_tape_index(world);
  const std::int64_t target = from + offset(direction);
  const std::int64_t from_slot = vi_city_slot(from);
  if (vi_city_slot(target) == from_slot) throw InvariantViolation("head move does not cross a City boundary");
  const HexIndex from_center = vi_city_center(from_slot, p);
  const HexIndex next_center = vi_city_center(vi_city_slot(target), p);

  if (world.city_at(next_center) == nullptr) {
    const City* end_city = world.city_at(from_center);
    if (end_city->citizens <= 1) throw InvariantViolation("end-of-tape City has a single Citizen; cannot train a Settler");
    issue(world, std::nullopt, Command::train_settler(from_center));
    run_until(world, out.phases, Phase::TrainSettler, options, spent,
              [from_center](const WorldState& w) { return !w.city_at(from_center)->training; });
    UnitId settler = -1;
    for (const auto& u : world.units) {
      if (u.kind == UnitKind::Settler) settler = u.id;
    }
    if (settler < 0) throw InvariantViolation("trained Settler missing");
    move_units(world, {settler}, next_center - from_center, Phase::SettlerMove, out.phases, options, spent);
    issue(world, settler, Command::found_city());
    run_idle(world, out.phases, Phase::FoundCity, options, spent);
    out.trained_settler = true;
  }
  move_units(world, {worker}, vi_cell_hex(target, p) - world.unit(worker).position, Phase::WorkerMove, out.phases,
             options, spent);
  if (out.trained_settler) {
    // The new City must hold a Citizen for each of its two tape cells.
    run_until(world, out.phases, Phase::AwaitGrowth, options, spent,
              [next_center](const WorldState& w) { return w.city_at(next_center)->citizens >= 3; });
  }
  out.world = std::move(world);
  return out;
}

std::pair<WorldState, InstructionRecord> execute_instruction(WorldState world, const ControllerProgram& program,
                                                             const ExecutionOptions& options) {
  const DecodedConfig decoded = decode(world, program);
  if (!decoded.boundary) throw InvariantViolation("world is not at an instruction boundary");
  const TMConfig& config = *decoded.config;
  const int state = program.state_index(config.state);
  if (program.halting.contains(state)) throw InvariantViolation("machine already halted in " + config.state);

  InstructionRecord rec;
  rec.index = 1 + static_cast<std::int64_t>(std::count_if(world.event_log.begin(), world.event_log.end(),
                                                          [](const Event& e) { return e.command == "instruction_end"; }));
  rec.state = config.state;
  rec.read_mark = mark_under_head(world);
  rec.read = program.symbol_of(rec.read_mark);
  const CommandMacro* macro = program.find(state, rec.read_mark);
  if (macro == nullptr) {
    throw StuckError("machine stuck: no macro for (" + config.state + ", " + rec.read + ")");
  }
  rec.macro = *macro;
  rec.start_turn = world.turn;
  world.log(-1, "instruction_begin", {{"instruction", rec.index}, {"state", rec.state}, {"read", rec.read}});

  Turn spent = 0;
  const bool vi = world.ruleset() == Ruleset::VI;
  const bool settler = vi && !macro->halt && needs_settler(world, *macro->head_move);
  if (vi) rec.tape_length = 2 * static_cast<std::int64_t>(world.cities.size());
  const std::vector<MacroStep> steps =
      vi ? nb_state_semantics(program, state, settler)
         : std::vector<MacroStep>{MacroStep::ApplyTape, MacroStep::ApplyState, MacroStep::MoveWorker};

  for (MacroStep step : steps) {
    if (macro->halt && step != MacroStep::ApplyTape && step != MacroStep::ApplyState) break;
    switch (step) {
      case MacroStep::ApplyTape: apply_tape(world, macro->tape_action, rec.phases, options, spent); break;
      case MacroStep::ApplyState: apply_state(world, macro->state_action, rec.phases, options, spent); break;
      case MacroStep::MoveWorker: {
        if (!vi) {
          std::vector<UnitId> movers = {unit_of(world, UnitKind::TapeWorker)};
          if (auto rover = world.find_unit(UnitKind::Rover)) movers.push_back(*rover);
          move_units(world, movers, offset(*macro->head_move), Phase::HeadMove, rec.phases, options, spent);
          break;
        }
        const std::int64_t from = head_tape_index(world);
        const std::int64_t target = from + offset(*macro->head_move);
        if (vi_city_slot(target) == vi_city_slot(from)) {
          const UnitId worker = unit_of(world, UnitKind::TapeWorker);
          move_units(world, {worker}, vi_cell_hex(target, world.params) - world.unit(worker).position,
                     Phase::HeadMove, rec.phases, options, spent);
          break;
        }
        ExecutionOptions remaining = options;
        remaining.turn_budget = options.turn_budget - spent;
        ExtensionOutcome ext = extend_tape(std::move(world), *macro->head_move, remaining);
        world = std::move(ext.world);
        for (const auto& ph : ext.phases.phases) {
          rec.phases.phases.push_back(ph.phase == Phase::WorkerMove && !ext.trained_settler
                                          ? PhaseTime{Phase::HeadMove, ph.turns}
                                          : ph);
        }
        spent += ext.phases.total();
        rec.extension = ext.trained_settler;
        break;
      }
      // Carried out inside extend_tape when the worker steps past the last City.
      case MacroStep::TrainSettler:
      case MacroStep::MoveSettler:
      case MacroStep::FoundCity:
      case MacroStep::AwaitGrowth: break;
    }
  }
  rec.halted = macro->halt;
  rec.end_turn = world.turn;

  nlohmann::json phases = nlohmann::json::object();
  for (const auto& ph : rec.phases.phases) phases[to_string(ph.phase)] = phases.value(to_string(ph.phase), 0) + ph.turns;
  nlohmann::json detail = {{"instruction", rec.index},
                           {"state", rec.state},
                           {"state_index", state},
                           {"state_label", vi ? nb_state_label(state, settler) : std::to_string(state)},
                           {"read", rec.read},
                           {"read_encoding", to_string(rec.read_mark)},
                           {"tape_action", to_string(macro->tape_action)},
                           {"state_action", macro->state_action},
                           {"halt", macro->halt},
                           {"turns", rec.turns()},
                           {"movement_turns", rec.phases.movement()},
                           {"phases", std::move(phases)},
                           {"extension", rec.extension},
                           {"tape_length", rec.tape_length}};
  detail["head_move"] = macro->head_move ? nlohmann::json(std::string(1, to_char(*macro->head_move))) : nlohmann::json(nullptr);
  world.log(-1, "instruction_end", std::move(detail));
  return {std::move(world), std::move(rec)};
}

}  // namespace civtm
