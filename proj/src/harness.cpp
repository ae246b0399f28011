#include "civtm/harness.hpp"

#include <algorithm>
#include <random>

#include "civtm/codec.hpp"
#include "civtm/errors.hpp"

namespace civtm {

std::string to_string(LockstepOutcome o) {
  switch (o) {
    case LockstepOutcome::Equivalent: return "equivalent";
    case LockstepOutcome::Diverged: return "diverged";
    case LockstepOutcome::OracleStuck: return "oracle-stuck";
    case LockstepOutcome::StepLimit: return "step-limit";
  }
  return "?";
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Halted: return "halted";
    case Termination::Stuck: return "stuck";
    case Termination::InstructionLimit: return "instruction-limit";
    case Termination::TurnBudget: return "turn-budget";
    case Termination::Divergence: return "divergence";
  }
  return "?";
}

namespace {

nlohmann::json config_to_json(const TMConfig& c) {
  return {{"state", c.state}, {"head", c.head}, {"tape", tape_to_json(c.tape)}};
}

void diverge(LockstepReport& r, std::int64_t at, const TMConfig& oracle, std::optional<TMConfig> decoded,
             std::string reason) {
  r.outcome = LockstepOutcome::Diverged;
  r.termination = Termination::Divergence;
  r.first_divergence = Divergence{at, oracle, std::move(decoded), std::move(reason)};
}

}  // namespace

LockstepReport lockstep_verify(const TMSpec& spec, const ControllerProgram& program,
                               const std::map<CellIndex, Symbol>& initial_tape, std::int64_t max_instructions,
                               const RulesetParams& params, Turn turn_budget) {
  LockstepReport report;
  TMConfig oracle = initial_config(spec, initial_tape);
  WorldState world = init_world(encode_tape(initial_tape, program), params);
  const bool vi = params.ruleset == Ruleset::VI;
  auto food_check = [&report](const WorldState& w) {
    for (const auto& c : w.cities) {
      report.min_food_stock = std::min(report.min_food_stock, c.food_stock);
      if (c.food_stock < 0) throw InvariantViolation("food_stock below zero in City at " + std::to_string(c.center));
    }
    ++report.food_checked_turns;
  };
  ExecutionOptions options;
  options.turn_budget = turn_budget;
  if (vi) options.on_turn = food_check;

  auto finish = [&]() -> LockstepReport {
    report.total_turns = world.turn;
    report.final_oracle = oracle;
    report.final_world = std::move(world);
    return std::move(report);
  };

  const DecodedConfig start = decode(world, program);
  if (!start.config || *start.config != oracle) {
    diverge(report, 0, oracle, start.config, "initial world does not encode the input tape");
    return finish();
  }

  for (std::int64_t i = 1; i <= max_instructions; ++i) {
    if (spec.is_halting(oracle.state)) {
      report.termination = Termination::Halted;
      return finish();
    }
    std::optional<StepResult> oracle_next;
    try {
      oracle_next = step(spec, oracle);
    } catch (const StuckError&) {
    }

    std::optional<InstructionRecord> rec;
    bool game_stuck = false;
    try {
      auto [next_world, r] = execute_instruction(std::move(world), program, options);
      world = std::move(next_world);
      rec = std::move(r);
    } catch (const StuckError&) {
      game_stuck = true;
    } catch (const TurnBudgetExceeded& e) {
      report.outcome = LockstepOutcome::StepLimit;
      report.termination = Termination::TurnBudget;
      return finish();
    } catch (const Error& e) {
      diverge(report, i, oracle, std::nullopt, e.what());
      return finish();
    }

    if (!oracle_next || game_stuck) {
      if (!oracle_next && game_stuck) {
        report.outcome = LockstepOutcome::OracleStuck;
        report.termination = Termination::Stuck;
      } else {
        diverge(report, i, oracle, std::nullopt, game_stuck ? "game stuck, oracle not" : "oracle stuck, game not");
      }
      return finish();
    }

    const bool oracle_halted = std::holds_alternative<Halted>(*oracle_next);
    oracle = oracle_halted ? std::get<Halted>(*oracle_next).config : std::get<TMConfig>(*oracle_next);
    report.extension_events += rec->extension ? 1 : 0;
    report.records.push_back(*rec);

    DecodedConfig decoded;
    try {
      decoded = decode(world, program);
    } catch (const DecodeError& e) {
      diverge(report, i, oracle, std::nullopt, e.what());
      return finish();
    }
    if (!decoded.config || *decoded.config != oracle) {
      diverge(report, i, oracle, decoded.config, "decoded configuration differs from oracle");
      return finish();
    }
    if (oracle_halted != rec->halted) {
      diverge(report, i, oracle, decoded.config, "halting disagreement");
      return finish();
    }
    report.instructions_verified = i;
    if (oracle_halted) {
      report.termination = Termination::Halted;
      return finish();
    }
  }
  report.termination = spec.is_halting(oracle.state) ? Termination::Halted : Termination::InstructionLimit;
  return finish();
}

LockstepReport lockstep_verify(const TMSpec& spec, Ruleset ruleset, const std::map<CellIndex, Symbol>& initial_tape,
                               std::int64_t max_instructions, const RulesetParams& params) {
  RulesetParams p = params;
  p.ruleset = ruleset;
  return lockstep_verify(spec, compile(spec, p), initial_tape, max_instructions, p);
}

nlohmann::json lockstep_to_json(const LockstepReport& r) {
  nlohmann::json j = {{"format_version", 1},
                      {"outcome", to_string(r.outcome)},
                      {"termination", to_string(r.termination)},
                      {"instructions_verified", r.instructions_verified},
                      {"total_turns", r.total_turns},
                      {"extension_events", r.extension_events},
                      {"final_config", config_to_json(r.final_oracle)}};
  if (r.final_world.ruleset() == Ruleset::VI) {
    j["food_checked_turns"] = r.food_checked_turns;
    j["min_food_stock"] = r.min_food_stock;
  }
  if (r.first_divergence) {
    const auto& d = *r.first_divergence;
    j["first_divergence"] = {{"instruction", d.instruction},
                             {"oracle", config_to_json(d.oracle)},
                             {"decoded", d.decoded ? config_to_json(*d.decoded) : nlohmann::json(nullptr)},
                             {"reason", d.reason}};
  } else {
    j["first_divergence"] = nullptr;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Cost model

Turn tape_action_turns(const RulesetParams& p, TapeAction a, TapeMark read) {
  switch (a) {
    case TapeAction::Leave:
    case TapeAction::SetWorked:
    case TapeAction::SetUnworked: return 0;
    case TapeAction::BuildRoad:
      return p.road_build_turns + (read == TapeMark::Railroad ? p.remove_or_repair_turns : 0);
    case TapeAction::RemoveImprovement:
    case TapeAction::PillageRoad:
    case TapeAction::RepairRoad: return p.remove_or_repair_turns;
    case TapeAction::BuildRailroad: return p.railroad_build_turns;
    case TapeAction::BuildRoadThenPillage: return p.road_build_turns + p.remove_or_repair_turns;
  }
  return 0;
}

Turn state_action_turns(const RulesetParams& p, int delta) {
  const Turn n = std::abs(delta);
  switch (p.ruleset) {
    case Ruleset::BE: return delta > 0 ? n * p.terrascape_build_turns : n * p.remove_or_repair_turns;
    case Ruleset::V: return delta > 0 ? n * p.railroad_build_turns : n * p.remove_or_repair_turns;
    case Ruleset::VI: return 0;
  }
  return 0;
}

Turn head_move_turns(const RulesetParams& p) {
  if (p.ruleset != Ruleset::VI) return p.worker_move_turns_per_hex;
  return static_cast<Turn>(std::max(2, p.city_spacing - 2)) * p.worker_move_turns_per_hex;
}

Turn extension_turns(const RulesetParams& p, std::int64_t tape_length) {
  const Turn r = p.worker_move_turns_per_hex;
  const Turn c = p.city_growth_turns;
  return std::max(p.settler_turns(tape_length), c) + p.city_spacing * r + p.settler_found_turns +
         std::max<Turn>((p.city_spacing - 2) * r, c);
}

Turn vi_extension_nominal_bound(const RulesetParams& p, std::int64_t tape_length) {
  return p.city_growth_turns + p.settler_turns(tape_length) + 3;
}

Turn program_derived_bound(const ControllerProgram& program, const RulesetParams& p) {
  Turn bound = 0;
  for (const auto& [key, m] : program.macros) {
    const Turn t = tape_action_turns(p, m.tape_action, key.second) + state_action_turns(p, m.state_action) +
                   (m.halt ? 0 : head_move_turns(p));
    bound = std::max(bound, t);
  }
  return bound;
}

namespace {

std::optional<Turn> fixed_nominal_bound(const RulesetParams& p) {
  switch (p.ruleset) {
    case Ruleset::BE: return 5 * p.terrascape_build_turns + p.road_build_turns;
    case Ruleset::V: return 4 * p.railroad_build_turns + 1;
    case Ruleset::VI: return std::nullopt;
  }
  return std::nullopt;
}

std::string excess_cause(const nlohmann::json& d, const RulesetParams& p) {
  std::string cause = "tape " + d.at("tape_action").get<std::string>();
  const int delta = d.at("state_action").get<int>();
  if (delta != 0) {
    cause += ", state change " + std::to_string(delta) + " (" + std::to_string(state_action_turns(p, delta)) + " turns)";
  }
  if (d.at("extension").get<bool>()) cause += ", tape extension";
  return cause;
}

}  // namespace

OverheadReport overhead_report(const std::vector<Event>& event_log, const RulesetParams& params) {
  OverheadReport r;
  r.ruleset = params.ruleset;
  r.nominal_bound = fixed_nominal_bound(params);
  switch (params.ruleset) {
    case Ruleset::BE: r.nominal_formula = "5T+M"; break;
    case Ruleset::V: r.nominal_formula = "4B_rr+1"; break;
    case Ruleset::VI: r.nominal_formula = "C+S(L)+3"; break;
  }
  bool open = false;
  for (const auto& e : event_log) {
    if (e.command == "instruction_begin") {
      if (open) throw SpecError("event log: instruction_begin without matching end");
      open = true;
      continue;
    }
    if (e.command != "instruction_end") continue;
    if (!open) throw SpecError("event log: instruction_end without begin");
    open = false;
    const auto& d = e.detail;
    InstructionOverhead o;
    o.instruction = d.at("instruction").get<std::int64_t>();
    o.turns = d.at("turns").get<Turn>();
    o.movement_turns = d.at("movement_turns").get<Turn>();
    o.job_turns = o.turns - o.movement_turns;
    o.extension = d.at("extension").get<bool>();
    o.tape_length = d.at("tape_length").get<std::int64_t>();
    const bool halt = d.at("halt").get<bool>();
    if (o.extension) {
      o.derived_bound = tape_action_turns(params, tape_action_from_string(d.at("tape_action")), TapeMark::Blank) +
                        extension_turns(params, o.tape_length);
      o.nominal_bound = vi_extension_nominal_bound(params, o.tape_length);
      ++r.extension_count;
    } else {
      const TapeMark read = tape_mark_from_string(d.at("read_encoding").get<std::string>());
      o.derived_bound = tape_action_turns(params, tape_action_from_string(d.at("tape_action")), read) +
                        state_action_turns(params, d.at("state_action").get<int>()) +
                        (halt ? 0 : head_move_turns(params));
      o.nominal_bound = r.nominal_bound;
    }
    if (o.turns > o.derived_bound) r.derived_bound_satisfied = false;
    if (o.nominal_bound && o.job_turns > *o.nominal_bound) {
      r.nominal_bound_satisfied = false;
      r.excess.push_back({o.instruction, o.job_turns, *o.nominal_bound, excess_cause(d, params)});
    }
    r.max_observed = std::max(r.max_observed, o.turns);
    r.max_job_turns = std::max(r.max_job_turns, o.job_turns);
    r.derived_bound = std::max(r.derived_bound, o.derived_bound);
    r.per_instruction.push_back(o);
  }
  if (open) throw SpecError("event log ends inside an instruction");
  return r;
}

nlohmann::json overhead_to_json(const OverheadReport& r) {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& o : r.per_instruction) {
    nlohmann::json jo = {{"instruction", o.instruction},     {"turns", o.turns},
                         {"movement_turns", o.movement_turns}, {"job_turns", o.job_turns},
                         {"derived_bound", o.derived_bound},   {"extension", o.extension}};
    jo["nominal_bound"] = o.nominal_bound ? nlohmann::json(*o.nominal_bound) : nlohmann::json(nullptr);
    if (o.extension) jo["tape_length"] = o.tape_length;
    per.push_back(std::move(jo));
  }
  nlohmann::json excess = nlohmann::json::array();
  for (const auto& x : r.excess) {
    excess.push_back(
        {{"instruction", x.instruction}, {"job_turns", x.job_turns}, {"nominal_bound", x.nominal_bound}, {"cause", x.cause}});
  }
  nlohmann::json j = {{"format_version", 1},
                      {"ruleset", to_string(r.ruleset)},
                      {"nominal_formula", r.nominal_formula},
                      {"max_observed", r.max_observed},
                      {"max_job_turns", r.max_job_turns},
                      {"derived_bound", r.derived_bound},
                      {"derived_bound_satisfied", r.derived_bound_satisfied},
                      {"nominal_bound_satisfied", r.nominal_bound_satisfied},
                      {"extension_count", r.extension_count},
                      {"excess", std::move(excess)},
                      {"per_instruction", std::move(per)}};
  j["nominal_bound"] = r.nominal_bound ? nlohmann::json(*r.nominal_bound) : nlohmann::json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// Random machines

TMSpec random_tm(std::uint64_t seed, int num_states, int num_symbols) {
  if (num_states < 1) throw SpecError("random_tm needs at least one state");
  if (num_symbols < 1 || num_symbols > 3) throw SpecError("random_tm supports 1 to 3 symbols");
  std::mt19937_64 rng(seed);
  auto pick = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  TMSpec spec;
  for (int i = 0; i + 1 < num_states; ++i) spec.states.push_back("q" + std::to_string(i));
  spec.states.push_back("halt");
  spec.halting.insert("halt");
  spec.initial = spec.states.front();
  for (int s = 0; s < num_symbols; ++s) spec.alphabet.push_back(std::to_string(s));
  spec.blank = "0";
  spec.input_alphabet.assign(spec.alphabet.begin() + 1, spec.alphabet.end());

  bool halt_targeted = false;
  for (int i = 0; i + 1 < num_states; ++i) {
    for (const auto& s : spec.alphabet) {
      Action a;
      a.write = spec.alphabet[pick(spec.alphabet.size())];
      a.move = pick(2) == 0 ? Move::L : Move::R;
      a.next = spec.states[pick(spec.states.size())];
      halt_targeted = halt_targeted || *a.next == "halt";
      spec.transitions[{spec.states[static_cast<std::size_t>(i)], s}] = a;
    }
  }
  if (!halt_targeted && !spec.transitions.empty()) {
    auto it = spec.transitions.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(pick(spec.transitions.size())));
    it->second.next = "halt";
  }
  return validate_spec(spec);
}

std::map<CellIndex, Symbol> random_tape(std::uint64_t seed, const TMSpec& spec, int span) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::map<CellIndex, Symbol> tape;
  if (spec.input_alphabet.empty()) return tape;
  for (CellIndex i = -span; i <= span; ++i) {
    // Roughly half the cells stay blank.
    if (rng() % 2 == 0) continue;
    tape[i] = spec.input_alphabet[rng() % spec.input_alphabet.size()];
  }
  return tape;
}

}  // namespace civtm
