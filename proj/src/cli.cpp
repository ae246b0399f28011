#include "civtm/cli.hpp"

#include <algorithm>
#include <set>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "civtm/codec.hpp"
#include "civtm/controller.hpp"
#include "civtm/errors.hpp"
#include "civtm/fixtures.hpp"
#include "civtm/harness.hpp"
#include "civtm/program.hpp"
#include "civtm/tm.hpp"
#include "civtm/world.hpp"

namespace civtm {

namespace {

struct Globals {
  std::string ruleset = "BE";
  std::string params_file;
  std::int64_t max_instructions = -1;
  std::string out_file;
  std::uint64_t seed = 1;
};

struct MachineArgs {
  std::string machine;  // builtin name or spec file
  std::string builtin;
  std::string tape_file;
  bool random_tape = false;
};

// Parse and file problems; mapped to status 2.
struct InputError : Error {
  using Error::Error;
};

void add_globals(CLI::App* sub, Globals& g) {
  sub->add_option("--ruleset", g.ruleset, "BE, V or VI")->check(CLI::IsMember({"BE", "V", "VI"}));
  sub->add_option("--params", g.params_file, "ruleset parameter file (JSON)");
  sub->add_option("--max-instructions", g.max_instructions, "instruction limit");
  sub->add_option("--out", g.out_file, "output file");
  sub->add_option("--seed", g.seed, "seed for generated machines and tapes");
}

void add_machine(CLI::App* sub, MachineArgs& m) {
  sub->add_option("machine", m.machine, "builtin name or TM spec file");
  sub->add_option("--builtin", m.builtin, "builtin machine name");
  sub->add_option("--tape", m.tape_file, "initial tape file (JSON)");
  sub->add_flag("--random-tape", m.random_tape, "seeded random initial tape");
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

TMSpec load_machine(const MachineArgs& m) {
  const std::string name = !m.builtin.empty() ? m.builtin : m.machine;
  if (name.empty()) throw InputError("no machine given");
  if (!m.builtin.empty() || is_builtin(name)) {
    if (!is_builtin(name)) throw InputError("unknown builtin " + name);
    return builtin_program(name);
  }
  try {
    return load_spec_file(name);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(name + ": " + e.what());
  } catch (const SpecError& e) {
    throw InputError(e.what());
  }
}

std::map<CellIndex, Symbol> load_tape(const MachineArgs& m, const TMSpec& spec, const Globals& g) {
  if (m.random_tape) return random_tape(g.seed, spec);
  if (m.tape_file.empty()) return {};
  try {
    auto tape = tape_from_json(read_json_file(m.tape_file));
    for (const auto& [i, s] : tape) {
      if (!spec.has_symbol(s)) throw InputError("tape symbol \"" + s + "\" is not in the alphabet");
    }
    return tape;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(m.tape_file + ": " + e.what());
  } catch (const SpecError& e) {
    throw InputError(e.what());
  }
}

RulesetParams load_params(const Globals& g) {
  const Ruleset r = ruleset_from_string(g.ruleset);
  if (g.params_file.empty()) return default_params(r);
  try {
    return load_params_file(g.params_file, r);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(g.params_file + ": " + e.what());
  } catch (const SpecError& e) {
    throw InputError(e.what());
  }
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw InputError("cannot write " + path);
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

std::string machine_label(const MachineArgs& m) { return !m.builtin.empty() ? m.builtin : m.machine; }

// ---------------------------------------------------------------------------
// Traces

nlohmann::json cities_json(const WorldState& w) {
  nlohmann::json cities = nlohmann::json::array();
  for (const auto& c : w.cities) {
    cities.push_back({{"center", c.center},
                      {"citizens", c.citizens},
                      {"growth_cap", c.growth_cap},
                      {"food_stock", c.food_stock},
                      {"net_food", city_net_food(w, c)}});
  }
  return cities;
}

nlohmann::json yields_json(const WorldState& w) {
  const Yields y = yields(w);
  nlohmann::json j = {{"culture", y.culture}, {"faith", y.faith}};
  return j;
}

nlohmann::json changed_cells(const std::map<CellIndex, Symbol>& before, const std::map<CellIndex, Symbol>& after,
                             const Symbol& blank) {
  nlohmann::json changed = nlohmann::json::object();
  std::set<CellIndex> keys;
  for (const auto& [k, v] : before) keys.insert(k);
  for (const auto& [k, v] : after) keys.insert(k);
  for (CellIndex k : keys) {
    auto a = before.find(k);
    auto b = after.find(k);
    const Symbol& sa = a == before.end() ? blank : a->second;
    const Symbol& sb = b == after.end() ? blank : b->second;
    if (sa != sb) changed[std::to_string(k)] = sb;
  }
  return changed;
}

struct RunSummary {
  int status = kExitOk;
  bool halted = false;
  std::int64_t instructions = 0;
  std::string error;
  TMConfig final_config;
  WorldState world;
  std::vector<InstructionRecord> records;
};

// Executes on the world engine only; every boundary is decoded for the trace.
RunSummary execute_run(const TMSpec& spec, const ControllerProgram& program, const std::map<CellIndex, Symbol>& tape,
                       const RulesetParams& params, std::int64_t max_instructions, std::ostream* trace,
                       const std::string& label) {
  RunSummary s;
  s.world = init_world(encode_tape(tape, program), params);
  TMConfig config = *decode(s.world, program).config;
  if (trace != nullptr) {
    *trace << nlohmann::json{{"format_version", 1},
                             {"kind", "trace"},
                             {"machine", label},
                             {"ruleset", to_string(params.ruleset)},
                             {"params", params_to_json(params)},
                             {"initial_tape", tape_to_json(tape)}}
                  .dump()
           << '\n';
  }
  std::int64_t extensions = 0;
  try {
    for (std::int64_t i = 1; i <= max_instructions; ++i) {
      if (program.halting.contains(program.state_index(config.state))) {
        s.halted = true;
        break;
      }
      auto [next, rec] = execute_instruction(std::move(s.world), program);
      s.world = std::move(next);
      const DecodedConfig d = decode(s.world, program);
      if (!d.config) throw InvariantViolation("world not at an instruction boundary");
      const TMConfig after = *d.config;
      extensions += rec.extension ? 1 : 0;
      if (trace != nullptr) {
        nlohmann::json r = {{"instruction", rec.index},
                            {"turn", s.world.turn},
                            {"state", after.state},
                            {"head", after.head},
                            {"read", rec.read},
                            {"changed", changed_cells(config.tape, after.tape, spec.blank)},
                            {"turns", rec.turns()},
                            {"yields", yields_json(s.world)}};
        if (params.ruleset == Ruleset::VI) {
          r["extension"] = rec.extension;
          r["cities"] = cities_json(s.world);
        }
        if (rec.halted) r["halt"] = true;
        *trace << r.dump() << '\n';
      }
      config = after;
      s.instructions = i;
      s.records.push_back(std::move(rec));
      if (s.records.back().halted) {
        s.halted = true;
        break;
      }
    }
    if (!s.halted && program.halting.contains(program.state_index(config.state))) s.halted = true;
    if (!s.halted) {
      s.status = kExitStepLimit;
      s.error = "instruction limit reached";
    }
  } catch (const StuckError& e) {
    s.status = kExitStuck;
    s.error = e.what();
  } catch (const TurnBudgetExceeded& e) {
    s.status = kExitStepLimit;
    s.error = e.what();
  }
  s.final_config = config;
  if (trace != nullptr) {
    nlohmann::json summary = {{"summary", true},
                              {"status", s.status},
                              {"halted", s.halted},
                              {"instructions", s.instructions},
                              {"total_turns", s.world.turn},
                              {"state", config.state},
                              {"head", config.head},
                              {"final_tape", tape_to_json(config.tape)},
                              {"extension_events", extensions}};
    if (!s.error.empty()) summary["error"] = s.error;
    *trace << summary.dump() << '\n';
  }
  return s;
}

std::int64_t count_symbol(const std::map<CellIndex, Symbol>& tape, const Symbol& s) {
  return std::count_if(tape.begin(), tape.end(), [&s](const auto& kv) { return kv.second == s; });
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_run(const Globals& g, const MachineArgs& m, const std::string& events_file, std::ostream& out) {
  const TMSpec spec = load_machine(m);
  const RulesetParams params = load_params(g);
  const auto tape = load_tape(m, spec, g);
  ControllerProgram program;
  try {
    program = compile(spec, params);
  } catch (const CompileError& e) {
    throw InputError(e.what());
  }
  const std::int64_t limit = g.max_instructions >= 0 ? g.max_instructions : 10000;
  Output trace(g.out_file, out);
  RunSummary s = execute_run(spec, program, tape, params, limit, &trace.stream(), machine_label(m));
  if (!events_file.empty()) {
    Output ev(events_file, out);
    ev.stream() << event_log_jsonl(s.world);
  }
  return s.status;
}

nlohmann::json verify_one(const TMSpec& spec, const std::optional<ControllerProgram>& loaded,
                          const std::map<CellIndex, Symbol>& tape, const RulesetParams& params, std::int64_t limit,
                          int& status) {
  const ControllerProgram program = loaded ? *loaded : compile(spec, params);
  const LockstepReport rep = lockstep_verify(spec, program, tape, limit, params);
  const OverheadReport ov = overhead_report(rep.final_world.event_log, params);
  nlohmann::json j = {{"lockstep", lockstep_to_json(rep)}, {"overhead", overhead_to_json(ov)}};
  j["overhead"].erase("per_instruction");
  int s = kExitOk;
  switch (rep.outcome) {
    case LockstepOutcome::Equivalent: break;
    case LockstepOutcome::Diverged: s = kExitFailure; break;
    case LockstepOutcome::OracleStuck: s = kExitStuck; break;
    case LockstepOutcome::StepLimit: s = kExitStepLimit; break;
  }
  if (s == kExitOk && !ov.derived_bound_satisfied) s = kExitFailure;
  if (status == kExitOk) status = s;
  return j;
}

int cmd_verify(const Globals& g, const MachineArgs& m, const std::string& program_file, int seeds, int states,
               int symbols, std::ostream& out) {
  const RulesetParams params = load_params(g);
  const std::int64_t limit = g.max_instructions >= 0 ? g.max_instructions : 200;
  int status = kExitOk;
  Output report(g.out_file, out);
  if (seeds > 0) {
    nlohmann::json runs = nlohmann::json::array();
    for (int i = 0; i < seeds; ++i) {
      const std::uint64_t seed = g.seed + static_cast<std::uint64_t>(i);
      const TMSpec spec = random_tm(seed, states, symbols);
      const auto tape = random_tape(seed, spec);
      nlohmann::json j = verify_one(spec, std::nullopt, tape, params, limit, status);
      runs.push_back({{"seed", seed},
                      {"outcome", j["lockstep"]["outcome"]},
                      {"termination", j["lockstep"]["termination"]},
                      {"instructions_verified", j["lockstep"]["instructions_verified"]},
                      {"derived_bound_satisfied", j["overhead"]["derived_bound_satisfied"]}});
    }
    report.stream() << nlohmann::json{{"format_version", 1}, {"random_sweep", runs}, {"status", status}}.dump(2)
                    << '\n';
    return status;
  }
  const TMSpec spec = load_machine(m);
  const auto tape = load_tape(m, spec, g);
  std::optional<ControllerProgram> program;
  if (!program_file.empty()) {
    try {
      program = program_from_json(read_json_file(program_file));
    } catch (const nlohmann::json::exception& e) {
      throw InputError(program_file + ": " + e.what());
    } catch (const SpecError& e) {
      throw InputError(e.what());
    }
  }
  nlohmann::json j;
  try {
    j = verify_one(spec, program, tape, params, limit, status);
  } catch (const CompileError& e) {
    throw InputError(e.what());
  }
  j["format_version"] = 1;
  j["machine"] = machine_label(m);
  j["status"] = status;
  report.stream() << j.dump(2) << '\n';
  return status;
}

int cmd_compile(const Globals& g, const MachineArgs& m, bool diff_fixture, std::ostream& out, std::ostream& err) {
  const TMSpec spec = load_machine(m);
  const RulesetParams params = load_params(g);
  ControllerProgram program;
  try {
    program = compile(spec, params);
  } catch (const CompileError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }
  const std::string dumped = program_to_json(program).dump(2) + "\n";
  if (!g.out_file.empty()) {
    Output o(g.out_file, out);
    o.stream() << dumped;
  } else if (!diff_fixture) {
    out << dumped;
  }
  out << "macros: " << program.macros.size() << '\n';
  if (!diff_fixture) return kExitOk;
  const std::string name = machine_label(m);
  if (!has_fixture(name, params.ruleset)) {
    err << "error: no shipped table for " << name << " on " << to_string(params.ruleset) << '\n';
    return kExitFailure;
  }
  const FixtureDiff d = diff_against_fixture(program, spec, load_fixture(name, params.ruleset));
  out << "rows compared: " << d.rows_compared << " (" << d.annotated_rows << " annotated)\n";
  for (const auto& line : d.differences) out << "diff: " << line << '\n';
  out << "differences: " << d.differences.size() << '\n';
  return d.clean() ? kExitOk : kExitFailure;
}

std::string render_tape(const std::map<CellIndex, Symbol>& tape, CellIndex head, CellIndex lo, CellIndex hi,
                        const Symbol& blank) {
  std::string line;
  for (CellIndex i = lo; i <= hi; ++i) {
    auto it = tape.find(i);
    const Symbol& s = it == tape.end() ? blank : it->second;
    line += i == head ? "[" + s + "]" : " " + s + " ";
  }
  return line;
}

int cmd_demo(const Globals& g, std::ostream& out) {
  const TMSpec spec = builtin_program("bb3");
  const RulesetParams params = load_params(g);
  const ControllerProgram program = compile(spec, params);
  std::optional<Output> trace;
  if (!g.out_file.empty()) trace.emplace(g.out_file, out);
  RunSummary s = execute_run(spec, program, {}, params, 1000, trace ? &trace->stream() : nullptr, "bb3");
  if (s.status != kExitOk) return s.status;

  // Replay the oracle for the rendering; the trace above came from the world.
  const RunResult oracle = run(spec, initial_config(spec), 1000);
  CellIndex lo = 0, hi = 0;
  for (const auto& c : oracle.trace) {
    lo = std::min(lo, c.head);
    hi = std::max(hi, c.head);
    if (!c.tape.empty()) {
      lo = std::min(lo, c.tape.begin()->first);
      hi = std::max(hi, c.tape.rbegin()->first);
    }
  }
  const char* yield_name = params.ruleset == Ruleset::BE ? "Culture" : params.ruleset == Ruleset::VI ? "Faith" : "Railroads";
  const Yields base = yields(init_world({}, params));
  WorldState replay = init_world({}, params);
  out << "BB-3 on " << to_string(params.ruleset) << '\n';
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    const auto& rec = s.records[i];
    const auto& before = oracle.trace[i];
    const auto& after = oracle.trace[i + 1];
    const Action* a = spec.find(rec.state, rec.read);
    std::ostringstream t;
    t << "t" << rec.index;
    std::ostringstream instr;
    instr << rec.state << " " << rec.read << ";";
    if (a->halt) {
      instr << "HALT";
    } else {
      instr << a->write << " " << to_char(*a->move) << " " << *a->next;
    }
    auto [w, r] = execute_instruction(std::move(replay), program);
    replay = std::move(w);
    const Yields y = yields(replay);
    std::int64_t delta = 0;
    if (params.ruleset == Ruleset::BE) delta = y.culture - base.culture;
    if (params.ruleset == Ruleset::VI) delta = y.faith - base.faith;
    if (params.ruleset == Ruleset::V) delta = replay.state_region.railroads();
    out << std::left << std::setw(5) << t.str() << std::setw(16) << instr.str() << "|"
        << render_tape(after.tape, after.head, lo, hi, spec.blank) << "| " << after.state << "  " << yield_name
        << " " << (delta >= 0 && params.ruleset != Ruleset::V ? "+" : "") << delta << "  turn " << replay.turn << '\n';
    (void)before;
  }
  out << "halted: " << (s.halted ? "yes" : "no") << '\n';
  out << "ones: " << count_symbol(s.final_config.tape, "1") << '\n';
  out << "instructions: " << s.instructions << " (reference figure: 11)\n";
  out << "total turns: " << s.world.turn << '\n';
  return kExitOk;
}

int cmd_cost(const Globals& g, const MachineArgs& m, std::ostream& out) {
  const RulesetParams params = load_params(g);
  nlohmann::json j = {{"format_version", 1}, {"ruleset", to_string(params.ruleset)}, {"params", params_to_json(params)}};
  switch (params.ruleset) {
    case Ruleset::BE:
      j["nominal_formula"] = "5T+M";
      j["nominal_bound"] = 5 * params.terrascape_build_turns + params.road_build_turns;
      break;
    case Ruleset::V:
      j["nominal_formula"] = "4B_rr+1";
      j["nominal_bound"] = 4 * params.railroad_build_turns + 1;
      break;
    case Ruleset::VI: {
      j["nominal_formula"] = "C+S(L)+3";
      nlohmann::json ext = nlohmann::json::array();
      for (std::int64_t L = 2; L <= 20; L += 2) {
        ext.push_back({{"tape_length", L},
                       {"settler_cost", RulesetParams::settler_cost(L)},
                       {"settler_turns", params.settler_turns(L)},
                       {"nominal_bound", vi_extension_nominal_bound(params, L)},
                       {"derived_bound", extension_turns(params, L)}});
      }
      j["extensions"] = ext;
      break;
    }
  }
  j["head_move_turns"] = head_move_turns(params);
  if (!m.machine.empty() || !m.builtin.empty()) {
    const TMSpec spec = load_machine(m);
    try {
      j["program_derived_bound"] = program_derived_bound(compile(spec, params), params);
    } catch (const CompileError& e) {
      throw InputError(e.what());
    }
  }
  Output o(g.out_file, out);
  o.stream() << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Turing machines compiled to strategy-game command programs", "civtm"};
  app.require_subcommand(1);
  Globals g;
  MachineArgs m;
  std::string events_file, program_file;
  bool diff_fixture = false;
  int seeds = 0, states = 4, symbols = 2;

  auto* run = app.add_subcommand("run", "execute a machine on the world engine and write a trace");
  add_globals(run, g);
  add_machine(run, m);
  run->add_option("--events", events_file, "write the world event log (JSONL)");

  auto* verify = app.add_subcommand("verify", "lockstep verification against the reference machine");
  add_globals(verify, g);
  add_machine(verify, m);
  verify->add_option("--program", program_file, "use this compiled program instead of compiling");
  verify->add_option("--seeds", seeds, "verify this many random machines starting at --seed");
  verify->add_option("--states", states, "random machines: states, halting state included");
  verify->add_option("--symbols", symbols, "random machines: symbols, blank included");

  auto* comp = app.add_subcommand("compile", "compile a machine to a controller program");
  add_globals(comp, g);
  add_machine(comp, m);
  comp->add_flag("--diff-fixture", diff_fixture, "compare against the shipped construction table");

  auto* demo = app.add_subcommand("demo-bb3", "run BB-3 and render every instruction");
  add_globals(demo, g);

  auto* cost = app.add_subcommand("cost", "print the turn cost model for the parameters");
  add_globals(cost, g);
  add_machine(cost, m);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*run) return cmd_run(g, m, events_file, out);
    if (*verify) return cmd_verify(g, m, program_file, seeds, states, symbols, out);
    if (*comp) return cmd_compile(g, m, diff_fixture, out, err);
    if (*demo) return cmd_demo(g, out);
    if (*cost) return cmd_cost(g, m, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace civtm
