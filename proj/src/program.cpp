#include "civtm/program.hpp"

#include <algorithm>

#include "civtm/errors.hpp"

namespace civtm {

namespace {

constexpr std::pair<TapeAction, const char*> kTapeActionNames[] = {
    {TapeAction::Leave, "leave"},
    {TapeAction::BuildRoad, "build_road"},
    {TapeAction::RemoveImprovement, "remove_improvement"},
    {TapeAction::PillageRoad, "pillage_road"},
    {TapeAction::RepairRoad, "repair_road"},
    {TapeAction::BuildRailroad, "build_railroad"},
    {TapeAction::BuildRoadThenPillage, "build_road_then_pillage"},
    {TapeAction::SetWorked, "set_worked"},
    {TapeAction::SetUnworked, "set_unworked"},
};

}  // namespace

std::string to_string(TapeAction a) {
  for (const auto& [action, name] : kTapeActionNames) {
    if (action == a) return name;
  }
  return "?";
}

TapeAction tape_action_from_string(const std::string& s) {
  for (const auto& [action, name] : kTapeActionNames) {
    if (s == name) return action;
  }
  throw SpecError("unknown tape action \"" + s + "\"");
}

int ControllerProgram::state_index(const State& q) const {
  auto it = std::find(states.begin(), states.end(), q);
  if (it == states.end()) throw DecodeError("state \"" + q + "\" not in program");
  return static_cast<int>(it - states.begin());
}

TapeMark ControllerProgram::mark_of(const Symbol& s) const {
  auto it = std::find(symbols.begin(), symbols.end(), s);
  if (it == symbols.end()) throw SpecError("symbol \"" + s + "\" not in program alphabet");
  return marks[static_cast<std::size_t>(it - symbols.begin())];
}

const Symbol& ControllerProgram::symbol_of(TapeMark m) const {
  auto it = std::find(marks.begin(), marks.end(), m);
  if (it == marks.end()) throw DecodeError("tape mark " + to_string(m) + " outside the program alphabet");
  return symbols[static_cast<std::size_t>(it - marks.begin())];
}

const CommandMacro* ControllerProgram::find(int state, TapeMark read) const {
  auto it = macros.find({state, read});
  return it == macros.end() ? nullptr : &it->second;
}

std::vector<TapeMark> ruleset_marks(Ruleset r) {
  switch (r) {
    case Ruleset::BE: return {TapeMark::Blank, TapeMark::Road, TapeMark::PillagedRoad};
    case Ruleset::V: return {TapeMark::Blank, TapeMark::Road, TapeMark::Railroad};
    case Ruleset::VI: return {TapeMark::Blank, TapeMark::Worked};
  }
  return {};
}

TapeAction realize_write(Ruleset r, TapeMark read, TapeMark write) {
  using M = TapeMark;
  if (read == write) return TapeAction::Leave;
  if (r == Ruleset::VI) return write == M::Worked ? TapeAction::SetWorked : TapeAction::SetUnworked;
  if (write == M::Blank) return TapeAction::RemoveImprovement;
  if (write == M::Road) {
    return read == M::PillagedRoad ? TapeAction::RepairRoad : TapeAction::BuildRoad;
  }
  if (write == M::PillagedRoad) {
    return read == M::Road ? TapeAction::PillageRoad : TapeAction::BuildRoadThenPillage;
  }
  return TapeAction::BuildRailroad;
}

ControllerProgram compile(const TMSpec& spec, Ruleset ruleset) { return compile(spec, default_params(ruleset)); }

ControllerProgram compile(const TMSpec& spec, const RulesetParams& params) {
  validate_spec(spec);
  const Ruleset r = params.ruleset;
  ControllerProgram p;
  p.ruleset = r;
  p.extension_policy = r == Ruleset::VI;

  const auto marks = ruleset_marks(r);
  if (spec.alphabet.size() > marks.size()) {
    throw CompileError("alphabet too large for ruleset " + to_string(r) + ": " + std::to_string(spec.alphabet.size()) +
                       " symbols, at most " + std::to_string(marks.size()));
  }
  p.symbols.push_back(spec.blank);
  for (const auto& s : spec.alphabet) {
    if (s != spec.blank) p.symbols.push_back(s);
  }
  p.marks.assign(marks.begin(), marks.begin() + static_cast<std::ptrdiff_t>(p.symbols.size()));

  const std::size_t capacity =
      r == Ruleset::VI ? static_cast<std::size_t>(kStateCityTiles) : static_cast<std::size_t>(params.state_region_tiles);
  if (spec.states.size() - 1 > capacity) {
    throw CompileError("state region too small: " + std::to_string(spec.states.size()) + " states need " +
                       std::to_string(spec.states.size() - 1) + " region tiles, ruleset " + to_string(r) + " has " +
                       std::to_string(capacity));
  }
  p.states.push_back(spec.initial);
  for (const auto& q : spec.states) {
    if (q != spec.initial) p.states.push_back(q);
  }
  for (const auto& q : spec.halting) p.halting.insert(p.state_index(q));

  for (const auto& [key, action] : spec.transitions) {
    const int from = p.state_index(key.first);
    const TapeMark read = p.mark_of(key.second);
    CommandMacro m;
    m.tape_action = realize_write(r, read, p.mark_of(action.write));
    if (action.halt) {
      m.halt = true;
    } else {
      m.head_move = action.move;
      m.state_action = p.state_index(*action.next) - from;
    }
    p.macros[{from, read}] = m;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Table wording

namespace {

std::string count_phrase(int n, const std::string& verb, const std::string& noun) {
  if (n == 1) return verb + " a " + noun;
  return verb + " " + std::to_string(n) + " " + noun + "s";
}

std::string tape_phrase(Ruleset r, TapeAction a) {
  switch (a) {
    case TapeAction::Leave: return "No Improvement";
    case TapeAction::BuildRoad: return "Build a Road";
    case TapeAction::RemoveImprovement: return "Remove Improvement";
    case TapeAction::PillageRoad: return "Pillage the Road";
    case TapeAction::RepairRoad: return "Repair the Road";
    case TapeAction::BuildRailroad: return "Build a Railroad";
    case TapeAction::BuildRoadThenPillage: return "Build a Road, Pillage it,";
    case TapeAction::SetWorked: return "Is Being Worked";
    case TapeAction::SetUnworked: return "Is Not Being Worked";
  }
  (void)r;
  return "?";
}

}  // namespace

std::string describe_macro(Ruleset r, TapeMark read, const CommandMacro& m) {
  if (m.halt && m.tape_action == TapeAction::Leave) return "HALT";
  if (r == Ruleset::VI) {
    // The VI wording names the symbol left on the cell rather than an action.
    TapeAction shown = m.tape_action;
    if (shown == TapeAction::Leave) shown = read == TapeMark::Worked ? TapeAction::SetWorked : TapeAction::SetUnworked;
    std::string out = tape_phrase(r, shown);
    if (m.halt) return out + "; HALT";
    out += ", move ";
    out += to_char(*m.head_move);
    const int d = m.state_action;
    out += d >= -1 ? "; Work " + std::to_string(d + 1) + " more Monasteries"
                   : "; Work " + std::to_string(-d - 1) + " more Farms";
    return out;
  }
  std::string out = tape_phrase(r, m.tape_action);
  if (m.halt) return out + "; HALT";
  out += " and move ";
  out += to_char(*m.head_move);
  out += "; ";
  const std::string noun = r == Ruleset::BE ? "Terrascape" : "Railroad";
  if (m.state_action == 0) {
    out += "No build";
  } else if (m.state_action > 0) {
    out += count_phrase(m.state_action, "Build", noun);
  } else {
    out += count_phrase(-m.state_action, "Remove", noun);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json program_to_json(const ControllerProgram& p) {
  nlohmann::json states = nlohmann::json::array();
  for (std::size_t i = 0; i < p.states.size(); ++i) {
    states.push_back({{"index", i}, {"state", p.states[i]}, {"halting", p.halting.contains(static_cast<int>(i))}});
  }
  nlohmann::json symbols = nlohmann::json::array();
  for (std::size_t i = 0; i < p.symbols.size(); ++i) {
    symbols.push_back({{"symbol", p.symbols[i]}, {"encoding", to_string(p.marks[i])}});
  }
  nlohmann::json macros = nlohmann::json::array();
  for (const auto& [key, m] : p.macros) {
    nlohmann::json jm = {{"state_index", key.first},
                         {"state", p.states[static_cast<std::size_t>(key.first)]},
                         {"read", p.symbol_of(key.second)},
                         {"encoding", to_string(key.second)},
                         {"tape_action", to_string(m.tape_action)},
                         {"state_action", m.state_action},
                         {"halt", m.halt},
                         {"command", describe_macro(p.ruleset, key.second, m)}};
    jm["head_move"] = m.head_move ? nlohmann::json(std::string(1, to_char(*m.head_move))) : nlohmann::json(nullptr);
    macros.push_back(std::move(jm));
  }
  return {{"format_version", 1},
          {"ruleset", to_string(p.ruleset)},
          {"extension_policy", p.extension_policy},
          {"states", std::move(states)},
          {"symbols", std::move(symbols)},
          {"macros", std::move(macros)}};
}

ControllerProgram program_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format_version") != 1) throw SpecError("unsupported program format_version");
    ControllerProgram p;
    p.ruleset = ruleset_from_string(j.at("ruleset").get<std::string>());
    p.extension_policy = j.value("extension_policy", p.ruleset == Ruleset::VI);
    for (const auto& s : j.at("states")) {
      if (s.at("index").get<std::size_t>() != p.states.size()) throw SpecError("program states out of order");
      p.states.push_back(s.at("state").get<State>());
      if (s.value("halting", false)) p.halting.insert(static_cast<int>(p.states.size() - 1));
    }
    for (const auto& s : j.at("symbols")) {
      p.symbols.push_back(s.at("symbol").get<Symbol>());
      p.marks.push_back(tape_mark_from_string(s.at("encoding").get<std::string>()));
    }
    for (const auto& jm : j.at("macros")) {
      CommandMacro m;
      m.tape_action = tape_action_from_string(jm.at("tape_action").get<std::string>());
      m.state_action = jm.at("state_action").get<int>();
      m.halt = jm.at("halt").get<bool>();
      if (!jm.at("head_move").is_null()) m.head_move = move_from_string(jm.at("head_move").get<std::string>());
      if (!m.halt && !m.head_move) throw SpecError("non-halting macro without head_move");
      p.macros[{jm.at("state_index").get<int>(), tape_mark_from_string(jm.at("encoding").get<std::string>())}] = m;
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("malformed program: ") + e.what());
  }
}

}  // namespace civtm
