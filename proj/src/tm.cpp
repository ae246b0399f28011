#include "civtm/tm.hpp"

#include <algorithm>
#include <fstream>

#include "civtm/errors.hpp"

namespace civtm {

char to_char(Move m) { return m == Move::L ? 'L' : 'R'; }

Move move_from_string(const std::string& s) {
  if (s == "L") return Move::L;
  if (s == "R") return Move::R;
  throw SpecError("move must be \"L\" or \"R\", got \"" + s + "\"");
}

const Action* TMSpec::find(const State& q, const Symbol& s) const {
  auto it = transitions.find({q, s});
  return it == transitions.end() ? nullptr : &it->second;
}

bool TMSpec::has_state(const State& q) const {
  return std::find(states.begin(), states.end(), q) != states.end();
}

bool TMSpec::has_symbol(const Symbol& s) const {
  return std::find(alphabet.begin(), alphabet.end(), s) != alphabet.end();
}

Symbol TMConfig::read(const Symbol& blank) const {
  auto it = tape.find(head);
  return it == tape.end() ? blank : it->second;
}

void TMConfig::write(CellIndex at, const Symbol& s, const Symbol& blank) {
  if (s == blank) {
    tape.erase(at);
  } else {
    tape[at] = s;
  }
}

TMConfig initial_config(const TMSpec& spec, std::map<CellIndex, Symbol> tape) {
  TMConfig config{spec.initial, {}, 0};
  for (auto& [i, s] : tape) {
    if (!spec.has_symbol(s)) throw SpecError("tape symbol \"" + s + "\" not in alphabet");
    config.write(i, s, spec.blank);
  }
  return config;
}

namespace {

template <typename T>
bool has_duplicates(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) != v.end();
}

}  // namespace

const TMSpec& validate_spec(const TMSpec& spec) {
  if (spec.states.empty()) throw SpecError("machine has no states");
  if (has_duplicates(spec.states)) throw SpecError("duplicate state identifier");
  if (has_duplicates(spec.alphabet)) throw SpecError("duplicate alphabet symbol");
  if (!spec.has_symbol(spec.blank)) throw SpecError("blank symbol \"" + spec.blank + "\" not in alphabet");
  for (const auto& s : spec.input_alphabet) {
    if (s == spec.blank) throw SpecError("blank symbol \"" + s + "\" is in the input alphabet");
    if (!spec.has_symbol(s)) throw SpecError("input symbol \"" + s + "\" not in alphabet");
  }
  if (!spec.has_state(spec.initial)) throw SpecError("initial state \"" + spec.initial + "\" unknown");
  for (const auto& q : spec.halting) {
    if (!spec.has_state(q)) throw SpecError("halting state \"" + q + "\" unknown");
  }
  for (const auto& [key, action] : spec.transitions) {
    const auto& [q, s] = key;
    if (!spec.has_state(q)) throw SpecError("transition from unknown state \"" + q + "\"");
    if (spec.is_halting(q)) throw SpecError("transition from halting state \"" + q + "\"");
    if (!spec.has_symbol(s)) throw SpecError("transition reads unknown symbol \"" + s + "\"");
    if (!spec.has_symbol(action.write)) {
      throw SpecError("transition (" + q + ", " + s + ") writes unknown symbol \"" + action.write + "\"");
    }
    if (action.halt) continue;
    if (!action.move || !action.next) {
      throw SpecError("transition (" + q + ", " + s + ") lacks move or next state");
    }
    if (!spec.has_state(*action.next)) {
      throw SpecError("transition (" + q + ", " + s + ") targets unknown state \"" + *action.next + "\"");
    }
  }
  return spec;
}

StepResult step(const TMSpec& spec, const TMConfig& config) {
  if (spec.is_halting(config.state)) return Halted{config};
  const Symbol read = config.read(spec.blank);
  const Action* action = spec.find(config.state, read);
  if (action == nullptr) {
    throw StuckError("machine stuck: no transition for (" + config.state + ", " + read + ")");
  }
  TMConfig next = config;
  next.write(next.head, action->write, spec.blank);
  if (action->halt) return Halted{std::move(next)};
  next.head += offset(*action->move);
  next.state = *action->next;
  return next;
}

std::string to_string(RunOutcome o) {
  switch (o) {
    case RunOutcome::Halted: return "halted";
    case RunOutcome::Stuck: return "stuck";
    case RunOutcome::StepLimit: return "step-limit";
  }
  return "?";
}

RunResult run(const TMSpec& spec, const TMConfig& config, std::int64_t max_steps) {
  RunResult result;
  result.trace.push_back(config);
  while (true) {
    const TMConfig& current = result.trace.back();
    if (spec.is_halting(current.state)) {
      result.outcome = RunOutcome::Halted;
      return result;
    }
    if (result.steps >= max_steps) {
      result.outcome = RunOutcome::StepLimit;
      return result;
    }
    StepResult r;
    try {
      r = step(spec, current);
    } catch (const StuckError&) {
      result.outcome = RunOutcome::Stuck;
      return result;
    }
    ++result.steps;
    if (auto* h = std::get_if<Halted>(&r)) {
      result.trace.push_back(std::move(h->config));
      result.outcome = RunOutcome::Halted;
      return result;
    }
    result.trace.push_back(std::get<TMConfig>(std::move(r)));
  }
}

// ---------------------------------------------------------------------------
// File format

namespace {

const std::set<std::string> kSpecFields = {"format_version", "states",  "alphabet", "blank",
                                           "input_alphabet", "initial", "halting",  "transitions"};
const std::set<std::string> kTransitionFields = {"state", "read", "write", "move", "next", "halt"};

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw SpecError(where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.contains(it.key())) throw SpecError("unknown field \"" + it.key() + "\" in " + where);
  }
}

template <typename T>
T require(const nlohmann::json& j, const char* field, const std::string& where) {
  if (!j.contains(field)) throw SpecError(std::string("missing field \"") + field + "\" in " + where);
  try {
    return j.at(field).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("bad field \"") + field + "\" in " + where + ": " + e.what());
  }
}

}  // namespace

nlohmann::json spec_to_json(const TMSpec& spec) {
  nlohmann::json transitions = nlohmann::json::array();
  for (const auto& [key, a] : spec.transitions) {
    nlohmann::json t = {{"state", key.first}, {"read", key.second}, {"write", a.write}};
    if (a.halt) {
      t["halt"] = true;
      if (a.move) t["move"] = std::string(1, to_char(*a.move));
    } else {
      t["move"] = std::string(1, to_char(*a.move));
      t["next"] = *a.next;
    }
    transitions.push_back(std::move(t));
  }
  return {{"format_version", 1},
          {"states", spec.states},
          {"alphabet", spec.alphabet},
          {"blank", spec.blank},
          {"input_alphabet", spec.input_alphabet},
          {"initial", spec.initial},
          {"halting", std::vector<State>(spec.halting.begin(), spec.halting.end())},
          {"transitions", std::move(transitions)}};
}

TMSpec spec_from_json(const nlohmann::json& j) {
  reject_unknown(j, kSpecFields, "machine spec");
  if (j.contains("format_version") && j.at("format_version") != 1) {
    throw SpecError("unsupported format_version " + j.at("format_version").dump());
  }
  TMSpec spec;
  spec.states = require<std::vector<State>>(j, "states", "machine spec");
  spec.alphabet = require<std::vector<Symbol>>(j, "alphabet", "machine spec");
  spec.blank = require<Symbol>(j, "blank", "machine spec");
  spec.input_alphabet = require<std::vector<Symbol>>(j, "input_alphabet", "machine spec");
  spec.initial = require<State>(j, "initial", "machine spec");
  for (auto& q : require<std::vector<State>>(j, "halting", "machine spec")) spec.halting.insert(q);
  const auto& ts = j.contains("transitions") ? j.at("transitions") : throw SpecError("missing field \"transitions\"");
  if (!ts.is_array()) throw SpecError("\"transitions\" must be an array");
  for (const auto& t : ts) {
    reject_unknown(t, kTransitionFields, "transition");
    const auto q = require<State>(t, "state", "transition");
    const auto s = require<Symbol>(t, "read", "transition");
    Action a;
    a.halt = t.value("halt", false);
    if (a.halt) {
      a.write = t.contains("write") ? require<Symbol>(t, "write", "transition") : s;
      if (t.contains("next")) throw SpecError("HALT transition (" + q + ", " + s + ") must not set next");
      if (t.contains("move")) a.move = move_from_string(require<std::string>(t, "move", "transition"));
    } else {
      a.write = require<Symbol>(t, "write", "transition");
      a.move = move_from_string(require<std::string>(t, "move", "transition"));
      a.next = require<State>(t, "next", "transition");
    }
    if (!spec.transitions.emplace(TransitionKey{q, s}, std::move(a)).second) {
      throw SpecError("duplicate transition (" + q + ", " + s + ")");
    }
  }
  return spec;
}

TMSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(path + ": " + e.what());
  }
  TMSpec spec = spec_from_json(j);
  validate_spec(spec);
  return spec;
}

nlohmann::json tape_to_json(const std::map<CellIndex, Symbol>& tape) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [i, s] : tape) j[std::to_string(i)] = s;
  return j;
}

std::map<CellIndex, Symbol> tape_from_json(const nlohmann::json& j) {
  const nlohmann::json& cells = j.contains("tape") ? j.at("tape") : j;
  if (!cells.is_object()) throw SpecError("tape must be an object mapping cell index to symbol");
  std::map<CellIndex, Symbol> tape;
  for (auto it = cells.begin(); it != cells.end(); ++it) {
    CellIndex index = 0;
    try {
      std::size_t used = 0;
      index = std::stoll(it.key(), &used);
      if (used != it.key().size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw SpecError("tape key \"" + it.key() + "\" is not an integer");
    }
    if (!it.value().is_string()) throw SpecError("tape symbol at " + it.key() + " must be a string");
    tape[index] = it.value().get<Symbol>();
  }
  return tape;
}

}  // namespace civtm
