#include "civtm/fixtures.hpp"

#include <cctype>

#include "civtm/errors.hpp"
#include "fixture_data.hpp"

namespace civtm {

namespace {

std::string fixture_file(const std::string& program, Ruleset ruleset) {
  std::string r = to_string(ruleset);
  for (auto& c : r) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return program + "_" + r + ".json";
}

std::string read_label(Ruleset r, TapeMark m) {
  switch (m) {
    case TapeMark::Blank: return r == Ruleset::VI ? "Is Not Being Worked" : "No Improvement";
    case TapeMark::Road: return "Road";
    case TapeMark::PillagedRoad: return "Pillaged Road";
    case TapeMark::Railroad: return "Railroad";
    case TapeMark::Worked: return "Is Being Worked";
  }
  return "?";
}

std::optional<std::string> opt_string(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return j.at(key).get<std::string>();
}

}  // namespace

bool has_fixture(const std::string& program, Ruleset ruleset) {
  return detail::embedded_fixture(fixture_file(program, ruleset)) != nullptr;
}

Fixture load_fixture(const std::string& program, Ruleset ruleset) {
  const char* text = detail::embedded_fixture(fixture_file(program, ruleset));
  if (text == nullptr) throw SpecError("no fixture for " + program + " on " + to_string(ruleset));
  return fixture_from_json(nlohmann::json::parse(text));
}

Fixture fixture_from_json(const nlohmann::json& j) {
  if (j.value("format_version", 0) != 1) throw SpecError("fixture: unsupported format_version");
  Fixture f;
  f.program = j.at("program").get<std::string>();
  f.ruleset = ruleset_from_string(j.at("ruleset").get<std::string>());
  f.notes = j.value("notes", "");
  for (const auto& jr : j.at("rows")) {
    FixtureRow row;
    row.game_state = jr.at("game_state").get<int>();
    row.tape_read = jr.at("tape_read").get<std::string>();
    row.command = jr.at("command").get<std::string>();
    row.tm = jr.at("tm").get<std::string>();
    const auto& t = jr.at("transition");
    row.key = {t.at("state").get<std::string>(), t.at("read").get<std::string>()};
    row.action.write = t.at("write").get<std::string>();
    row.action.halt = t.value("halt", false);
    if (t.contains("move")) row.action.move = move_from_string(t.at("move").get<std::string>());
    if (t.contains("next")) row.action.next = t.at("next").get<std::string>();
    row.annotation = opt_string(jr, "annotation");
    row.tape_read_override = opt_string(jr, "tape_read_override");
    row.command_override = opt_string(jr, "command_override");
    f.rows.push_back(std::move(row));
  }
  return f;
}

FixtureDiff diff_against_fixture(const ControllerProgram& program, const TMSpec& spec, const Fixture& fixture) {
  FixtureDiff d;
  auto differ = [&d](const FixtureRow& row, const std::string& what) { d.differences.push_back(row.tm + ": " + what); };
  if (fixture.ruleset != program.ruleset) {
    d.differences.push_back("fixture is for " + to_string(fixture.ruleset) + ", program for " +
                            to_string(program.ruleset));
    return d;
  }
  for (const auto& row : fixture.rows) {
    ++d.rows_compared;
    if (row.annotation) ++d.annotated_rows;
    const Action* spec_action = spec.find(row.key.first, row.key.second);
    if (spec_action == nullptr) {
      differ(row, "no such transition in the machine");
      continue;
    }
    if (row.action.halt) {
      if (!spec_action->halt || spec_action->write != row.action.write) differ(row, "machine does not halt here");
    } else if (spec_action->halt || spec_action->write != row.action.write || spec_action->move != row.action.move ||
               spec_action->next != row.action.next) {
      differ(row, "machine transition differs");
    }

    const int state = program.state_index(row.key.first);
    if (state != row.game_state) {
      differ(row, "state index " + std::to_string(state) + ", table says " + std::to_string(row.game_state));
    }
    const TapeMark read = program.mark_of(row.key.second);
    const std::string label = read_label(program.ruleset, read);
    if (label != row.tape_read_override.value_or(row.tape_read)) {
      differ(row, "tape read \"" + label + "\", table says \"" + row.tape_read + "\"");
    }
    const CommandMacro* macro = program.find(state, read);
    if (macro == nullptr) {
      differ(row, "no compiled macro");
      continue;
    }
    const std::string text = describe_macro(program.ruleset, read, *macro);
    const std::string& expected = row.command_override.value_or(row.command);
    if (text != expected) differ(row, "command \"" + text + "\", table says \"" + expected + "\"");
  }
  if (d.rows_compared != spec.transitions.size()) {
    d.differences.push_back("table has " + std::to_string(d.rows_compared) + " rows, machine has " +
                            std::to_string(spec.transitions.size()) + " transitions");
  }
  return d;
}

}  // namespace civtm
