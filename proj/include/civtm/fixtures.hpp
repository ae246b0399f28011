#pragma once

#include <optional>
#include <string>
#include <vector>

#include "civtm/program.hpp"
#include "civtm/tm.hpp"

namespace civtm {

// One row of a shipped construction table: the game-side wording and the
// machine transition it stands for.
struct FixtureRow {
  int game_state = 0;
  std::string tape_read;
  std::string command;
  std::string tm;
  TransitionKey key;
  Action action;
  std::optional<std::string> annotation;
  // Encoding name to compare against instead of `tape_read`.
  std::optional<std::string> tape_read_override;
  // Wording to compare against instead of `command` (annotated errata).
  std::optional<std::string> command_override;
};

struct Fixture {
  std::string program;
  Ruleset ruleset = Ruleset::BE;
  std::string notes;
  std::vector<FixtureRow> rows;
};

struct FixtureDiff {
  std::size_t rows_compared = 0;
  std::size_t annotated_rows = 0;
  std::vector<std::string> differences;

  bool clean() const { return differences.empty(); }
};

// Shipped fixtures: (rogozhin_10_3, BE), (rogozhin_10_3, V), (rogozhin_24_2, VI).
bool has_fixture(const std::string& program, Ruleset ruleset);
Fixture load_fixture(const std::string& program, Ruleset ruleset);
Fixture fixture_from_json(const nlohmann::json& j);

// Row-by-row comparison of the machine column against `spec` and of the
// command column against the compiled macros.
FixtureDiff diff_against_fixture(const ControllerProgram& program, const TMSpec& spec, const Fixture& fixture);

}  // namespace civtm
