#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace civtm {

enum class Ruleset { BE, V, VI };

std::string to_string(Ruleset r);
Ruleset ruleset_from_string(const std::string& s);

// Number of Monastery tiles (and of Farm tiles) in the VI state region.
inline constexpr int kStateCityTiles = 23;

// Per-game tuning. Defaults are configuration, not measured game values.
struct RulesetParams {
  Ruleset ruleset = Ruleset::BE;

  int road_build_turns = 1;        // M
  int terrascape_build_turns = 3;  // T
  int railroad_build_turns = 2;    // B_rr
  int remove_or_repair_turns = 1;
  int worker_move_turns_per_hex = 1;

  int terrascape_culture = 3;
  int base_culture = 1;  // C_*
  int state_region_tiles = 9;

  int monastery_faith = 2;
  int base_faith = 0;  // F_*
  int citizen_food_upkeep = 2;
  int city_base_food = 4;
  int grassland_food = 2;
  int floodplains_food = 3;
  int city_growth_turns = 10;  // C, turns per extra citizen
  int settler_found_turns = 3;
  int city_spacing = 4;
  int production_per_turn = 5;

  // Settler cost in Production for a tape of `tape_length` cells.
  static std::int64_t settler_cost(std::int64_t tape_length) { return 15 * tape_length + 50; }
  // The same cost expressed in turns of city production.
  std::int64_t settler_turns(std::int64_t tape_length) const {
    return (settler_cost(tape_length) + production_per_turn - 1) / production_per_turn;
  }

  bool operator==(const RulesetParams&) const = default;
};

RulesetParams default_params(Ruleset r);

// Throws SpecError on a non-positive duration, negative yield or B_rr <= 1.
void validate_params(const RulesetParams& p);

nlohmann::json params_to_json(const RulesetParams& p);
// Missing fields keep their defaults for the ruleset; unknown fields are rejected.
RulesetParams params_from_json(const nlohmann::json& j, Ruleset ruleset);
RulesetParams load_params_file(const std::string& path, Ruleset ruleset);

}  // namespace civtm
