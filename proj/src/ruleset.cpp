#include "civtm/ruleset.hpp"

#include <fstream>

#include "civtm/errors.hpp"

namespace civtm {

std::string to_string(Ruleset r) {
  switch (r) {
    case Ruleset::BE: return "BE";
    case Ruleset::V: return "V";
    case Ruleset::VI: return "VI";
  }
  return "?";
}

Ruleset ruleset_from_string(const std::string& s) {
  if (s == "BE") return Ruleset::BE;
  if (s == "V") return Ruleset::V;
  if (s == "VI") return Ruleset::VI;
  throw SpecError("unknown ruleset \"" + s + "\" (expected BE, V or VI)");
}

RulesetParams default_params(Ruleset r) {
  RulesetParams p;
  p.ruleset = r;
  return p;
}

void validate_params(const RulesetParams& p) {
  auto positive = [](int v, const char* name) {
    if (v < 1) throw SpecError(std::string(name) + " must be >= 1");
  };
  auto non_negative = [](int v, const char* name) {
    if (v < 0) throw SpecError(std::string(name) + " must be >= 0");
  };
  positive(p.road_build_turns, "road_build_turns");
  positive(p.terrascape_build_turns, "terrascape_build_turns");
  positive(p.railroad_build_turns, "railroad_build_turns");
  if (p.railroad_build_turns <= 1) throw SpecError("railroad_build_turns must be > 1");
  if (p.remove_or_repair_turns != 1) throw SpecError("remove_or_repair_turns is fixed at 1");
  positive(p.worker_move_turns_per_hex, "worker_move_turns_per_hex");
  positive(p.city_growth_turns, "city_growth_turns");
  positive(p.settler_found_turns, "settler_found_turns");
  positive(p.production_per_turn, "production_per_turn");
  positive(p.state_region_tiles, "state_region_tiles");
  if (p.city_spacing < 3) throw SpecError("city_spacing must be >= 3");
  non_negative(p.terrascape_culture, "terrascape_culture");
  non_negative(p.base_culture, "base_culture");
  non_negative(p.monastery_faith, "monastery_faith");
  non_negative(p.base_faith, "base_faith");
  non_negative(p.citizen_food_upkeep, "citizen_food_upkeep");
  non_negative(p.city_base_food, "city_base_food");
  non_negative(p.grassland_food, "grassland_food");
  non_negative(p.floodplains_food, "floodplains_food");
}

namespace {

// Single table of (name, member) keeps the JSON reader and writer in sync.
struct Field {
  const char* name;
  int RulesetParams::*member;
};

constexpr Field kFields[] = {
    {"road_build_turns", &RulesetParams::road_build_turns},
    {"terrascape_build_turns", &RulesetParams::terrascape_build_turns},
    {"railroad_build_turns", &RulesetParams::railroad_build_turns},
    {"remove_or_repair_turns", &RulesetParams::remove_or_repair_turns},
    {"worker_move_turns_per_hex", &RulesetParams::worker_move_turns_per_hex},
    {"terrascape_culture", &RulesetParams::terrascape_culture},
    {"base_culture", &RulesetParams::base_culture},
    {"state_region_tiles", &RulesetParams::state_region_tiles},
    {"monastery_faith", &RulesetParams::monastery_faith},
    {"base_faith", &RulesetParams::base_faith},
    {"citizen_food_upkeep", &RulesetParams::citizen_food_upkeep},
    {"city_base_food", &RulesetParams::city_base_food},
    {"grassland_food", &RulesetParams::grassland_food},
    {"floodplains_food", &RulesetParams::floodplains_food},
    {"city_growth_turns", &RulesetParams::city_growth_turns},
    {"settler_found_turns", &RulesetParams::settler_found_turns},
    {"city_spacing", &RulesetParams::city_spacing},
    {"production_per_turn", &RulesetParams::production_per_turn},
};

}  // namespace

nlohmann::json params_to_json(const RulesetParams& p) {
  nlohmann::json j = {{"format_version", 1}, {"ruleset", to_string(p.ruleset)}};
  for (const auto& f : kFields) j[f.name] = p.*(f.member);
  return j;
}

RulesetParams params_from_json(const nlohmann::json& j, Ruleset ruleset) {
  if (!j.is_object()) throw SpecError("params must be an object");
  RulesetParams p = default_params(ruleset);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key == "format_version") continue;
    if (key == "ruleset") {
      if (ruleset_from_string(it.value().get<std::string>()) != ruleset) {
        throw SpecError("params file is for ruleset " + it.value().get<std::string>());
      }
      continue;
    }
    bool known = false;
    for (const auto& f : kFields) {
      if (key != f.name) continue;
      if (!it.value().is_number_integer()) throw SpecError("param \"" + key + "\" must be an integer");
      p.*(f.member) = it.value().get<int>();
      known = true;
    }
    if (!known) throw SpecError("unknown param \"" + key + "\"");
  }
  validate_params(p);
  return p;
}

RulesetParams load_params_file(const std::string& path, Ruleset ruleset) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(path + ": " + e.what());
  }
  return params_from_json(j, ruleset);
}

}  // namespace civtm
