#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "civtm/ruleset.hpp"
#include "json.hpp"

namespace civtm {

using HexIndex = std::int64_t;
using Turn = std::int64_t;
using UnitId = int;

enum class Improvement { None, Road, PillagedRoad, Railroad };
enum class Terrain { Flat, Desert, Grassland, Floodplains };

// World-side encoding of one tape cell.
enum class TapeMark { Blank, Road, PillagedRoad, Railroad, Worked };

std::string to_string(Improvement i);
std::string to_string(TapeMark m);
TapeMark tape_mark_from_string(const std::string& s);
bool mark_legal(Ruleset r, TapeMark m);

struct Hex {
  HexIndex index = 0;
  Improvement improvement = Improvement::None;
  bool worked = false;
  Terrain terrain = Terrain::Flat;

  bool operator==(const Hex&) const = default;
};

enum class Building { None, Monastery, Farm };

// State-region tiles live on their own row, so their indices never
// collide with tape hexes.
struct StateTile {
  int index = 0;
  bool terrascape = false;
  bool railroad = false;
  Building building = Building::None;
  bool worked = false;

  bool operator==(const StateTile&) const = default;
};

struct StateRegion {
  std::vector<StateTile> tiles;
  int base_yield = 0;

  int terrascapes() const;
  int railroads() const;
  int worked(Building b) const;
  int count(Building b) const;

  bool operator==(const StateRegion&) const = default;
};

enum class UnitKind { TapeWorker, StateWorker, Rover, Settler };
std::string to_string(UnitKind k);

enum class CommandKind {
  BuildRoad,
  BuildRailroad,
  BuildTerrascape,
  RemoveImprovement,
  Pillage,
  Repair,
  Move,
  ReassignCitizen,
  TrainSettler,
  FoundCity,
};
std::string to_string(CommandKind k);

// Where a VI citizen works.
struct CitizenSlot {
  enum class Kind { Floodplains, TapeCell, Monastery, Farm };
  Kind kind = Kind::Floodplains;
  // Hex for TapeCell, owning city centre for Floodplains, tile index otherwise.
  std::int64_t where = 0;

  bool operator==(const CitizenSlot&) const = default;
};

// A primitive game command. Tape commands act on the issuing unit's hex;
// state-region commands name `tile`.
struct Command {
  CommandKind kind = CommandKind::Move;
  std::optional<int> tile;
  std::int64_t hexes = 0;
  CitizenSlot from;
  CitizenSlot to;
  std::optional<HexIndex> city;

  static Command build_road() { return {CommandKind::BuildRoad}; }
  static Command build_railroad(std::optional<int> tile = {}) { return {CommandKind::BuildRailroad, tile}; }
  static Command build_terrascape(int tile) { return {CommandKind::BuildTerrascape, tile}; }
  static Command remove(std::optional<int> tile = {}) { return {CommandKind::RemoveImprovement, tile}; }
  static Command pillage() { return {CommandKind::Pillage}; }
  static Command repair() { return {CommandKind::Repair}; }
  static Command move(std::int64_t hexes) {
    Command c{CommandKind::Move};
    c.hexes = hexes;
    return c;
  }
  static Command reassign(CitizenSlot from, CitizenSlot to) {
    Command c{CommandKind::ReassignCitizen};
    c.from = from;
    c.to = to;
    return c;
  }
  static Command train_settler(HexIndex city_center) {
    Command c{CommandKind::TrainSettler};
    c.city = city_center;
    return c;
  }
  static Command found_city() { return {CommandKind::FoundCity}; }

  bool operator==(const Command&) const = default;
};

nlohmann::json command_to_json(const Command& c);

struct Unit {
  UnitId id = 0;
  UnitKind kind = UnitKind::TapeWorker;
  HexIndex position = 0;
  Turn busy_until = 0;
  std::optional<Command> job;

  bool busy() const { return job.has_value(); }
  bool operator==(const Unit&) const = default;
};

struct City {
  HexIndex center = 0;
  int citizens = 1;
  int growth_cap = 4;
  std::int64_t food_stock = 0;
  std::int64_t production_stock = 0;
  bool training = false;
  std::int64_t settler_cost = 0;
  int growth_clock = 0;

  HexIndex cell_hex(int cell) const { return cell == 0 ? center - 1 : center + 1; }
  bool operator==(const City&) const = default;
};

struct Event {
  Turn turn = 0;
  UnitId unit = -1;  // -1: player or controller
  std::string command;
  nlohmann::json detail;

  bool operator==(const Event&) const = default;
};

struct WorldState {
  RulesetParams params;
  std::map<HexIndex, Hex> tape;  // only hexes that differ from the default
  StateRegion state_region;
  std::vector<Unit> units;
  std::vector<City> cities;  // sorted by centre
  Turn turn = 0;
  std::vector<Event> event_log;
  UnitId next_unit_id = 0;

  Ruleset ruleset() const { return params.ruleset; }
  const Unit& unit(UnitId id) const;
  Unit& unit(UnitId id);
  const Unit& tape_worker() const;
  std::optional<UnitId> find_unit(UnitKind k) const;
  Hex hex_at(HexIndex i) const;
  const City* city_at(HexIndex center) const;
  City* city_at(HexIndex center);
  // No unit holds a job and no city is training.
  bool idle() const;

  void log(UnitId unit, std::string command, nlohmann::json detail = nlohmann::json::object());

  bool operator==(const WorldState&) const = default;
};

// VI tape geometry: tape cell k belongs to city floor(k/2), cell k mod 2.
std::int64_t vi_city_slot(std::int64_t tape_index);
HexIndex vi_city_center(std::int64_t slot, const RulesetParams& p);
HexIndex vi_cell_hex(std::int64_t tape_index, const RulesetParams& p);
std::optional<std::int64_t> vi_tape_index_of_hex(HexIndex hex, const RulesetParams& p);
int vi_worked_cells(const WorldState& w, const City& c);
// Food per turn net of upkeep.
std::int64_t city_net_food(const WorldState& w, const City& c);

WorldState init_world(const std::map<std::int64_t, TapeMark>& initial_tape, const RulesetParams& params);

// `unit` is empty for player-level commands (citizen reassignment, training).
WorldState apply_command(WorldState world, std::optional<UnitId> unit, const Command& command);

WorldState advance_turn(WorldState world);

struct Yields {
  std::int64_t culture = 0;
  std::int64_t faith = 0;
  std::map<HexIndex, std::int64_t> city_food;  // per city centre, net of upkeep
};

Yields yields(const WorldState& world);

nlohmann::json world_to_json(const WorldState& world);
nlohmann::json event_to_json(const Event& e);
std::string event_log_jsonl(const WorldState& world);

}  // namespace civtm
