#include "civtm/world.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "civtm/errors.hpp"

namespace civtm {

std::string to_string(Improvement i) {
  switch (i) {
    case Improvement::None: return "None";
    case Improvement::Road: return "Road";
    case Improvement::PillagedRoad: return "PillagedRoad";
    case Improvement::Railroad: return "Railroad";
  }
  return "?";
}

std::string to_string(TapeMark m) {
  switch (m) {
    case TapeMark::Blank: return "Blank";
    case TapeMark::Road: return "Road";
    case TapeMark::PillagedRoad: return "PillagedRoad";
    case TapeMark::Railroad: return "Railroad";
    case TapeMark::Worked: return "Worked";
  }
  return "?";
}

TapeMark tape_mark_from_string(const std::string& s) {
  for (auto m : {TapeMark::Blank, TapeMark::Road, TapeMark::PillagedRoad, TapeMark::Railroad, TapeMark::Worked}) {
    if (to_string(m) == s) return m;
  }
  throw SpecError("unknown tape mark \"" + s + "\"");
}

bool mark_legal(Ruleset r, TapeMark m) {
  switch (r) {
    case Ruleset::BE: return m == TapeMark::Blank || m == TapeMark::Road || m == TapeMark::PillagedRoad;
    case Ruleset::V: return m == TapeMark::Blank || m == TapeMark::Road || m == TapeMark::Railroad;
    case Ruleset::VI: return m == TapeMark::Blank || m == TapeMark::Worked;
  }
  return false;
}

std::string to_string(UnitKind k) {
  switch (k) {
    case UnitKind::TapeWorker: return "TapeWorker";
    case UnitKind::StateWorker: return "StateWorker";
    case UnitKind::Rover: return "Rover";
    case UnitKind::Settler: return "Settler";
  }
  return "?";
}

std::string to_string(CommandKind k) {
  switch (k) {
    case CommandKind::BuildRoad: return "build_road";
    case CommandKind::BuildRailroad: return "build_railroad";
    case CommandKind::BuildTerrascape: return "build_terrascape";
    case CommandKind::RemoveImprovement: return "remove_improvement";
    case CommandKind::Pillage: return "pillage";
    case CommandKind::Repair: return "repair";
    case CommandKind::Move: return "move";
    case CommandKind::ReassignCitizen: return "reassign_citizen";
    case CommandKind::TrainSettler: return "train_settler";
    case CommandKind::FoundCity: return "found_city";
  }
  return "?";
}

namespace {

std::string slot_name(const CitizenSlot& s) {
  switch (s.kind) {
    case CitizenSlot::Kind::Floodplains: return "floodplains@" + std::to_string(s.where);
    case CitizenSlot::Kind::TapeCell: return "tape@" + std::to_string(s.where);
    case CitizenSlot::Kind::Monastery: return "monastery#" + std::to_string(s.where);
    case CitizenSlot::Kind::Farm: return "farm#" + std::to_string(s.where);
  }
  return "?";
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

}  // namespace

nlohmann::json command_to_json(const Command& c) {
  nlohmann::json j = {{"kind", to_string(c.kind)}};
  if (c.tile) j["tile"] = *c.tile;
  if (c.kind == CommandKind::Move) j["hexes"] = c.hexes;
  if (c.kind == CommandKind::ReassignCitizen) {
    j["from"] = slot_name(c.from);
    j["to"] = slot_name(c.to);
  }
  if (c.city) j["city"] = *c.city;
  return j;
}

// ---------------------------------------------------------------------------
// StateRegion / WorldState accessors

int StateRegion::terrascapes() const {
  return static_cast<int>(std::count_if(tiles.begin(), tiles.end(), [](const StateTile& t) { return t.terrascape; }));
}

int StateRegion::railroads() const {
  return static_cast<int>(std::count_if(tiles.begin(), tiles.end(), [](const StateTile& t) { return t.railroad; }));
}

int StateRegion::worked(Building b) const {
  return static_cast<int>(
      std::count_if(tiles.begin(), tiles.end(), [b](const StateTile& t) { return t.building == b && t.worked; }));
}

int StateRegion::count(Building b) const {
  return static_cast<int>(std::count_if(tiles.begin(), tiles.end(), [b](const StateTile& t) { return t.building == b; }));
}

const Unit& WorldState::unit(UnitId id) const {
  for (const auto& u : units) {
    if (u.id == id) return u;
  }
  throw IllegalCommand("no unit with id " + std::to_string(id));
}

Unit& WorldState::unit(UnitId id) {
  return const_cast<Unit&>(std::as_const(*this).unit(id));
}

const Unit& WorldState::tape_worker() const {
  auto id = find_unit(UnitKind::TapeWorker);
  if (!id) throw InvariantViolation("world has no tape worker");
  return unit(*id);
}

std::optional<UnitId> WorldState::find_unit(UnitKind k) const {
  for (const auto& u : units) {
    if (u.kind == k) return u.id;
  }
  return std::nullopt;
}

Hex WorldState::hex_at(HexIndex i) const {
  auto it = tape.find(i);
  if (it != tape.end()) return it->second;
  return Hex{i, Improvement::None, false, ruleset() == Ruleset::VI ? Terrain::Grassland : Terrain::Flat};
}

const City* WorldState::city_at(HexIndex center) const {
  for (const auto& c : cities) {
    if (c.center == center) return &c;
  }
  return nullptr;
}

City* WorldState::city_at(HexIndex center) { return const_cast<City*>(std::as_const(*this).city_at(center)); }

bool WorldState::idle() const {
  for (const auto& u : units) {
    if (u.busy()) return false;
  }
  for (const auto& c : cities) {
    if (c.training) return false;
  }
  return true;
}

void WorldState::log(UnitId u, std::string command, nlohmann::json detail) {
  event_log.push_back(Event{turn, u, std::move(command), std::move(detail)});
}

// ---------------------------------------------------------------------------
// VI tape geometry

std::int64_t vi_city_slot(std::int64_t tape_index) { return floor_div(tape_index, 2); }

HexIndex vi_city_center(std::int64_t slot, const RulesetParams& p) { return slot * p.city_spacing; }

HexIndex vi_cell_hex(std::int64_t tape_index, const RulesetParams& p) {
  const HexIndex center = vi_city_center(vi_city_slot(tape_index), p);
  return floor_mod(tape_index, 2) == 0 ? center - 1 : center + 1;
}

std::optional<std::int64_t> vi_tape_index_of_hex(HexIndex hex, const RulesetParams& p) {
  const std::int64_t rel = floor_mod(hex, p.city_spacing);
  if (rel == 1) return 2 * floor_div(hex, p.city_spacing) + 1;
  if (rel == p.city_spacing - 1) return 2 * floor_div(hex + 1, p.city_spacing);
  return std::nullopt;
}

int vi_worked_cells(const WorldState& w, const City& c) {
  return static_cast<int>(w.hex_at(c.cell_hex(0)).worked) + static_cast<int>(w.hex_at(c.cell_hex(1)).worked);
}

std::int64_t city_net_food(const WorldState& w, const City& c) {
  const auto& p = w.params;
  const int worked = vi_worked_cells(w, c);
  // Citizens kept off an unworked tape cell farm floodplains; the end-of-tape
  // marker citizen works a tile without Food.
  const int floodplains = std::max(0, std::min(c.citizens - 1, 2) - worked);
  return p.city_base_food + static_cast<std::int64_t>(p.grassland_food) * worked +
         static_cast<std::int64_t>(p.floodplains_food) * floodplains -
         static_cast<std::int64_t>(p.citizen_food_upkeep) * c.citizens;
}

namespace {

void refresh_growth_caps(WorldState& w) {
  const int s = w.params.city_spacing;
  for (auto& c : w.cities) {
    const bool open = w.city_at(c.center - s) == nullptr || w.city_at(c.center + s) == nullptr;
    c.growth_cap = open ? 4 : 3;
  }
}

Unit make_unit(WorldState& w, UnitKind kind, HexIndex pos) {
  return Unit{w.next_unit_id++, kind, pos, 0, std::nullopt};
}

void set_hex(WorldState& w, Hex h) {
  if (h.improvement == Improvement::None && !h.worked) {
    w.tape.erase(h.index);
  } else {
    w.tape[h.index] = h;
  }
}

}  // namespace

WorldState init_world(const std::map<std::int64_t, TapeMark>& initial_tape, const RulesetParams& params) {
  validate_params(params);
  WorldState w;
  w.params = params;
  const Ruleset r = params.ruleset;
  for (const auto& [i, m] : initial_tape) {
    if (!mark_legal(r, m)) {
      throw IllegalCommand("tape mark " + to_string(m) + " at " + std::to_string(i) + " is illegal in ruleset " +
                           to_string(r));
    }
  }

  if (r == Ruleset::VI) {
    std::int64_t lo = 0;
    std::int64_t hi = 1;
    for (const auto& [i, m] : initial_tape) {
      if (m == TapeMark::Blank) continue;
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    }
    const std::int64_t first = vi_city_slot(lo);
    const std::int64_t last = vi_city_slot(hi);
    for (std::int64_t slot = first; slot <= last; ++slot) {
      City c;
      c.center = vi_city_center(slot, params);
      const bool end = slot == first || slot == last;
      c.citizens = end ? 4 : 3;
      w.cities.push_back(c);
    }
    for (const auto& [i, m] : initial_tape) {
      if (m == TapeMark::Worked) set_hex(w, Hex{vi_cell_hex(i, params), Improvement::None, true, Terrain::Grassland});
    }
    refresh_growth_caps(w);
    for (int t = 0; t < 2 * kStateCityTiles; ++t) {
      const bool monastery = t < kStateCityTiles;
      w.state_region.tiles.push_back(StateTile{t, false, false, monastery ? Building::Monastery : Building::Farm, !monastery});
    }
    w.state_region.base_yield = params.base_faith;
    w.units.push_back(make_unit(w, UnitKind::TapeWorker, vi_cell_hex(0, params)));
  } else {
    for (const auto& [i, m] : initial_tape) {
      Hex h{i, Improvement::None, false, Terrain::Flat};
      switch (m) {
        case TapeMark::Road: h.improvement = Improvement::Road; break;
        case TapeMark::PillagedRoad: h.improvement = Improvement::PillagedRoad; break;
        case TapeMark::Railroad: h.improvement = Improvement::Railroad; break;
        default: break;
      }
      set_hex(w, h);
    }
    for (int t = 0; t < params.state_region_tiles; ++t) {
      w.state_region.tiles.push_back(StateTile{t});
    }
    w.state_region.base_yield = r == Ruleset::BE ? params.base_culture : 0;
    w.units.push_back(make_unit(w, UnitKind::TapeWorker, 0));
    w.units.push_back(make_unit(w, UnitKind::StateWorker, 0));
    if (r == Ruleset::BE) w.units.push_back(make_unit(w, UnitKind::Rover, 0));
  }
  w.log(-1, "init", {{"ruleset", to_string(r)}});
  return w;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

[[noreturn]] void illegal(const std::string& why) { throw IllegalCommand("illegal command: " + why); }

StateTile& region_tile(WorldState& w, const Command& c) {
  if (!c.tile) illegal(to_string(c.kind) + " needs a state-region tile");
  for (auto& t : w.state_region.tiles) {
    if (t.index == *c.tile) return t;
  }
  illegal("no state-region tile " + std::to_string(*c.tile));
}

void require_kind(const Unit& u, std::initializer_list<UnitKind> kinds, const Command& c) {
  for (auto k : kinds) {
    if (u.kind == k) return;
  }
  illegal(to_string(u.kind) + " cannot " + to_string(c.kind));
}

void require_ruleset(const WorldState& w, std::initializer_list<Ruleset> rs, const Command& c) {
  for (auto r : rs) {
    if (w.ruleset() == r) return;
  }
  illegal(to_string(c.kind) + " is not available in ruleset " + to_string(w.ruleset()));
}

// Duration of a unit job, after checking that it is legal right now.
Turn check_unit_command(WorldState& w, const Unit& u, const Command& c) {
  const auto& p = w.params;
  const Ruleset r = w.ruleset();
  const bool on_region = c.tile.has_value();
  switch (c.kind) {
    case CommandKind::BuildRoad: {
      require_ruleset(w, {Ruleset::BE, Ruleset::V}, c);
      require_kind(u, {UnitKind::TapeWorker}, c);
      const Hex h = w.hex_at(u.position);
      if (h.improvement == Improvement::Road) illegal("cannot build a Road on an existing Road");
      if (h.improvement == Improvement::Railroad) illegal("the Railroad must be removed before building a Road");
      if (h.improvement == Improvement::PillagedRoad) illegal("a Pillaged Road is repaired, not rebuilt");
      return p.road_build_turns;
    }
    case CommandKind::BuildRailroad: {
      require_ruleset(w, {Ruleset::V}, c);
      if (on_region) {
        require_kind(u, {UnitKind::StateWorker}, c);
        if (region_tile(w, c).railroad) illegal("state tile already holds a Railroad");
      } else {
        require_kind(u, {UnitKind::TapeWorker}, c);
        if (w.hex_at(u.position).improvement == Improvement::Railroad) illegal("hex already holds a Railroad");
      }
      return p.railroad_build_turns;
    }
    case CommandKind::BuildTerrascape: {
      require_ruleset(w, {Ruleset::BE}, c);
      require_kind(u, {UnitKind::StateWorker}, c);
      if (region_tile(w, c).terrascape) illegal("state tile already holds a Terrascape");
      return p.terrascape_build_turns;
    }
    case CommandKind::RemoveImprovement: {
      require_ruleset(w, {Ruleset::BE, Ruleset::V}, c);
      if (on_region) {
        require_kind(u, {UnitKind::StateWorker}, c);
        const StateTile& t = region_tile(w, c);
        if (r == Ruleset::BE ? !t.terrascape : !t.railroad) illegal("state tile has nothing to remove");
      } else {
        require_kind(u, {UnitKind::TapeWorker}, c);
        if (w.hex_at(u.position).improvement == Improvement::None) illegal("hex has no improvement to remove");
      }
      return p.remove_or_repair_turns;
    }
    case CommandKind::Pillage: {
      require_ruleset(w, {Ruleset::BE}, c);
      require_kind(u, {UnitKind::Rover}, c);
      if (w.hex_at(u.position).improvement != Improvement::Road) illegal("only a Road can be pillaged");
      return p.remove_or_repair_turns;
    }
    case CommandKind::Repair: {
      require_ruleset(w, {Ruleset::BE}, c);
      require_kind(u, {UnitKind::TapeWorker}, c);
      if (w.hex_at(u.position).improvement != Improvement::PillagedRoad) illegal("only a Pillaged Road can be repaired");
      return p.remove_or_repair_turns;
    }
    case CommandKind::Move: {
      require_kind(u, {UnitKind::TapeWorker, UnitKind::Rover, UnitKind::Settler}, c);
      if (c.hexes == 0) illegal("move of zero hexes");
      return std::llabs(c.hexes) * p.worker_move_turns_per_hex;
    }
    case CommandKind::FoundCity: {
      require_ruleset(w, {Ruleset::VI}, c);
      require_kind(u, {UnitKind::Settler}, c);
      const HexIndex at = u.position;
      const int s = p.city_spacing;
      for (const auto& city : w.cities) {
        if (std::llabs(city.center - at) < s) illegal("cannot found a City closer than " + std::to_string(s) + " hexes");
      }
      if (floor_mod(at, s) != 0) illegal("City centre off the tape grid");
      if (w.city_at(at - s) == nullptr && w.city_at(at + s) == nullptr) {
        illegal("new City must border an existing tape City");
      }
      return p.settler_found_turns;
    }
    case CommandKind::ReassignCitizen:
    case CommandKind::TrainSettler:
      illegal(to_string(c.kind) + " is a player command, not a unit command");
  }
  illegal("unknown command");
}

void reassign(WorldState& w, const Command& c) {
  using K = CitizenSlot::Kind;
  const auto& from = c.from;
  const auto& to = c.to;
  auto tile = [&](int index, Building b) -> StateTile& {
    for (auto& t : w.state_region.tiles) {
      if (t.index == index && t.building == b) return t;
    }
    illegal("no " + std::string(b == Building::Monastery ? "Monastery" : "Farm") + " tile " + std::to_string(index));
  };
  auto owning_city = [&](HexIndex hex) -> City& {
    for (auto& city : w.cities) {
      if (city.cell_hex(0) == hex || city.cell_hex(1) == hex) return city;
    }
    illegal("tape hex " + std::to_string(hex) + " is not owned by any City");
  };

  if (from.kind == K::Floodplains && to.kind == K::TapeCell) {
    City& city = owning_city(to.where);
    if (city.center != from.where) illegal("citizen can only work tiles of its own City");
    Hex h = w.hex_at(to.where);
    if (h.worked) illegal("tape cell already worked");
    if (city.citizens - 1 - vi_worked_cells(w, city) < 1) illegal("City has no free Citizen");
    h.worked = true;
    set_hex(w, h);
  } else if (from.kind == K::TapeCell && to.kind == K::Floodplains) {
    City& city = owning_city(from.where);
    if (city.center != to.where) illegal("citizen can only work tiles of its own City");
    Hex h = w.hex_at(from.where);
    if (!h.worked) illegal("tape cell is not worked");
    h.worked = false;
    set_hex(w, h);
  } else if ((from.kind == K::Farm && to.kind == K::Monastery) || (from.kind == K::Monastery && to.kind == K::Farm)) {
    StateTile& src = tile(static_cast<int>(from.where), from.kind == K::Farm ? Building::Farm : Building::Monastery);
    StateTile& dst = tile(static_cast<int>(to.where), to.kind == K::Farm ? Building::Farm : Building::Monastery);
    if (!src.worked) illegal("source tile is not worked");
    if (dst.worked) illegal("target tile is already worked");
    src.worked = false;
    dst.worked = true;
  } else {
    illegal("tile " + slot_name(to) + " is not owned by the City of " + slot_name(from));
  }
}

void train(WorldState& w, const Command& c) {
  if (!c.city) illegal("train_settler needs a City");
  City* city = w.city_at(*c.city);
  if (city == nullptr) illegal("no City at " + std::to_string(*c.city));
  if (city->training) illegal("City is already training a Settler");
  if (city->citizens <= 1) illegal("no Settlers can be trained if the City has only one citizen");
  city->training = true;
  city->production_stock = 0;
  city->settler_cost = RulesetParams::settler_cost(2 * static_cast<std::int64_t>(w.cities.size()));
}

}  // namespace

WorldState apply_command(WorldState world, std::optional<UnitId> unit_id, const Command& command) {
  if (!unit_id) {
    if (world.ruleset() != Ruleset::VI) illegal(to_string(command.kind) + " is not available in ruleset " + to_string(world.ruleset()));
    if (command.kind == CommandKind::ReassignCitizen) {
      reassign(world, command);
    } else if (command.kind == CommandKind::TrainSettler) {
      train(world, command);
    } else {
      illegal(to_string(command.kind) + " needs a unit");
    }
    world.log(-1, to_string(command.kind), command_to_json(command));
    return world;
  }
  Unit& u = world.unit(*unit_id);
  if (u.busy()) illegal(to_string(u.kind) + " " + std::to_string(u.id) + " is busy");
  const Turn duration = check_unit_command(world, u, command);
  u.job = command;
  u.busy_until = world.turn + duration;
  world.log(u.id, to_string(command.kind), command_to_json(command));
  return world;
}

// ---------------------------------------------------------------------------
// Turn advancement

namespace {

void complete_job(WorldState& w, Unit& u, std::vector<UnitId>& consumed) {
  const Command c = *u.job;
  u.job.reset();
  const Ruleset r = w.ruleset();
  switch (c.kind) {
    case CommandKind::BuildRoad:
    case CommandKind::Repair: {
      Hex h = w.hex_at(u.position);
      h.improvement = Improvement::Road;
      set_hex(w, h);
      break;
    }
    case CommandKind::Pillage: {
      Hex h = w.hex_at(u.position);
      h.improvement = Improvement::PillagedRoad;
      set_hex(w, h);
      break;
    }
    case CommandKind::BuildRailroad:
      if (c.tile) {
        region_tile(w, c).railroad = true;
      } else {
        Hex h = w.hex_at(u.position);
        h.improvement = Improvement::Railroad;
        set_hex(w, h);
      }
      break;
    case CommandKind::BuildTerrascape: region_tile(w, c).terrascape = true; break;
    case CommandKind::RemoveImprovement:
      if (c.tile) {
        StateTile& t = region_tile(w, c);
        (r == Ruleset::BE ? t.terrascape : t.railroad) = false;
      } else {
        Hex h = w.hex_at(u.position);
        h.improvement = Improvement::None;
        set_hex(w, h);
      }
      break;
    case CommandKind::Move: u.position += c.hexes; break;
    case CommandKind::FoundCity: {
      City city;
      city.center = u.position;
      city.citizens = 2;
      auto pos = std::lower_bound(w.cities.begin(), w.cities.end(), city.center,
                                  [](const City& a, HexIndex x) { return a.center < x; });
      w.cities.insert(pos, city);
      refresh_growth_caps(w);
      consumed.push_back(u.id);
      break;
    }
    case CommandKind::ReassignCitizen:
    case CommandKind::TrainSettler: break;
  }
  nlohmann::json detail = command_to_json(c);
  detail["position"] = u.position;
  w.log(u.id, "complete:" + to_string(c.kind), std::move(detail));
}

void advance_cities(WorldState& w) {
  const auto& p = w.params;
  std::vector<Unit> spawned;
  for (auto& city : w.cities) {
    city.food_stock += city_net_food(w, city);
    if (city.food_stock < 0) {
      throw InvariantViolation("starvation: City at " + std::to_string(city.center) + " has food_stock " +
                               std::to_string(city.food_stock));
    }
    if (city.citizens < city.growth_cap) {
      if (++city.growth_clock >= p.city_growth_turns) {
        ++city.citizens;
        city.growth_clock = 0;
        w.log(-1, "city_growth", {{"city", city.center}, {"citizens", city.citizens}});
      }
    } else {
      city.growth_clock = 0;
    }
    if (city.training) {
      city.production_stock += p.production_per_turn;
      // A Settler leaves only from a City at its cap, so a tape cell never loses its Citizen.
      if (city.production_stock >= city.settler_cost && city.citizens == city.growth_cap) {
        if (city.citizens - 2 - vi_worked_cells(w, city) < 0) {
          throw InvariantViolation("Settler would strip a worked tape cell in City at " + std::to_string(city.center));
        }
        city.production_stock -= city.settler_cost;
        city.training = false;
        --city.citizens;
        city.growth_clock = 0;
        spawned.push_back(Unit{0, UnitKind::Settler, city.center, 0, std::nullopt});
        w.log(-1, "settler_trained", {{"city", city.center}, {"cost", city.settler_cost}});
      }
    }
  }
  for (auto& u : spawned) {
    u.id = w.next_unit_id++;
    w.units.push_back(u);
  }
}

}  // namespace

WorldState advance_turn(WorldState world) {
  ++world.turn;
  std::vector<UnitId> consumed;
  for (auto& u : world.units) {
    if (u.job && u.busy_until <= world.turn) complete_job(world, u, consumed);
  }
  std::erase_if(world.units, [&](const Unit& u) {
    return std::find(consumed.begin(), consumed.end(), u.id) != consumed.end();
  });
  if (world.ruleset() == Ruleset::VI) advance_cities(world);
  return world;
}

Yields yields(const WorldState& world) {
  Yields y;
  const auto& p = world.params;
  const auto& region = world.state_region;
  switch (world.ruleset()) {
    case Ruleset::BE: y.culture = region.base_yield + static_cast<std::int64_t>(p.terrascape_culture) * region.terrascapes(); break;
    case Ruleset::V: break;
    case Ruleset::VI:
      y.faith = region.base_yield + static_cast<std::int64_t>(p.monastery_faith) * region.worked(Building::Monastery);
      for (const auto& c : world.cities) y.city_food[c.center] = city_net_food(world, c);
      break;
  }
  return y;
}

// ---------------------------------------------------------------------------
// Export

nlohmann::json event_to_json(const Event& e) {
  return {{"turn", e.turn}, {"unit", e.unit}, {"command", e.command}, {"detail", e.detail}};
}

std::string event_log_jsonl(const WorldState& world) {
  std::ostringstream out;
  out << nlohmann::json{{"format_version", 1}, {"kind", "event_log"}}.dump() << '\n';
  for (const auto& e : world.event_log) out << event_to_json(e).dump() << '\n';
  return out.str();
}

nlohmann::json world_to_json(const WorldState& world) {
  nlohmann::json tape = nlohmann::json::array();
  for (const auto& [i, h] : world.tape) {
    tape.push_back({{"index", i}, {"improvement", to_string(h.improvement)}, {"worked", h.worked}});
  }
  nlohmann::json tiles = nlohmann::json::array();
  for (const auto& t : world.state_region.tiles) {
    nlohmann::json jt = {{"index", t.index}};
    switch (world.ruleset()) {
      case Ruleset::BE: jt["terrascape"] = t.terrascape; break;
      case Ruleset::V: jt["railroad"] = t.railroad; break;
      case Ruleset::VI:
        jt["building"] = t.building == Building::Monastery ? "Monastery" : "Farm";
        jt["worked"] = t.worked;
        break;
    }
    tiles.push_back(std::move(jt));
  }
  nlohmann::json units = nlohmann::json::array();
  for (const auto& u : world.units) {
    nlohmann::json ju = {{"id", u.id}, {"kind", to_string(u.kind)}, {"position", u.position}, {"busy_until", u.busy_until}};
    ju["job"] = u.job ? command_to_json(*u.job) : nlohmann::json(nullptr);
    units.push_back(std::move(ju));
  }
  nlohmann::json cities = nlohmann::json::array();
  for (const auto& c : world.cities) {
    cities.push_back({{"center", c.center},
                      {"citizens", c.citizens},
                      {"growth_cap", c.growth_cap},
                      {"food_stock", c.food_stock},
                      {"production_stock", c.production_stock},
                      {"training", c.training},
                      {"tape_cells", {c.cell_hex(0), c.cell_hex(1)}}});
  }
  return {{"format_version", 1},
          {"params", params_to_json(world.params)},
          {"turn", world.turn},
          {"tape", std::move(tape)},
          {"state_region", {{"base_yield", world.state_region.base_yield}, {"tiles", std::move(tiles)}}},
          {"units", std::move(units)},
          {"cities", std::move(cities)}};
}

}  // namespace civtm
