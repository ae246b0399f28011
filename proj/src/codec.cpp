#include "civtm/codec.hpp"

#include "civtm/errors.hpp"

namespace civtm {

namespace {

TapeMark mark_of_hex(const Hex& h) {
  if (h.worked) return TapeMark::Worked;
  switch (h.improvement) {
    case Improvement::None: return TapeMark::Blank;
    case Improvement::Road: return TapeMark::Road;
    case Improvement::PillagedRoad: return TapeMark::PillagedRoad;
    case Improvement::Railroad: return TapeMark::Railroad;
  }
  return TapeMark::Blank;
}

int decode_state_index(const WorldState& w, StateEvidence& ev) {
  const auto& p = w.params;
  const Yields y = yields(w);
  switch (w.ruleset()) {
    case Ruleset::BE: {
      ev.yield_delta = y.culture - w.state_region.base_yield;
      ev.count = w.state_region.terrascapes();
      if (p.terrascape_culture == 0) return ev.count;
      if (ev.yield_delta % p.terrascape_culture != 0) {
        throw DecodeError("Culture delta " + std::to_string(ev.yield_delta) + " is not a multiple of " +
                          std::to_string(p.terrascape_culture));
      }
      const auto index = static_cast<int>(ev.yield_delta / p.terrascape_culture);
      if (index != ev.count) throw DecodeError("Culture-based state disagrees with Terrascape count");
      return index;
    }
    case Ruleset::V:
      ev.count = w.state_region.railroads();
      return ev.count;
    case Ruleset::VI: {
      ev.yield_delta = y.faith - w.state_region.base_yield;
      ev.count = w.state_region.worked(Building::Monastery);
      if (p.monastery_faith == 0) return ev.count;
      if (ev.yield_delta % p.monastery_faith != 0) {
        throw DecodeError("Faith delta " + std::to_string(ev.yield_delta) + " is not a multiple of " +
                          std::to_string(p.monastery_faith));
      }
      const auto index = static_cast<int>(ev.yield_delta / p.monastery_faith);
      if (index != ev.count) throw DecodeError("Faith-based state disagrees with worked Monastery count");
      return index;
    }
  }
  return 0;
}

}  // namespace

std::int64_t head_tape_index(const WorldState& world) {
  const Unit& worker = world.tape_worker();
  if (world.ruleset() != Ruleset::VI) return worker.position;
  auto k = vi_tape_index_of_hex(worker.position, world.params);
  if (!k || world.city_at(vi_city_center(vi_city_slot(*k), world.params)) == nullptr) {
    throw DecodeError("tape worker at hex " + std::to_string(worker.position) + " is not on a City tape cell");
  }
  return *k;
}

TapeMark mark_under_head(const WorldState& world) {
  return mark_of_hex(world.hex_at(world.tape_worker().position));
}

DecodedConfig decode(const WorldState& world, const ControllerProgram& program) {
  DecodedConfig out;
  out.boundary = world.idle();
  const int index = decode_state_index(world, out.state_evidence);
  if (!out.boundary) return out;
  if (index < 0 || static_cast<std::size_t>(index) >= program.states.size()) {
    throw DecodeError("state index " + std::to_string(index) + " out of range");
  }
  if (world.ruleset() == Ruleset::BE) {
    auto rover = world.find_unit(UnitKind::Rover);
    if (!rover || world.unit(*rover).position != world.tape_worker().position) {
      throw DecodeError("Rover is not with the tape worker");
    }
  }
  TMConfig config;
  config.state = program.states[static_cast<std::size_t>(index)];
  config.head = head_tape_index(world);
  const Symbol& blank = program.symbols.front();
  for (const auto& [hex, h] : world.tape) {
    const TapeMark m = mark_of_hex(h);
    if (m == TapeMark::Blank) continue;
    std::int64_t cell = hex;
    if (world.ruleset() == Ruleset::VI) {
      auto k = vi_tape_index_of_hex(hex, world.params);
      if (!k) throw DecodeError("worked hex " + std::to_string(hex) + " is not a tape cell");
      cell = *k;
    }
    config.write(cell, program.symbol_of(m), blank);
  }
  out.config = std::move(config);
  return out;
}

std::map<std::int64_t, TapeMark> encode_tape(const std::map<CellIndex, Symbol>& tape, const ControllerProgram& program) {
  std::map<std::int64_t, TapeMark> out;
  for (const auto& [i, s] : tape) {
    const TapeMark m = program.mark_of(s);
    if (m != TapeMark::Blank) out[i] = m;
  }
  return out;
}

}  // namespace civtm
