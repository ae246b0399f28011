#pragma once

#include <map>
#include <optional>

#include "civtm/program.hpp"
#include "civtm/tm.hpp"
#include "civtm/world.hpp"

namespace civtm {

// Raw observation the state index was read from.
struct StateEvidence {
  std::int64_t yield_delta = 0;  // Culture (BE) or Faith (VI) over the baseline; 0 for V
  int count = 0;                 // Terrascapes, Railroads or worked Monasteries
};

struct DecodedConfig {
  std::optional<TMConfig> config;  // set only at an instruction boundary
  StateEvidence state_evidence;
  bool boundary = false;
};

// Read-only. Throws DecodeError on a world that no machine configuration
// can explain (fractional yield delta, unknown improvement, stray head).
DecodedConfig decode(const WorldState& world, const ControllerProgram& program);

// Symbol under the tape worker, in world encoding.
TapeMark mark_under_head(const WorldState& world);
std::int64_t head_tape_index(const WorldState& world);

std::map<std::int64_t, TapeMark> encode_tape(const std::map<CellIndex, Symbol>& tape, const ControllerProgram& program);

}  // namespace civtm
