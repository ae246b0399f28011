#include <gtest/gtest.h>

#include <algorithm>

#include "civtm/controller.hpp"
#include "civtm/errors.hpp"

using namespace civtm;

namespace {

// Puts the BE world of rogozhin_10_3 into `state` with `mark` under the head.
WorldState be_world(const ControllerProgram& p, int state, TapeMark mark) {
  std::map<std::int64_t, TapeMark> tape;
  if (mark != TapeMark::Blank) tape[0] = mark;
  WorldState w = init_world(tape, default_params(Ruleset::BE));
  for (int i = 0; i < state; ++i) w.state_region.tiles[static_cast<std::size_t>(i)].terrascape = true;
  (void)p;
  return w;
}

}  // namespace

TEST(ExecuteInstruction, BEState0ReadingRoad) {
  const auto p = compile(builtin_program("rogozhin_10_3"), Ruleset::BE);
  auto [w, rec] = execute_instruction(be_world(p, 0, TapeMark::Road), p);
  EXPECT_EQ(w.hex_at(0).improvement, Improvement::None);
  EXPECT_EQ(w.tape_worker().position, -1);
  EXPECT_EQ(w.unit(*w.find_unit(UnitKind::Rover)).position, -1);
  EXPECT_EQ(w.state_region.terrascapes(), 1);
  EXPECT_EQ(rec.index, 1);
  EXPECT_EQ(rec.state, "q0");
  EXPECT_EQ(rec.read, "1");
  EXPECT_FALSE(rec.halted);
  const RulesetParams& d = w.params;
  EXPECT_EQ(rec.turns(), d.remove_or_repair_turns + d.terrascape_build_turns + d.worker_move_turns_per_hex);
  EXPECT_EQ(decode(w, p).config->state, "q1");
}

TEST(ExecuteInstruction, BEHaltLeavesWorldUnchanged) {
  const auto p = compile(builtin_program("rogozhin_10_3"), Ruleset::BE);
  const WorldState before = be_world(p, 6, TapeMark::Road);
  auto [w, rec] = execute_instruction(before, p);
  EXPECT_TRUE(rec.halted);
  EXPECT_EQ(rec.turns(), 0);
  EXPECT_EQ(w.tape, before.tape);
  EXPECT_EQ(w.state_region, before.state_region);
  EXPECT_EQ(w.units, before.units);
  EXPECT_GT(w.event_log.size(), before.event_log.size());
}

TEST(ExecuteInstruction, BETurnsWithinBound) {
  const auto p = compile(builtin_program("rogozhin_10_3"), Ruleset::BE);
  const RulesetParams d = default_params(Ruleset::BE);
  for (const auto& [key, m] : p.macros) {
    auto [w, rec] = execute_instruction(be_world(p, key.first, key.second), p);
    EXPECT_LE(rec.turns(), 5 * d.terrascape_build_turns + d.road_build_turns + 1 + d.worker_move_turns_per_hex);
    EXPECT_EQ(decode(w, p).config->state, p.states[static_cast<std::size_t>(key.first + m.state_action)]);
  }
}

TEST(ExecuteInstruction, VRoadOverRailroad) {
  const auto p = compile(builtin_program("rogozhin_10_3"), Ruleset::V);
  WorldState w = init_world({{0, TapeMark::Railroad}}, default_params(Ruleset::V));
  for (int i = 0; i < 3; ++i) w.state_region.tiles[static_cast<std::size_t>(i)].railroad = true;
  auto [after, rec] = execute_instruction(w, p);
  EXPECT_EQ(after.hex_at(0).improvement, Improvement::Road);
  EXPECT_EQ(rec.turns(), 1 + w.params.road_build_turns + w.params.worker_move_turns_per_hex);
}

TEST(ExecuteInstruction, Stuck) {
  TMSpec s = builtin_program("bb3");
  s.transitions.erase({"q0", "0"});
  const auto p = compile(s, Ruleset::BE);
  try {
    execute_instruction(init_world({}, default_params(Ruleset::BE)), p);
    FAIL();
  } catch (const StuckError& e) {
    EXPECT_NE(std::string(e.what()).find("machine stuck"), std::string::npos);
  }
}

TEST(ExecuteInstruction, IllegalCommandSurfaces) {
  auto p = compile(builtin_program("bb3"), Ruleset::BE);
  // Corrupt: claim to build a Road while a Road is under the head.
  p.macros[{0, TapeMark::Road}].tape_action = TapeAction::BuildRoad;
  EXPECT_THROW(execute_instruction(init_world({{0, TapeMark::Road}}, default_params(Ruleset::BE)), p), IllegalCommand);
}

TEST(ExtendTape, RelocatesWhenNextCityExists) {
  const RulesetParams prm = default_params(Ruleset::VI);
  WorldState w = init_world({{4, TapeMark::Worked}}, prm);
  ASSERT_EQ(w.cities.size(), 3u);
  EXPECT_EQ(w.cities[1].citizens, 3);
  w.unit(w.tape_worker().id).position = vi_cell_hex(3, prm);
  EXPECT_FALSE(needs_settler(w, Move::R));
  ExtensionOutcome out = extend_tape(w, Move::R);
  EXPECT_FALSE(out.trained_settler);
  EXPECT_EQ(head_tape_index(out.world), 4);
  EXPECT_EQ(out.world.cities.size(), 3u);
}

TEST(ExtendTape, FoundsCityAtRightEnd) {
  const RulesetParams prm = default_params(Ruleset::VI);
  WorldState w = init_world({}, prm);
  w.unit(w.tape_worker().id).position = vi_cell_hex(1, prm);
  EXPECT_TRUE(needs_settler(w, Move::R));
  ExtensionOutcome out = extend_tape(w, Move::R);
  EXPECT_TRUE(out.trained_settler);
  ASSERT_EQ(out.world.cities.size(), 2u);
  EXPECT_EQ(head_tape_index(out.world), 2);
  const City* fresh = out.world.city_at(vi_city_center(1, prm));
  ASSERT_NE(fresh, nullptr);
  EXPECT_GE(fresh->citizens, 3);
  EXPECT_FALSE(out.world.find_unit(UnitKind::Settler).has_value());
}

TEST(ExtendTape, MirrorAtLeftEnd) {
  const RulesetParams prm = default_params(Ruleset::VI);
  WorldState w = init_world({}, prm);
  EXPECT_TRUE(needs_settler(w, Move::L));
  ExtensionOutcome out = extend_tape(w, Move::L);
  EXPECT_TRUE(out.trained_settler);
  EXPECT_EQ(head_tape_index(out.world), -1);
  EXPECT_NE(out.world.city_at(vi_city_center(-1, prm)), nullptr);
}

TEST(ExtendTape, InteriorCityCapIsThree) {
  const RulesetParams prm = default_params(Ruleset::VI);
  WorldState w = init_world({}, prm);
  w.unit(w.tape_worker().id).position = vi_cell_hex(1, prm);
  w = extend_tape(w, Move::R).world;
  w.unit(w.tape_worker().id).position = vi_cell_hex(0, prm);
  w = extend_tape(w, Move::L).world;
  EXPECT_EQ(w.city_at(vi_city_center(0, prm))->growth_cap, 3);
}

TEST(ExtendTape, SingleCitizenIsInvariantViolation) {
  const RulesetParams prm = default_params(Ruleset::VI);
  WorldState w = init_world({}, prm);
  w.cities[0].citizens = 1;
  EXPECT_THROW(extend_tape(w, Move::L), InvariantViolation);
}

TEST(NbSemantics, Variants) {
  const auto p = compile(builtin_program("rogozhin_24_2"), Ruleset::VI);
  const auto b = nb_state_semantics(p, 3, false);
  EXPECT_EQ(b, (std::vector<MacroStep>{MacroStep::ApplyTape, MacroStep::ApplyState, MacroStep::MoveWorker}));
  const auto n = nb_state_semantics(p, 3, true);
  ASSERT_GT(n.size(), b.size());
  EXPECT_TRUE(std::equal(b.begin(), b.end() - 1, n.begin()));
  EXPECT_EQ(b.back(), MacroStep::MoveWorker);
  EXPECT_NE(std::find(n.begin(), n.end(), MacroStep::TrainSettler), n.end());
  EXPECT_NE(std::find(n.begin(), n.end(), MacroStep::FoundCity), n.end());
  EXPECT_EQ(nb_state_label(3, true), "3n");
  EXPECT_EQ(nb_state_label(3, false), "3b");
}

TEST(ExecuteInstruction, VIExtensionRecorded) {
  const auto p = compile(builtin_program("bb3"), Ruleset::VI);
  WorldState w = init_world({}, default_params(Ruleset::VI));
  // q0 reads blank at cell 0: write 1, move R (same city); then q1 reads blank at 1: move L (same city).
  auto [w1, r1] = execute_instruction(w, p);
  EXPECT_FALSE(r1.extension);
  auto [w2, r2] = execute_instruction(w1, p);
  EXPECT_FALSE(r2.extension);
  auto [w3, r3] = execute_instruction(w2, p);  // q0 reads 1 at 0, moves L off the tape
  EXPECT_TRUE(r3.extension);
  EXPECT_EQ(r3.tape_length, 2);
  EXPECT_EQ(w3.cities.size(), 2u);
}
