#include <gtest/gtest.h>

#include "civtm/codec.hpp"
#include "civtm/errors.hpp"
#include "civtm/harness.hpp"

using namespace civtm;

namespace {

ControllerProgram r10(Ruleset r) { return compile(builtin_program("rogozhin_10_3"), r); }

}  // namespace

TEST(Decode, BECultureSeven) {
  const auto p = r10(Ruleset::BE);
  WorldState w = init_world({}, default_params(Ruleset::BE));
  w.state_region.tiles[3].terrascape = true;
  w.state_region.tiles[7].terrascape = true;
  ASSERT_EQ(yields(w).culture, 7);
  const DecodedConfig d = decode(w, p);
  ASSERT_TRUE(d.config);
  EXPECT_EQ(d.config->state, "q2");
  EXPECT_EQ(d.state_evidence.yield_delta, 6);
  EXPECT_EQ(d.state_evidence.count, 2);
}

TEST(Decode, VRailroadCount) {
  const auto p = r10(Ruleset::V);
  WorldState w = init_world({}, default_params(Ruleset::V));
  w.state_region.tiles[0].railroad = true;
  w.state_region.tiles[1].railroad = true;
  EXPECT_EQ(decode(w, p).config->state, "q2");
}

TEST(Decode, FreshWorldIsInitialConfig) {
  for (Ruleset r : {Ruleset::BE, Ruleset::V, Ruleset::VI}) {
    const TMSpec spec = builtin_program(r == Ruleset::VI ? "rogozhin_24_2" : "rogozhin_10_3");
    const auto p = compile(spec, r);
    const DecodedConfig d = decode(init_world({}, default_params(r)), p);
    ASSERT_TRUE(d.boundary);
    EXPECT_EQ(*d.config, initial_config(spec));
  }
}

TEST(Decode, NotBoundaryCarriesNoConfig) {
  const auto p = r10(Ruleset::BE);
  WorldState w = init_world({}, default_params(Ruleset::BE));
  w = apply_command(std::move(w), w.tape_worker().id, Command::build_road());
  const DecodedConfig d = decode(w, p);
  EXPECT_FALSE(d.boundary);
  EXPECT_FALSE(d.config);
}

TEST(Decode, Corruption) {
  const auto p = r10(Ruleset::BE);
  WorldState x = init_world({}, default_params(Ruleset::BE));
  for (auto& t : x.state_region.tiles) t.terrascape = true;  // index 9 of 0..9 is fine
  EXPECT_NO_THROW(decode(x, p));
  x.params.state_region_tiles = 12;
  x.state_region.tiles.push_back({9, true});
  x.state_region.tiles.push_back({10, true});
  EXPECT_THROW(decode(x, p), DecodeError);

  WorldState y = init_world({}, default_params(Ruleset::BE));
  y.unit(*y.find_unit(UnitKind::Rover)).position = 4;
  EXPECT_THROW(decode(y, p), DecodeError);
}

TEST(Decode, IsReadOnly) {
  const auto p = r10(Ruleset::V);
  const WorldState w = init_world({{0, TapeMark::Road}, {-2, TapeMark::Railroad}}, default_params(Ruleset::V));
  const WorldState copy = w;
  (void)decode(w, p);
  EXPECT_EQ(w, copy);
}

TEST(EncodeTape, Examples) {
  const auto be = compile(builtin_program("bb3"), Ruleset::BE);
  EXPECT_TRUE(encode_tape({}, be).empty());
  const auto enc = encode_tape({{0, "1"}, {2, "1"}}, be);
  EXPECT_EQ(enc, (std::map<std::int64_t, TapeMark>{{0, TapeMark::Road}, {2, TapeMark::Road}}));
  const WorldState w = init_world(enc, default_params(Ruleset::BE));
  EXPECT_EQ(w.hex_at(0).improvement, Improvement::Road);
  EXPECT_EQ(w.hex_at(1).improvement, Improvement::None);
  EXPECT_EQ(w.hex_at(2).improvement, Improvement::Road);

  const auto vi = compile(builtin_program("bb3"), Ruleset::VI);
  const WorldState v = init_world(encode_tape({{0, "1"}}, vi), default_params(Ruleset::VI));
  EXPECT_TRUE(v.hex_at(v.cities[0].cell_hex(0)).worked);
  EXPECT_FALSE(v.hex_at(v.cities[0].cell_hex(1)).worked);
}

TEST(EncodeTape, IllegalSymbol) {
  const auto be = compile(builtin_program("bb3"), Ruleset::BE);
  EXPECT_THROW(encode_tape({{0, "7"}}, be), Error);
}

TEST(RoundTrip, HundredRandomTapesPerRuleset) {
  for (Ruleset r : {Ruleset::BE, Ruleset::V, Ruleset::VI}) {
    const int symbols = r == Ruleset::VI ? 2 : 3;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const TMSpec spec = random_tm(seed, 4, symbols);
      const auto p = compile(spec, r);
      const auto tape = random_tape(seed * 7919, spec, 10);
      const DecodedConfig d = decode(init_world(encode_tape(tape, p), default_params(r)), p);
      ASSERT_TRUE(d.config);
      ASSERT_EQ(*d.config, initial_config(spec, tape)) << to_string(r) << " seed " << seed;
    }
  }
}
