#include <gtest/gtest.h>

#include "civtm/errors.hpp"
#include "civtm/fixtures.hpp"

using namespace civtm;

namespace {

struct Case {
  const char* program;
  Ruleset ruleset;
  std::size_t rows;
  std::size_t annotated;
};

const Case kCases[] = {
    {"rogozhin_10_3", Ruleset::BE, 30, 0},
    {"rogozhin_10_3", Ruleset::V, 30, 1},
    {"rogozhin_24_2", Ruleset::VI, 48, 1},
};

FixtureDiff diff_of(const Fixture& f) {
  const TMSpec spec = builtin_program(f.program);
  return diff_against_fixture(compile(spec, f.ruleset), spec, f);
}

}  // namespace

TEST(Fixtures, Shipped) {
  for (const auto& c : kCases) EXPECT_TRUE(has_fixture(c.program, c.ruleset));
  EXPECT_FALSE(has_fixture("bb3", Ruleset::BE));
  EXPECT_FALSE(has_fixture("rogozhin_24_2", Ruleset::BE));
  EXPECT_THROW(load_fixture("bb3", Ruleset::V), SpecError);
}

TEST(Fixtures, CleanDiffs) {
  for (const auto& c : kCases) {
    const Fixture f = load_fixture(c.program, c.ruleset);
    EXPECT_EQ(f.rows.size(), c.rows);
    const FixtureDiff d = diff_of(f);
    EXPECT_TRUE(d.clean()) << c.program << " " << to_string(c.ruleset) << ": "
                           << (d.differences.empty() ? "" : d.differences.front());
    EXPECT_EQ(d.rows_compared, c.rows);
    EXPECT_EQ(d.annotated_rows, c.annotated);
  }
}

TEST(Fixtures, RowContent) {
  const Fixture f = load_fixture("rogozhin_10_3", Ruleset::BE);
  const FixtureRow& r = f.rows.front();
  EXPECT_EQ(r.game_state, 0);
  EXPECT_EQ(r.key.first, "q0");
  EXPECT_FALSE(r.annotation);
}

TEST(Fixtures, MutatedCommandDetected) {
  Fixture f = load_fixture("rogozhin_10_3", Ruleset::BE);
  f.rows[3].command = "Build a Road and move R; No build";
  f.rows[3].command_override.reset();
  const FixtureDiff d = diff_of(f);
  EXPECT_FALSE(d.clean());
  EXPECT_EQ(d.differences.size(), 1u);
}

TEST(Fixtures, MutatedTransitionDetected) {
  Fixture f = load_fixture("rogozhin_24_2", Ruleset::VI);
  f.rows[0].action.move = f.rows[0].action.move == Move::L ? Move::R : Move::L;
  EXPECT_FALSE(diff_of(f).clean());
}

TEST(Fixtures, MissingRowDetected) {
  Fixture f = load_fixture("rogozhin_10_3", Ruleset::V);
  f.rows.pop_back();
  EXPECT_FALSE(diff_of(f).clean());
}

TEST(Fixtures, WrongGameStateDetected) {
  Fixture f = load_fixture("rogozhin_10_3", Ruleset::V);
  f.rows[5].game_state += 1;
  EXPECT_FALSE(diff_of(f).clean());
}

TEST(Fixtures, BadJsonRejected) {
  EXPECT_THROW(fixture_from_json(nlohmann::json::object()), std::exception);
  EXPECT_THROW(fixture_from_json({{"format_version", 2}, {"program", "x"}, {"ruleset", "BE"}, {"rows", nlohmann::json::array()}}),
               SpecError);
}
