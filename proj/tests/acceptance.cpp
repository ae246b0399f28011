// Acceptance checks. Prints one PASS/FAIL line per criterion; exit status is
// the number of failures.
//   acceptance <path-to-civtm> <scratch-dir>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "civtm/codec.hpp"
#include "civtm/fixtures.hpp"
#include "civtm/harness.hpp"

using namespace civtm;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kFixtureDiffSeconds = 1.0;
constexpr std::int64_t kBB3Instructions = 13;
constexpr std::int64_t kBB3FigureInstructions = 11;
constexpr std::int64_t kBB3Ones = 6;
constexpr std::int64_t kR10Instructions = 200;
constexpr std::int64_t kR24Instructions = 100;
constexpr int kRandomMachines = 50;
constexpr int kRandomMaxStates = 8;
constexpr std::int64_t kRandomInstructions = 100;
constexpr int kRoundTripTapes = 100;

using Tape = std::map<CellIndex, Symbol>;

std::vector<Tape> fixed_tapes_r10() {
  return {{},
          {{0, "1"}},
          {{0, "b"}},
          {{0, "1"}, {1, "1"}, {2, "1"}},
          {{-1, "b"}, {0, "1"}, {1, "b"}},
          {{0, "b"}, {1, "b"}, {2, "b"}, {3, "b"}},
          {{-3, "1"}, {3, "1"}},
          {{0, "1"}, {1, "b"}, {2, "1"}, {3, "b"}, {4, "1"}},
          {{-2, "1"}, {-1, "1"}, {0, "b"}},
          {{0, "1"}, {5, "b"}, {-5, "1"}}};
}

std::vector<Tape> fixed_tapes_r24() {
  return {{},
          {{0, "1"}},
          {{1, "1"}},
          {{0, "1"}, {1, "1"}},
          {{-1, "1"}, {0, "1"}, {1, "1"}},
          {{0, "1"}, {2, "1"}, {4, "1"}},
          {{-3, "1"}},
          {{0, "1"}, {1, "1"}, {2, "1"}, {3, "1"}},
          {{-2, "1"}, {2, "1"}},
          {{0, "1"}, {3, "1"}, {5, "1"}, {-4, "1"}}};
}

std::int64_t ones(const TMConfig& c) {
  std::int64_t n = 0;
  for (const auto& [k, s] : c.tape) n += s == "1" ? 1 : 0;
  return n;
}

struct Check {
  int failures = 0;
  void report(int id, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " AC" << id << ": " << detail << std::endl;
    failures += ok ? 0 : 1;
  }
};

bool ac1(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t diffs = 0, rows = 0;
  const std::pair<const char*, Ruleset> cases[] = {
      {"rogozhin_10_3", Ruleset::BE}, {"rogozhin_10_3", Ruleset::V}, {"rogozhin_24_2", Ruleset::VI}};
  for (const auto& [name, r] : cases) {
    const TMSpec spec = builtin_program(name);
    const FixtureDiff d = diff_against_fixture(compile(spec, r), spec, load_fixture(name, r));
    diffs += d.differences.size();
    rows += d.rows_compared;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  detail = std::to_string(rows) + " rows, " + std::to_string(diffs) + " differences, " + std::to_string(secs) + " s";
  return diffs == 0 && rows == 30 + 30 + 48 && secs < kFixtureDiffSeconds;
}

bool ac2(std::string& detail) {
  const LockstepReport r = lockstep_verify(builtin_program("bb3"), Ruleset::BE, {}, 1000, default_params(Ruleset::BE));
  detail = "BE " + to_string(r.outcome) + ", " + std::to_string(r.instructions_verified) + " instructions (figure shows " +
           std::to_string(kBB3FigureInstructions) + "), " + std::to_string(ones(r.final_oracle)) + " ones";
  return r.outcome == LockstepOutcome::Equivalent && r.termination == Termination::Halted &&
         r.instructions_verified == kBB3Instructions && ones(r.final_oracle) == kBB3Ones;
}

bool ac3(std::string& detail) {
  const LockstepReport v = lockstep_verify(builtin_program("bb3"), Ruleset::V, {}, 1000, default_params(Ruleset::V));
  const LockstepReport vi = lockstep_verify(builtin_program("bb3"), Ruleset::VI, {}, 1000, default_params(Ruleset::VI));
  detail = "V " + to_string(v.outcome) + ", VI " + to_string(vi.outcome) + ", VI extensions " +
           std::to_string(vi.extension_events) + ", food checked on " + std::to_string(vi.food_checked_turns) + "/" +
           std::to_string(vi.total_turns) + " turns, min stock " + std::to_string(vi.min_food_stock);
  return v.outcome == LockstepOutcome::Equivalent && v.termination == Termination::Halted &&
         ones(v.final_oracle) == kBB3Ones && vi.outcome == LockstepOutcome::Equivalent &&
         vi.termination == Termination::Halted && ones(vi.final_oracle) == kBB3Ones && vi.extension_events >= 1 &&
         vi.food_checked_turns == vi.total_turns && vi.min_food_stock >= 0;
}

bool ac4(std::string& detail) {
  int runs = 0, ok = 0;
  std::string first_bad;
  auto one = [&](const char* name, Ruleset r, const Tape& t, std::int64_t n) {
    const LockstepReport rep = lockstep_verify(builtin_program(name), r, t, n, default_params(r));
    ++runs;
    const bool good = rep.outcome == LockstepOutcome::Equivalent &&
                      (rep.instructions_verified == n || rep.termination == Termination::Halted);
    ok += good ? 1 : 0;
    if (!good && first_bad.empty()) first_bad = std::string(name) + "/" + to_string(r) + " " + to_string(rep.outcome);
  };
  for (const auto& t : fixed_tapes_r10()) {
    one("rogozhin_10_3", Ruleset::BE, t, kR10Instructions);
    one("rogozhin_10_3", Ruleset::V, t, kR10Instructions);
  }
  for (const auto& t : fixed_tapes_r24()) one("rogozhin_24_2", Ruleset::VI, t, kR24Instructions);
  detail = std::to_string(ok) + "/" + std::to_string(runs) + " equivalent" + (first_bad.empty() ? "" : ", " + first_bad);
  return ok == runs && runs == 30;
}

bool ac5(std::string& detail) {
  std::ostringstream d;
  bool all = true;
  for (Ruleset r : {Ruleset::BE, Ruleset::V, Ruleset::VI}) {
    const int max_symbols = r == Ruleset::VI ? 2 : 3;
    int equivalent = 0, diverged = 0;
    for (int i = 0; i < kRandomMachines; ++i) {
      const auto seed = static_cast<std::uint64_t>(1000 + i);
      const int states = 2 + i % (kRandomMaxStates - 1);
      const int symbols = 2 + i % (max_symbols - 1);
      const TMSpec spec = random_tm(seed, states, symbols);
      const LockstepReport rep =
          lockstep_verify(spec, r, random_tape(seed, spec), kRandomInstructions, default_params(r));
      // Stuck cannot happen: random machines are total.
      equivalent += rep.outcome == LockstepOutcome::Equivalent ? 1 : 0;
      diverged += rep.outcome == LockstepOutcome::Diverged ? 1 : 0;
    }
    d << to_string(r) << " " << equivalent << "/" << kRandomMachines << " ";
    all = all && equivalent == kRandomMachines && diverged == 0;
  }
  detail = d.str() + "equivalent";
  return all;
}

bool ac6(std::string& detail) {
  std::ostringstream d;
  bool all = true;
  int be_excess = 0, runs = 0;
  for (int T = 1; T <= 4; ++T) {
    for (int M = 1; M <= 4; ++M) {
      RulesetParams p = default_params(Ruleset::BE);
      p.terrascape_build_turns = T;
      p.road_build_turns = M;
      for (const auto& t : fixed_tapes_r10()) {
        const LockstepReport rep = lockstep_verify(builtin_program("rogozhin_10_3"), Ruleset::BE, t, 60, p);
        const OverheadReport o = overhead_report(rep.final_world.event_log, p);
        ++runs;
        std::size_t over = 0;
        for (const auto& i : o.per_instruction) {
          all = all && i.turns <= i.derived_bound;
          over += i.job_turns > 5 * T + M ? 1 : 0;
        }
        all = all && rep.outcome == LockstepOutcome::Equivalent && o.derived_bound_satisfied &&
              over == o.excess.size();
        for (const auto& x : o.excess) all = all && !x.cause.empty();
        be_excess += static_cast<int>(o.excess.size());
      }
    }
  }
  d << "BE " << runs << " runs, " << be_excess << " itemized excess; ";
  int v_excess = 0;
  for (int B = 2; B <= 4; ++B) {
    RulesetParams p = default_params(Ruleset::V);
    p.railroad_build_turns = B;
    for (const auto& t : fixed_tapes_r10()) {
      const LockstepReport rep = lockstep_verify(builtin_program("rogozhin_10_3"), Ruleset::V, t, 60, p);
      const OverheadReport o = overhead_report(rep.final_world.event_log, p);
      std::size_t over = 0;
      for (const auto& i : o.per_instruction) over += i.job_turns > 4 * B + 1 ? 1 : 0;
      all = all && rep.outcome == LockstepOutcome::Equivalent && o.derived_bound_satisfied && over == o.excess.size();
      v_excess += static_cast<int>(o.excess.size());
    }
  }
  d << "V " << v_excess << " itemized excess; ";
  int ext = 0;
  Turn worst = 0, worst_bound = 0;
  std::optional<Turn> slack;
  bool vi_ok = true;
  const RulesetParams p = default_params(Ruleset::VI);
  for (const auto& t : fixed_tapes_r24()) {
    const LockstepReport rep = lockstep_verify(builtin_program("rogozhin_24_2"), Ruleset::VI, t, kR24Instructions, p);
    const OverheadReport o = overhead_report(rep.final_world.event_log, p);
    vi_ok = vi_ok && rep.outcome == LockstepOutcome::Equivalent && o.derived_bound_satisfied;
    for (const auto& i : o.per_instruction) {
      if (!i.extension) continue;
      ++ext;
      const Turn bound = vi_extension_nominal_bound(p, i.tape_length);
      vi_ok = vi_ok && i.job_turns <= bound;
      if (!slack || bound - i.job_turns < *slack) {
        slack = bound - i.job_turns;
        worst = i.job_turns;
        worst_bound = bound;
      }
    }
  }
  d << "VI " << ext << " extensions, tightest " << worst << " <= " << worst_bound;
  detail = d.str();
  return all && vi_ok && ext > 0;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

bool ac7(const std::string& cli, const fs::path& dir, std::string& detail) {
  int mismatches = 0;
  for (Ruleset r : {Ruleset::BE, Ruleset::V, Ruleset::VI}) {
    for (int i = 1; i <= kRoundTripTapes; ++i) {
      const auto seed = static_cast<std::uint64_t>(i);
      const TMSpec spec = random_tm(seed, 4, r == Ruleset::VI ? 2 : 3);
      const auto program = compile(spec, r);
      const Tape tape = random_tape(seed * 31, spec, 12);
      const DecodedConfig d = decode(init_world(encode_tape(tape, program), default_params(r)), program);
      mismatches += d.config && *d.config == initial_config(spec, tape) ? 0 : 1;
    }
  }
  fs::create_directories(dir);
  bool identical = true;
  for (const char* r : {"BE", "V", "VI"}) {
    std::string traces[2];
    for (int k = 0; k < 2; ++k) {
      const fs::path out = dir / ("trace_" + std::string(r) + "_" + std::to_string(k) + ".jsonl");
      fs::remove(out);
      const std::string cmd = "\"" + cli + "\" run rogozhin_10_3 --ruleset " + r +
                              " --random-tape --seed 7 --max-instructions 50 --out \"" + out.string() + "\"";
      const std::string vi_cmd = "\"" + cli + "\" run rogozhin_24_2 --ruleset VI --random-tape --seed 7 " +
                                 "--max-instructions 50 --out \"" + out.string() + "\"";
      (void)std::system((std::string(r) == "VI" ? vi_cmd : cmd).c_str());
      traces[k] = slurp(out);
    }
    identical = identical && !traces[0].empty() && traces[0] == traces[1];
  }
  detail = std::to_string(3 * kRoundTripTapes - mismatches) + "/" + std::to_string(3 * kRoundTripTapes) +
           " tapes round-trip, traces " + (identical ? "byte-identical" : "differ");
  return mismatches == 0 && identical;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <civtm> <scratch-dir>\n";
    return 2;
  }
  Check c;
  const std::vector<std::pair<int, std::function<bool(std::string&)>>> checks = {
      {1, ac1}, {2, ac2}, {3, ac3}, {4, ac4}, {5, ac5}, {6, ac6},
      {7, [&](std::string& d) { return ac7(argv[1], fs::path(argv[2]) / "acceptance_scratch", d); }}};
  for (const auto& [id, fn] : checks) {
    std::string detail;
    bool ok = false;
    try {
      ok = fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    c.report(id, ok, detail);
  }
  return c.failures;
}
