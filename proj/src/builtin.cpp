#include <sstream>

#include "civtm/errors.hpp"
#include "civtm/tm.hpp"

namespace civtm {

namespace {

// One row per line: "<state> <read> <write> <move> <next>" or
// "<state> <read> HALT [<write> <move>]".
constexpr const char* kBusyBeaver3 = R"(
q0 0 1 R q1
q0 1 1 L q2
q1 0 1 L q0
q1 1 1 R q1
q2 0 1 L q1
q2 1 HALT 1 R
)";

constexpr const char* kRogozhin10x3 = R"(
q0 0 1 R q0
q0 1 0 L q1
q0 b b R q3
q1 0 0 L q2
q1 1 0 L q1
q1 b b L q1
q2 0 0 L q1
q2 1 b L q5
q2 b b R q0
q3 0 1 R q0
q3 1 1 R q4
q3 b 1 L q3
q4 0 b L q2
q4 1 1 R q4
q4 b b R q4
q5 0 1 L q6
q5 1 1 L q5
q5 b b L q5
q6 0 0 R q7
q6 1 HALT
q6 b b L q8
q7 0 1 L q5
q7 1 1 R q7
q7 b b R q7
q8 0 1 L q9
q8 1 0 R q9
q8 b 0 L q3
q9 0 0 R q4
q9 1 0 R q9
q9 b b R q8
)";

constexpr const char* kRogozhin24x2 = R"(
q1 0 0 R q5
q1 1 1 R q2
q2 0 1 R q1
q2 1 1 L q3
q3 0 0 L q4
q3 1 0 L q2
q4 0 1 L q12
q4 1 0 L q9
q5 0 1 R q1
q5 1 0 L q6
q6 0 0 L q7
q6 1 1 L q7
q7 0 1 L q8
q7 1 0 L q6
q8 0 0 L q7
q8 1 1 R q2
q9 0 0 R q19
q9 1 1 L q4
q10 0 1 L q4
q10 1 0 R q13
q11 0 0 L q4
q11 1 HALT
q12 0 0 R q19
q12 1 1 L q14
q13 0 0 R q10
q13 1 1 R q24
q14 0 0 L q15
q14 1 1 L q11
q15 0 0 R q16
q15 1 1 R q17
q16 0 0 R q15
q16 1 1 R q10
q17 0 0 R q16
q17 1 1 R q21
q18 0 0 R q19
q18 1 1 R q20
q19 0 1 L q3
q19 1 1 R q18
q20 0 1 R q18
q20 1 0 R q18
q21 0 0 R q22
q21 1 1 R q23
q22 0 1 L q10
q22 1 1 R q21
q23 0 1 R q21
q23 1 0 R q21
q24 0 0 R q13
q24 1 0 L q3
)";

TMSpec from_rows(std::vector<State> states, std::vector<Symbol> alphabet, const char* rows) {
  TMSpec spec;
  spec.states = std::move(states);
  spec.alphabet = std::move(alphabet);
  spec.blank = spec.alphabet.front();
  spec.input_alphabet.assign(spec.alphabet.begin() + 1, spec.alphabet.end());
  spec.initial = spec.states.front();
  std::istringstream in(rows);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    State q;
    Symbol s;
    std::string third;
    if (!(fields >> q >> s >> third)) continue;
    Action a;
    if (third == "HALT") {
      a.halt = true;
      a.write = s;
      std::string m;
      if (fields >> a.write >> m) a.move = move_from_string(m);
    } else {
      std::string m;
      State next;
      fields >> m >> next;
      a.write = third;
      a.move = move_from_string(m);
      a.next = next;
    }
    spec.transitions[{q, s}] = std::move(a);
  }
  return validate_spec(spec);
}

std::vector<State> numbered(const char* prefix, int first, int last) {
  std::vector<State> out;
  for (int i = first; i <= last; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

std::vector<std::string> builtin_names() { return {"bb3", "rogozhin_10_3", "rogozhin_24_2"}; }

bool is_builtin(const std::string& name) {
  for (const auto& n : builtin_names()) {
    if (n == name) return true;
  }
  return false;
}

TMSpec builtin_program(const std::string& name) {
  if (name == "bb3") return from_rows(numbered("q", 0, 2), {"0", "1"}, kBusyBeaver3);
  if (name == "rogozhin_10_3") return from_rows(numbered("q", 0, 9), {"0", "1", "b"}, kRogozhin10x3);
  if (name == "rogozhin_24_2") return from_rows(numbered("q", 1, 24), {"0", "1"}, kRogozhin24x2);
  throw SpecError("unknown built-in program \"" + name + "\"");
}

}  // namespace civtm
