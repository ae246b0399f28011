#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace civtm {

// Exit statuses of run / verify.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // divergence, failed bound, internal error
inline constexpr int kExitParse = 2;
inline constexpr int kExitStuck = 3;
inline constexpr int kExitStepLimit = 4;

// Entry point of the `civtm` tool. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace civtm
