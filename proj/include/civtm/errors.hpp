#pragma once

#include <stdexcept>
#include <string>

namespace civtm {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed machine description or file.
class SpecError : public Error {
 public:
  using Error::Error;
};

// No transition defined for a non-halting (state, symbol) pair.
class StuckError : public Error {
 public:
  using Error::Error;
};

// A world command that the active ruleset forbids.
class IllegalCommand : public Error {
 public:
  using Error::Error;
};

// A machine that cannot be mapped onto the requested ruleset.
class CompileError : public Error {
 public:
  using Error::Error;
};

// A world that does not decode to a machine configuration.
class DecodeError : public Error {
 public:
  using Error::Error;
};

// A world invariant that must never break (starvation, bad census, ...).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace civtm
