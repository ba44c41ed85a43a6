#pragma once

#include <stdexcept>
#include <string>

namespace doomsday {

enum class Err {
  SyntaxError,
  MissingTransition,
  BadOwner,
  BadInit,
  DuplicateState,
  BadParams,
  MixedClasses,
  BadShift,
  NotWinning,
  TooManyTargets,
  TooManyPlayers,
  LarBoundExceeded,
  NoEquilibrium,
  MalformedWitness,
  UnsupportedClass,
  TooLarge,
  NotTwoPlayer,
  BadTargets,
};

const char* err_name(Err e);

/// Error with a machine-readable code, used for CLI exit mapping.
class Error : public std::runtime_error {
public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void raise(Err code, const std::string& msg) {
  throw Error(code, msg);
}

} // namespace doomsday
