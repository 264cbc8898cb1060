#pragma once

#include <stdexcept>
#include <string>

namespace cgd {

enum class ErrorKind {
  Syntax,
  UnknownIdentifier,
  DuplicateMembership,
  MissingMembership,
  NotATree,
  NonPlanar,
  NotBiconnected,
  EdgeNotPresent,
  CapExceeded,
  WrongKind,
  NotCConnected,
  BadParameter,
  InfeasibleEmbedding,
  DegeneratePosition,
  Inconsistent,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so
// that callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cgd
