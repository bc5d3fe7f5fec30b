#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdilog {

/// Error classes raised by the library. The CLI maps each one to its own
/// nonzero exit status, so the numeric values are part of the tool's contract.
enum class ErrorKind : int {
  BadLevel = 10,
  NonPrimitiveRoot = 11,
  InvalidArgument = 12,
  IndexOutOfRange = 13,
  ChargeSumViolation = 20,
  ParseError = 30,
  ValenceError = 31,
  PlanarityError = 32,
  EdgeNotFound = 33,
  IllegalMove = 34,
  NoSolution = 40,
  TooLarge = 50,
  RankCapExceeded = 51,
  EvenLevel = 60,
  PoleError = 61,
  FermatViolation = 62,
  GluingInconsistency = 63,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qdilog
