#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace specm {

/// Stable error codes shared by every module and surfaced by the CLI.
enum class ErrorCode {
  ZeroPolynomial,
  MalformedPartition,
  UnboundedPiece,
  DomainMismatch,
  OutsideFragment,
  OutOfDomain,
  NotDifferentiableFragment,
  WholeRing,
  NotFromIdeal,
  IdenticalDescriptors,
  TooLarge,
  BadModulus,
  NotMaximal,
  InvalidArgument,
  ParseError,
};

/// Short stable identifier, e.g. "E005".
std::string_view error_id(ErrorCode code);
/// Symbolic name, e.g. "OutsideFragment".
std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace specm
