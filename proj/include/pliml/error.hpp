#pragma once

#include <stdexcept>
#include <string>

namespace pliml {

enum class ErrorCode {
  invalid_argument = 1,
  parse,
  domain,
  budget_exceeded,
  precondition,
  invalid_orbit,
  io,
  internal,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// C API can translate it without string matching.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace pliml
