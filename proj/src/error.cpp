#include "pliml/error.hpp"

namespace pliml {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::parse: return "parse error";
    case ErrorCode::domain: return "domain error";
    case ErrorCode::budget_exceeded: return "budget exceeded";
    case ErrorCode::precondition: return "precondition violated";
    case ErrorCode::invalid_orbit: return "invalid orbit";
    case ErrorCode::io: return "i/o error";
    case ErrorCode::internal: return "internal error";
  }
  return "unknown error";
}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace pliml
