#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gwcalc {

enum class ErrorCode {
  precondition,    // an operation was called outside its domain
  not_prime,       // an argument required to be prime was not
  prime_mismatch,  // Moore cells with different primes were combined
  schema,          // malformed JSON or word syntax
  bound_exceeded,  // an enumeration would exceed the configured safety bound
  invariant,       // an internal consistency check failed
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::not_prime: return "not_prime";
    case ErrorCode::prime_mismatch: return "prime_mismatch";
    case ErrorCode::schema: return "schema";
    case ErrorCode::bound_exceeded: return "bound_exceeded";
    case ErrorCode::invariant: return "invariant";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

}  // namespace gwcalc
