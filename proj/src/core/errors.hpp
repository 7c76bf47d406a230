#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace sanov {

// Error taxonomy shared by the library, the C API statuses and the CLI exit codes.
enum class ErrorKind {
  internal,
  validation,           // bad input: shapes, ranges, parse failures, broken preconditions
  capacity,             // enumeration budget exceeded
  empty_event,          // no type with positive probability satisfies the constraint set
  infeasible,           // the constraint set admits no distribution at all
  infinite_divergence,  // feasible, but every feasible Q puts mass where P does not
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::internal: return "internal";
    case ErrorKind::validation: return "validation";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::empty_event: return "empty_event";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::infinite_divergence: return "infinite_divergence";
  }
  return "internal";
}

// Process exit code / C API status for an error kind. Infinite divergence shares
// the infeasible code; the error body distinguishes them by kind.
inline int error_exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::internal: return 1;
    case ErrorKind::validation: return 2;
    case ErrorKind::capacity: return 3;
    case ErrorKind::empty_event: return 4;
    case ErrorKind::infeasible: return 5;
    case ErrorKind::infinite_divergence: return 5;
  }
  return 1;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  Error& with_constraint_index(int64_t i) {
    constraint_index = i;
    return *this;
  }
  Error& with_required_count(uint64_t c) {
    required_count = c;
    return *this;
  }

  // Infeasibility certificate: index of the offending constraint.
  std::optional<int64_t> constraint_index;
  // Capacity errors: how many type classes the request would enumerate.
  std::optional<uint64_t> required_count;

 private:
  ErrorKind kind_;
};

}  // namespace sanov
