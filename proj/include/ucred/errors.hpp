#pragma once

#include <stdexcept>
#include <string>

namespace ucred {

// Invalid user configuration (bad lengths, malformed input).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An operation was called outside its documented domain.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A sigma function (or other mandatory denominator) vanished identically.
struct DegenerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evaluation on (or too close to) the singular locus s_i in {0,1}, s_i = s_j.
struct SingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A birational map was applied on its indeterminacy locus.
struct IndeterminacyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal identity that must hold by construction did not.
struct ConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace ucred
