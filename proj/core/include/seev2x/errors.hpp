#pragma once

#include <stdexcept>
#include <string>

namespace seev2x {

/// Input that violates a documented precondition or invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatch between a payload and the reaction mode configured for a run.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A follower closed the gap to its leader. Indicates a mis-parameterized
/// scenario; runs abort instead of clamping.
class CollisionFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace seev2x
