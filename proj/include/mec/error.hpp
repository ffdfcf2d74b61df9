#pragma once

#include <concepts>
#include <stdexcept>
#include <string>

namespace mec {

/// A precondition or invariant of a model operation was violated.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The system configuration is unusable (bad field value, missing bandwidth, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A simulation run failed; the message carries the slot or seed that failed.
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const char* what) {
  if (!condition) throw ContractError(what);
}

/// Lazy form for messages that are expensive to build.
template <std::invocable Message>
void require(bool condition, Message&& what) {
  if (!condition) throw ContractError(std::string(what()));
}

}  // namespace mec
