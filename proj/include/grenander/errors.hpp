#pragma once

#include <stdexcept>
#include <string>

namespace grenander {

// Bad data fed to an operation (malformed sample file, value out of domain).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally invalid configuration (unknown family, missing field, bad grid).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Configuration that is well-formed but violates a theorem hypothesis the
// requested statistic depends on. Kept separate so the CLI can map it to its
// own exit code.
class HypothesisError : public std::runtime_error {
 public:
  explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

// A computed object failed one of its own invariants.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace grenander
