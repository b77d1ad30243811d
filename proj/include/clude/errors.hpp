#pragma once

#include <stdexcept>
#include <string>

namespace clude {

/// Invalid parameters or invariant-violating configuration.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// An objective function produced a non-finite value.
class EvaluationError : public std::runtime_error {
  public:
    explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation read state that is not in the required lifecycle stage
/// (e.g. the objective value of an individual that was never evaluated).
class StateError : public std::runtime_error {
  public:
    explicit StateError(const std::string& what) : std::runtime_error(what) {}
};

/// A transform data file could not be read, parsed, or validated.
class LoadError : public std::runtime_error {
  public:
    explicit LoadError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem failure while writing experiment artifacts.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace clude
