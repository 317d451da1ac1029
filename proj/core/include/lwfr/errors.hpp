#pragma once

#include <stdexcept>
#include <string>

namespace lwfr {

/// Invalid configuration: unsupported degree, malformed config file, bad
/// boundary setup. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Mesh or metric construction failure (folded map, non-positive Jacobian).
class GeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Non-physical or non-finite solver state. Carries the element/node where
/// the state was detected when known (-1 otherwise).
class StateError : public std::runtime_error {
public:
  explicit StateError(const std::string& msg, int element = -1, int node = -1)
      : std::runtime_error(msg), element(element), node(node) {}
  int element;
  int node;
};

} // namespace lwfr
