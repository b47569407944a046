#pragma once

#include <stdexcept>
#include <string>

namespace agr {

/// Input data violates a documented precondition (wrong dimension, empty
/// generating set, composite characteristic, malformed certificate, ...).
class invalid_input : public std::invalid_argument {
 public:
  explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

/// Structurally valid input that this library deliberately does not handle
/// (non-pointed monoids, face enumeration of cones with lineality, ...).
class unsupported_input : public std::runtime_error {
 public:
  explicit unsupported_input(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was invoked in a state its contract forbids (for example
/// building the graph monoid of a graded model with a recorded
/// non-additivity witness).
class invalid_state : public std::logic_error {
 public:
  explicit invalid_state(const std::string& what) : std::logic_error(what) {}
};

/// Reading or writing a document failed at the filesystem level (missing
/// file, permission error, failed rename, ...).
class io_failure : public std::runtime_error {
 public:
  explicit io_failure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace agr
