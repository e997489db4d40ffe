#pragma once

#include <stdexcept>
#include <string>

namespace hgw {

/// Malformed input: inconsistent dimensions, bad indices, unreadable files.
/// Distinct from an axiom or identity failing on well-formed data.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain of an operation.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A quantity that must exist for valid input could not be produced
/// (e.g. no positive translation-invariant measure).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hgw
