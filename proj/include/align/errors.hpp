#pragma once

#include <stdexcept>

namespace align {

// Inputs that must share a dimension do not.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Quantity is mathematically undefined for the given input (degenerate
// heterogeneity denominator, both-edgeless strength denominator, ...).
struct UndefinedError : std::domain_error {
  using std::domain_error::domain_error;
};

// Hard resource guard violated (factorial enumeration caps).
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace align
