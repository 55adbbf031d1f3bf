#pragma once

#include <stdexcept>
#include <string>

namespace atomrec {

// Dimension mismatch between operands (e.g. map.p != x.size()).
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Out-of-range or otherwise invalid argument value.
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Unknown atomic-set identifier.
struct CatalogError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A required oracle capability (prox, tangent sampler, ...) is missing.
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical breakdown (NaN objective, eigensolver failure, ...).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace atomrec
