#pragma once

#include <stdexcept>
#include <string>

namespace extdiv {

/// Input lies outside the domain of the requested map (e.g. a nonpositive
/// coordinate handed to a mirror map that needs the strictly positive orthant).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// A parameter bundle violates its validity constraints.
struct ParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A solver step left the dual domain (step size too large for the geometry)
/// or an iterate became unusable for the next step.
struct StepError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Vector/operator dimension mismatch.
struct SizeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Malformed file contents (image I/O, metadata).
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace extdiv
