#pragma once

#include <stdexcept>
#include <string>

namespace pucci {

/// Malformed or out-of-range input to an operation.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A stated precondition does not hold for the given arguments.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A numeric procedure could not reach its configured accuracy.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scenario / configuration level problem (bad key, unresolvable setup).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mismatched or incomplete data structures (masks, closures).
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Grid too coarse to populate the requested probe levels.
struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace pucci
