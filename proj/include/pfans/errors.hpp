#pragma once

#include <stdexcept>
#include <string>

namespace pfans {

// Invalid argument or precondition violation at a module boundary.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A band request that fits in no inter-notch passband.
struct PlanningError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure (singular system, diverging equalizer, ...).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Synchronization could not find a credible correlation peak.
struct SyncError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad run configuration (e.g. VOA asked to provide gain).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace pfans
