#pragma once
#include <stdexcept>

namespace rsma {

// A solver was asked for a problem size beyond its hard cap.
struct UnsupportedSizeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The feasible-latency search failed to bracket a solution.
struct UnboundedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rsma
