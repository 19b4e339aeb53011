#pragma once

#include <stdexcept>
#include <string>

namespace cubulate {

// Malformed files, unknown points or labels, invalid walls.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computation left the truncated universe; the message names the
// escaping object.
struct horizon_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configured budget (walls, vertices, subgroup size) was exceeded.
// The message includes partial progress where available.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal consistency or certificate replay check failed; the
// message carries the witness.
struct verification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cubulate
