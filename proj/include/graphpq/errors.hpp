#pragma once

#include <stdexcept>
#include <string>

namespace graphpq {

// Unreadable, missing, or syntactically malformed input (files, JSON,
// expressions). The CLI maps this to exit code 3.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A structurally parseable input that violates a domain invariant
// (disconnected graph, h below its bound, ...). CLI exit code 1.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace graphpq
