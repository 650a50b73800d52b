#pragma once

#include <stdexcept>
#include <string>

namespace pinv {

// Raised on malformed user input (bad descriptors, schema violations,
// out-of-domain parameters).  The CLI maps it to exit code 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when an internal invariant fails (non-exact division, rank
// mismatch, broken decomposition).  Indicates a bug or an impossible
// configuration, never bad user data.  The CLI maps it to exit code 3.
struct engine_error : std::runtime_error {
    explicit engine_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace pinv
