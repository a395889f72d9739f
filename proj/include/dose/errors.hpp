#pragma once

#include <stdexcept>
#include <string>

namespace dose {

// Bad caller input: out-of-contract values, mismatched shapes, unknown names.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// File exists but is not in a format we accept.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Underlying read/write failed (missing file, truncated stream, unwritable path).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Data that should be internally consistent is not (e.g. PAD token inside a
// valid region of a delayed grid).
struct CorruptionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dose
