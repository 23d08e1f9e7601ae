#pragma once
#include <stdexcept>
#include <string>

namespace icq {

// Invalid user-supplied parameters (K, delta, gaps, ...).
struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Non-finite value fed to the quantizer; signals an upstream numerical failure.
struct encoding_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed wire frame (truncated header, bad declared bit length, ...).
struct protocol_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The pull schedule overflowed the integer width; the run must be capped.
struct schedule_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A brute-force search ran out of budget without meeting its condition.
struct search_exhausted_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace icq
