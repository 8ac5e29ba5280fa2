#pragma once

#include <stdexcept>
#include <string>

namespace katolab {

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GridError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A multiplier with zero_mode_rule 'reject' was applied to a field with
// nonzero mean, or a homogeneous norm was requested for such a field.
struct ZeroModeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace katolab
