#pragma once

#include <stdexcept>
#include <string>

namespace modgl2 {

// Invalid user input: out-of-range labels, mismatched parameters, malformed
// files. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The Brauer-character solve produced a coefficient that is not within
// tolerance of a nonnegative integer. The CLI maps this to exit code 3.
class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An element required to have a single central character does not.
class NotHomogeneous : public ValidationError {
public:
    using ValidationError::ValidationError;
};

} // namespace modgl2
