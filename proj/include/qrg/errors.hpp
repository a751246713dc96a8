#pragma once

#include <stdexcept>
#include <string>

namespace qrg {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid argument or configuration (CLI exit code 1).
struct InvalidInput : Error {
    using Error::Error;
};

/// Numerical failure: overflow, tolerance breach, pattern mismatch (CLI exit code 2).
struct NumericFailure : Error {
    using Error::Error;
};

/// The RG recursion left the representable range (g doubles its exponent each step).
struct FlowOverflow : NumericFailure {
    using NumericFailure::NumericFailure;
};

} // namespace qrg
