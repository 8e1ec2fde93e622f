#pragma once

#include <stdexcept>
#include <string>

namespace pathint {

/// Base class for all numeric failures raised by this library.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A Gaussian integral scheduled for composition has no decaying direction.
struct CompositionDiverges : NumericError {
    using NumericError::NumericError;
};

/// A truncated-basis computation leaks too much mass into the highest modes.
struct TruncationInsufficient : NumericError {
    using NumericError::NumericError;
};

/// Refining the quadrature still moves the answer beyond tolerance.
struct QuadratureNotConverged : NumericError {
    using NumericError::NumericError;
};

/// The requested Hamiltonian shape is outside what the scheme can evaluate.
struct UnsupportedSymbol : NumericError {
    using NumericError::NumericError;
};

/// Integrand decay cannot be established from the supplied table.
struct TailUnbounded : NumericError {
    using NumericError::NumericError;
};

/// Bad experiment configuration (missing/inconsistent fields).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pathint
