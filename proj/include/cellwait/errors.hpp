#pragma once

#include <stdexcept>

namespace cellwait {

// Base class for all cellwait errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid configuration values (construction-time validation).
struct ConfigError : Error { using Error::Error; };

// Argument outside the mathematical domain of an operation.
struct DomainError : Error { using Error::Error; };

// Adaptive quadrature exhausted its subdivision budget before reaching
// tolerance; usually signals an ill-conditioned parameter set.
struct NonConvergence : Error { using Error::Error; };

// Quadratic has negative discriminant.
struct NoRealRoot : Error { using Error::Error; };

// Closed-form coverage requested outside the alpha = 4, sigma2 = 0 regime.
struct WrongRegime : Error { using Error::Error; };

// A distance pdf was requested for an event whose support is empty
// (e.g. r_th = 0 for within-threshold events).
struct DegenerateSupport : Error { using Error::Error; };

// Bisection bracket is invalid (upper bound not larger than epsilon).
struct InvalidBracket : Error { using Error::Error; };

// No cell was available to serve the user anywhere in the sampled disk;
// the simulation radius is too small.
struct NoServer : Error { using Error::Error; };

} // namespace cellwait
