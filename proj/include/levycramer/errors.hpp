#pragma once

#include <stdexcept>
#include <string>

namespace levycramer {

// Base class for every error this library raises on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the finiteness/validity domain of an operation
// (e.g. the Levy exponent evaluated at or beyond a pole).
struct DomainError : Error {
    using Error::Error;
};

// The exponent does not change sign on its domain, so Cramer's
// condition fails and there is no positive root.
struct NoRootError : Error {
    using Error::Error;
};

// Esscher tilt requested for a family that the tilt leaves.
struct UnsupportedTiltError : Error {
    using Error::Error;
};

// A perpetuity replicate failed to contract below the truncation
// tolerance within the block budget.
struct NonTerminationError : Error {
    using Error::Error;
};

// Estimator input with no usable spread (e.g. tied top order statistics).
struct DegenerateInputError : Error {
    using Error::Error;
};

// Too few sample points beyond the plateau window start.
struct InsufficientTailError : Error {
    using Error::Error;
};

// Ladder epochs exceeded the step budget in too many replicates,
// which signals a non-positive tilted drift (wrong chi).
struct LadderTimeoutError : Error {
    using Error::Error;
};

// The exact law of the exponential functional is not known for this family.
struct NoClosedFormError : Error {
    using Error::Error;
};

// Malformed model spec string or batch file.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace levycramer
