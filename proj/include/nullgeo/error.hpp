#pragma once

#include <stdexcept>
#include <string>

namespace nullgeo {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A pure-imaginary argument was required but the real part is nonzero,
/// or an axis was not unit length.
class InvalidAxisError : public Error {
public:
    using Error::Error;
};

/// Cyclic group order must be positive.
class InvalidOrderError : public Error {
public:
    using Error::Error;
};

/// A chart point lies outside the metric's declared chart domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Metric components violate the (+,+,-) sign pattern.
class SignatureError : public Error {
public:
    using Error::Error;
};

/// A separable metric was required.
class SeparabilityError : public Error {
public:
    using Error::Error;
};

/// A finite-difference stencil would leave the declared domain.
class MarginError : public Error {
public:
    using Error::Error;
};

/// Generic bad argument (empty sample list, wrong dimension, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Null-direction sample set does not determine a unique quadric.
class DegenerateConeError : public Error {
public:
    using Error::Error;
};

/// Recovered quadric does not have Lorentzian signature (2,1).
class NotLorentzConeError : public Error {
public:
    using Error::Error;
};

/// A frame that must be linearly independent is not.
class RankError : public Error {
public:
    using Error::Error;
};

/// Kernel field is tangent to the quotient slice.
class TransversalityError : public Error {
public:
    using Error::Error;
};

/// The lexicographic orbit representative changed inside a difference stencil.
class SkyBranchError : public Error {
public:
    using Error::Error;
};

/// Malformed metric expression or configuration file.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace nullgeo
