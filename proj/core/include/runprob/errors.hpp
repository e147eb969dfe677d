#pragma once

#include <stdexcept>
#include <string>

namespace runprob {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Query or argument outside the admissible domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Exhaustive enumeration requested beyond its length cap.
class CapExceededError : public Error {
public:
    using Error::Error;
};

/// An intermediate value exceeded the representable floating range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// The result lies below the normal double range and cannot be returned faithfully.
class UnderflowError : public Error {
public:
    using Error::Error;
};

/// Iterative root finder missed its residual bound within the sweep cap.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// p is 0 or 1, so the kernel V(x) loses degree and has no spectral form.
class DegenerateKernelError : public Error {
public:
    using Error::Error;
};

/// Roots are (near-)confluent; the distinct-root residue formula does not apply.
class IllConditionedError : public Error {
public:
    using Error::Error;
};

/// The dominant root is not isolated, so a one-term estimate is meaningless.
class DominanceError : public Error {
public:
    using Error::Error;
};

} // namespace runprob
