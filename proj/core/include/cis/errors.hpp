#pragma once

#include <stdexcept>
#include <string>

namespace cis {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments or values outside an operation's domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class MultiplicityViolation : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class AlphabetViolation : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class DomainError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// An enumeration or allocation would exceed its configured cap.
class SpaceTooLarge : public Error {
public:
    using Error::Error;
};

/// An iterative numerical method failed to converge.
class NoConvergence : public Error {
public:
    using Error::Error;
};

/// An exact computation produced a value that cannot be right (e.g. a
/// count that is not an integer). Always indicates a bug.
class InternalInconsistency : public Error {
public:
    using Error::Error;
};

}  // namespace cis
