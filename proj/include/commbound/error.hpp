#pragma once

#include <stdexcept>
#include <string>

namespace commbound {

/// Malformed input: bad dimensions, entries out of range, unparsable files.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A theorem's hypothesis does not hold for the given inputs.
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A configured size or enumeration cap would be exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical routine failed (non-convergence, LP status not optimal).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace commbound
