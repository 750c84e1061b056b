#pragma once

#include <stdexcept>
#include <string>

namespace maxeig {

/// Malformed text input (system files, operator files, CLI literals).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A shifted linear system whose elimination met a pivot below the
/// singularity threshold. RQI treats this as convergence.
class SingularSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iteration exhausted its budget without meeting its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The system has no killing at all, so its maximal eigenvalue is 0 and
/// the efficient initials are undefined.
class ZeroEigenvalueError : public std::domain_error {
public:
    ZeroEigenvalueError();
};

} // namespace maxeig
