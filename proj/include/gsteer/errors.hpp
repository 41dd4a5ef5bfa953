#pragma once

#include <stdexcept>
#include <string>

namespace gsteer {

/// Thrown when input data fails a structural or physical precondition:
/// asymmetric matrices, unphysical covariance matrices, malformed state
/// files, singular pivot blocks, non-CP channels, and the like.
class InvalidState : public std::runtime_error {
public:
    explicit InvalidState(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a proven invariant fails at runtime (e.g. a forbidden
/// two-way steering configuration, or an eigenvalue pairing that cannot
/// happen for well-formed inputs). Indicates a bug, not bad data.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace gsteer
