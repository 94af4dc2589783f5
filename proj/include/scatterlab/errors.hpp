#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace scatterlab {

/// Bad parameters or malformed input.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An enumeration or sweep would exceed its size guard.
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A construction or theorem check failed. Always indicates a bug.
class VerificationFailure : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Multiplier applied to every enumeration guard; read from
/// SCATTERLAB_GUARD_SCALE (default 1).
double guard_scale();

/// Throws GuardError if `size` exceeds `limit * guard_scale()`.
void check_guard(double size, double limit, const std::string& what);

inline void require(bool cond, const std::string& msg)
{
    if (!cond) throw ValidationError(msg);
}

inline void verify(bool cond, const std::string& msg)
{
    if (!cond) throw VerificationFailure(msg);
}

}  // namespace scatterlab
