#pragma once

#include <stdexcept>
#include <string>

namespace mendel {

/// Raised when an operation's preconditions are violated by its inputs.
class invalid_parameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by fail-closed constructors whose output does not pass verification.
class verification_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what)
{
    if (!cond)
        throw invalid_parameter(what);
}

} // namespace mendel
