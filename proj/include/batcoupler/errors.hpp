#pragma once

#include <stdexcept>
#include <string>

namespace batcoupler {

/// Arguments violate a documented precondition (bad sizes, bounds, parameter ranges).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A formula was evaluated outside its mathematical domain (acosh argument < 1, g = 1 singularity).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
    if (!condition) throw InvalidInput(message);
}

}  // namespace detail
}  // namespace batcoupler
