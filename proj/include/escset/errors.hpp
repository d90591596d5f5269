#pragma once

#include <stdexcept>
#include <string>

namespace escset {

/// A caller broke an operation's precondition (bad input, unmet covering
/// condition, invalid configuration).
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation exceeded a configured resource limit, e.g. the digit cap on
/// exact integers or the range of a double.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace escset
