#pragma once

#include <stdexcept>
#include <string>

namespace nmems {

// Caller passed something outside an operation's contract.
class RejectedInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An algorithm failed to meet its own numeric guarantee.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace nmems
