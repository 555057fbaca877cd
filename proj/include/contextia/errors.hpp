#pragma once

#include <stdexcept>
#include <string>

namespace contextia {

// Input violates a documented precondition or type invariant.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Request exceeds an exhaustive-enumeration or size cap.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

// A randomized constructor could not realise the requested object.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or schema-incompatible serialized input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace contextia
