#pragma once

#include <stdexcept>
#include <string>

namespace medgraph {

// Malformed text input or a value that violates a documented precondition.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A desk-scale guard (domain size, matrix size, brute-force enumeration) was hit.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The input was assumed median but a structural check failed.
class NotMedianGraph : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace medgraph
