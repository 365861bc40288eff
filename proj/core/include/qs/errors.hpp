#pragma once

#include <stdexcept>
#include <string>

namespace qs {

// Dimension or value constraints violated (odd mask size, bad parameter range).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text or binary stream.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem / stream failures.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// A structure instance no longer matches the mask it is applied to.
class StaleInstanceError : public std::runtime_error {
public:
    explicit StaleInstanceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qs
