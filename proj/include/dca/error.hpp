#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dca {

// Caller-supplied data or configuration failed validation. Engine-internal
// contract violations use std::logic_error instead.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

class ConfigError : public ValidationError {
public:
    explicit ConfigError(const std::string& msg) : ValidationError(msg) {}
};

// Parse failure in a text input; line numbers are 1-based.
class ParseError : public ValidationError {
public:
    ParseError(std::size_t line, const std::string& msg)
        : ValidationError("line " + std::to_string(line) + ": " + msg), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace dca
