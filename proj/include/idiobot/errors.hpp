#pragma once

#include <stdexcept>
#include <string>

namespace idiobot {

// Text input (genome, world, profile, results CSV) failed to parse.
// line is 1-based; 0 means "not tied to a specific line".
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

// A domain invariant was violated (out-of-range attribute, inconsistent
// configuration, impossible request).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace idiobot
