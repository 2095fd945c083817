#pragma once

#include <stdexcept>
#include <string>

namespace scref {

struct NotInterior : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ResidualTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EigenFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line_number)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + msg),
          line(line_number) {}
    int line;
};

}  // namespace scref
