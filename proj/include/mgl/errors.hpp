#pragma once

#include <stdexcept>
#include <string>

namespace mgl {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParamsError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct NonFiniteInputError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

struct BallTooLargeError : Error {
    using Error::Error;
};

struct RadiusMismatchError : Error {
    using Error::Error;
};

struct NotPsdError : Error {
    using Error::Error;
};

struct InfeasibleTargetsError : Error {
    using Error::Error;
};

struct ZeroMatrixError : Error {
    using Error::Error;
};

// Carries the 1-based line number of the offending input line.
struct ParseError : Error {
    int line;
    ParseError(const std::string& msg, int line_no)
        : Error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

} // namespace mgl
