#pragma once

#include <stdexcept>
#include <string>

namespace ucq {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two structures (or a query and a database) disagree on relation names or arities.
struct SignatureMismatchError : Error {
    using Error::Error;
};

// A configured resource cap was hit. Caps fail hard, they never degrade silently.
struct CapExceededError : Error {
    CapExceededError(std::string cap, const std::string& detail)
        : Error("cap exceeded (" + cap + "): " + detail), cap_name(std::move(cap)) {}
    std::string cap_name;
};

// An operation's precondition does not hold for the given input.
struct PreconditionError : Error {
    using Error::Error;
};

// Malformed input file.
struct ParseError : Error {
    ParseError(int line_, int column_, const std::string& message)
        : Error("parse error at line " + std::to_string(line_) + ", column " +
                std::to_string(column_) + ": " + message),
          line(line_),
          column(column_) {}
    int line;
    int column;
};

}  // namespace ucq
