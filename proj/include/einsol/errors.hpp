#pragma once

#include <stdexcept>
#include <string>

namespace einsol {

/// Syntax / validation failure while parsing an expression or manifold file.
/// `column` is 1-based within the offending line; 0 when not applicable.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line, int column)
        : std::runtime_error(format(message, line, column)), line_(line), column_(column) {}
    explicit ParseError(std::string message) : ParseError(std::move(message), 0, 0) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    static std::string format(const std::string& message, int line, int column) {
        std::string out = message;
        if (line > 0) out += " (line " + std::to_string(line) + ")";
        if (column > 0) out += " (column " + std::to_string(column) + ")";
        return out;
    }
    int line_ = 0;
    int column_ = 0;
};

/// Numeric domain violation (log of non-positive value, division by zero, ...)
/// raised while evaluating an expression; carries the offending subexpression.
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad pointwise geometry: metric not positive definite, near-singular, or the
/// point violates a chart domain constraint.
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was invoked outside its stated preconditions
/// (vanishing field, non-gradient field, missing declared data, ...).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation undefined in this chart dimension (formulas carrying 1/(n-2)).
class DimensionError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

} // namespace einsol
