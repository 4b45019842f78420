#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace avgsa {

/// Process exit codes used by the CLI; each exception class maps to one.
enum class ErrorCode : int { Validation = 2, Numeric = 3, Io = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string_view tag, const std::string& what)
        : std::runtime_error(what), code_(code), tag_(tag) {}

    ErrorCode code() const noexcept { return code_; }
    /// Short machine-parsable category, printed as `error[<tag>]: ...`.
    std::string_view tag() const noexcept { return tag_; }

private:
    ErrorCode code_;
    std::string_view tag_;
};

/// A value violates a documented constraint (exponents, ranges, plans).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what)
        : Error(ErrorCode::Validation, "validation", what) {}

protected:
    ValidationError(std::string_view tag, const std::string& what)
        : Error(ErrorCode::Validation, tag, what) {}
};

/// Malformed input: unknown names, bad numbers, unknown config keys.
class ParseError : public ValidationError {
public:
    explicit ParseError(const std::string& what) : ValidationError("parse", what) {}
};

class NumericError : public Error {
public:
    explicit NumericError(const std::string& what)
        : Error(ErrorCode::Numeric, "numeric", what) {}

protected:
    NumericError(std::string_view tag, const std::string& what)
        : Error(ErrorCode::Numeric, tag, what) {}
};

class NonConvergence : public NumericError {
public:
    explicit NonConvergence(const std::string& what)
        : NumericError("nonconvergence", what) {}
};

class RootNotBracketed : public NumericError {
public:
    explicit RootNotBracketed(const std::string& what)
        : NumericError("root-not-bracketed", what) {}
};

/// The maximiser of a tabulated conjugate sits on the grid edge.
class GridBoundary : public NumericError {
public:
    explicit GridBoundary(const std::string& what) : NumericError("widen-grid", what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCode::Io, "io", what) {}
};

}  // namespace avgsa
