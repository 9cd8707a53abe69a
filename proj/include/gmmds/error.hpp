#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gmmds {

enum class ErrorKind {
    NotPrimePower,
    NonSquare,
    SizeMismatch,
    DegreeTooHigh,
    MissingAssignment,
    DegreesNotUniform,
    InvalidInput,
    StuckGRP,
    NotAcceptable,
    NotFound,
    FieldTooSmall,
    NotMDSCondition,
    Overflow,
    ParseError,
    InvariantViolation,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised by to_root_family when a row leaves more than m-1 zeros.
class DegreeTooHighError : public Error {
public:
    DegreeTooHighError(int row, int degree, int limit);
    int row() const noexcept { return row_; }

private:
    int row_;
};

/// Two identical degree-(m-1) polynomials block the reduction; indices are 1-based.
class StuckGrpError : public Error {
public:
    StuckGrpError(int first, int second);
    std::pair<int, int> witness() const noexcept { return {first_, second_}; }

private:
    int first_, second_;
};

class NotFoundError : public Error {
public:
    explicit NotFoundError(unsigned long long tried);
    unsigned long long tried() const noexcept { return tried_; }

private:
    unsigned long long tried_;
};

/// Carries the violating row set I (1-based) of the MDS condition.
class NotMdsConditionError : public Error {
public:
    explicit NotMdsConditionError(std::vector<int> witness);
    const std::vector<int>& witness() const noexcept { return witness_; }

private:
    std::vector<int> witness_;
};

}  // namespace gmmds
