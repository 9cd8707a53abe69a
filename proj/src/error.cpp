#include "gmmds/error.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace gmmds {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotPrimePower: return "NotPrimePower";
        case ErrorKind::NonSquare: return "NonSquare";
        case ErrorKind::SizeMismatch: return "SizeMismatch";
        case ErrorKind::DegreeTooHigh: return "DegreeTooHigh";
        case ErrorKind::MissingAssignment: return "MissingAssignment";
        case ErrorKind::DegreesNotUniform: return "DegreesNotUniform";
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::StuckGRP: return "StuckGRP";
        case ErrorKind::NotAcceptable: return "NotAcceptable";
        case ErrorKind::NotFound: return "NotFound";
        case ErrorKind::FieldTooSmall: return "FieldTooSmall";
        case ErrorKind::NotMDSCondition: return "NotMDSCondition";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

DegreeTooHighError::DegreeTooHighError(int row, int degree, int limit)
    : Error(ErrorKind::DegreeTooHigh,
            fmt::format("row {} has {} roots, more than m-1 = {}", row, degree, limit)),
      row_(row) {}

StuckGrpError::StuckGrpError(int first, int second)
    : Error(ErrorKind::StuckGRP,
            fmt::format("no strongly reducible subset; P{} and P{} are identical of degree m-1",
                        first, second)),
      first_(first),
      second_(second) {}

NotFoundError::NotFoundError(unsigned long long tried)
    : Error(ErrorKind::NotFound, fmt::format("no admissible evaluation points after {} tuples", tried)),
      tried_(tried) {}

NotMdsConditionError::NotMdsConditionError(std::vector<int> witness)
    : Error(ErrorKind::NotMDSCondition,
            fmt::format("row set I = {{{}}} violates |union supp| >= n-m+|I|", fmt::join(witness, ","))),
      witness_(std::move(witness)) {}

}  // namespace gmmds
