#pragma once

#include <stdexcept>
#include <string>

namespace stripes {

enum class ErrorCode {
    OddDimension,
    BadBase,
    DimensionMismatch,
    UnitCountMismatch,
    NonSquare,
    ZeroNormalizer,
    LengthMismatch,
    FormatError,
    NonBinary,
    ResolutionTooCoarse,
    MissingAnnotation,
    CoverageGap,
    EmptyInput,
    SingleContext,
    IndexOutOfRange,
    InvalidArgument,
};

const char* to_string(ErrorCode code);

/// Library-wide exception type; carries a machine-checkable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace stripes
