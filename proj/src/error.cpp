#include "stripes/error.hpp"

namespace stripes {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::OddDimension: return "OddDimension";
        case ErrorCode::BadBase: return "BadBase";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::UnitCountMismatch: return "UnitCountMismatch";
        case ErrorCode::NonSquare: return "NonSquare";
        case ErrorCode::ZeroNormalizer: return "ZeroNormalizer";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::FormatError: return "FormatError";
        case ErrorCode::NonBinary: return "NonBinary";
        case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
        case ErrorCode::MissingAnnotation: return "MissingAnnotation";
        case ErrorCode::CoverageGap: return "CoverageGap";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::SingleContext: return "SingleContext";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

} // namespace stripes
