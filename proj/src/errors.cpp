#include "hgff/errors.hpp"

namespace hgff {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidPrime: return "InvalidPrime";
        case ErrorCode::InternalError: return "InternalError";
        case ErrorCode::OrderUnavailable: return "OrderUnavailable";
        case ErrorCode::ConductorMismatch: return "ConductorMismatch";
        case ErrorCode::RoundingUncertain: return "RoundingUncertain";
        case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorCode::NotPadicInteger: return "NotPadicInteger";
        case ErrorCode::LiftOutOfRange: return "LiftOutOfRange";
        case ErrorCode::NotAnIntegralForm: return "NotAnIntegralForm";
        case ErrorCode::SingularReduction: return "SingularReduction";
        case ErrorCode::DataFormatError: return "DataFormatError";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::FetchError: return "FetchError";
        case ErrorCode::LabelNotFound: return "LabelNotFound";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::NotRepresentable: return "NotRepresentable";
        case ErrorCode::ClassMismatch: return "ClassMismatch";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace hgff
