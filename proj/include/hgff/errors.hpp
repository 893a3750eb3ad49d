#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hgff {

enum class ErrorCode {
    InvalidPrime,
    InternalError,
    OrderUnavailable,
    ConductorMismatch,
    RoundingUncertain,
    PrecisionExhausted,
    NotPadicInteger,
    LiftOutOfRange,
    NotAnIntegralForm,
    SingularReduction,
    DataFormatError,
    NotNormalized,
    FetchError,
    LabelNotFound,
    IndexOutOfRange,
    NotRepresentable,
    ClassMismatch,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the relation runner) can branch on the kind of failure.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hgff
