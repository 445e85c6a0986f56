#pragma once

#include <stdexcept>
#include <string>

namespace hypdet {

enum class ErrorCode {
    RewriteCycle,
    FreeSymbol,
    UnknownSymbol,
    NonConverged,
    Underflow,
    Overflow,
    NearZero,
    Pole,
    GridTooCoarse,
    IncompleteWindow,
    OutOfRange,
    Mismatch,
    NotHyperbolic,
    Domain,
    DivergenceNotCancelled,
    VolumeMismatch,
    FormsDisagree,
    CoefficientMismatch,
    NonpositiveArg,
    Unstable,
    Usage,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hypdet
