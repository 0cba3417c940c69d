#pragma once

#include <stdexcept>
#include <string>

namespace urysohn {

enum class ErrorCode {
    MixedRadicands,
    DivisionByZero,
    ParseError,
    InvalidArgument,
    BudgetExceeded,
    NotABijection,
    PoleAtAlpha,
    OverlapNotIsometric,
    DegenerateAmalgam,
    CyclicConstraints,
    NoSmallEnoughDelta,
    ZNotInDelta,
    OutsideFragment,
    NotEmbeddable,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto an exit status without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace urysohn
