#ifndef MINCYC_ERROR_HPP
#define MINCYC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace mincyc {

enum class ErrorCode {
    DuplicateSimplex,
    BadArity,
    BadDimension,
    DimensionMismatch,
    NotACycle,
    NotIndependent,
    IncompleteBasis,
    NotSimple,
    NotSimpleBasis,
    EmptyLocalSide,
    NotAPath,
    BudgetExceeded,
    IndexZero,
    Unreachable,
    NegativeWeight,
    ParseError,
    NonManifold,
    BadParams,
    UnknownSimplex,
    IoError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::DuplicateSimplex: return "DuplicateSimplex";
    case ErrorCode::BadArity: return "BadArity";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::NotIndependent: return "NotIndependent";
    case ErrorCode::IncompleteBasis: return "IncompleteBasis";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::NotSimpleBasis: return "NotSimpleBasis";
    case ErrorCode::EmptyLocalSide: return "EmptyLocalSide";
    case ErrorCode::NotAPath: return "NotAPath";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::IndexZero: return "IndexZero";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonManifold: return "NonManifold";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::UnknownSimplex: return "UnknownSimplex";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

/// Every domain failure in the library is reported as an Error carrying a code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace mincyc

#endif
