#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace optomech {

enum class ErrorCode {
    // input validation
    ParametricThreshold,
    NonPositiveRate,
    InvalidArgument,
    UnknownParameter,
    UnknownFigureTag,
    OutputUnwritable,
    // numerical failures
    SingularDenominator,
    NoConvergence,
    EigenFailure,
    UnstableDrift,
    SingularSystem,
    UnphysicalCovariance,
    SingularCovariance,
    SingularAtFrequency,
};

[[nodiscard]] constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ParametricThreshold: return "ParametricThreshold";
        case ErrorCode::NonPositiveRate: return "NonPositiveRate";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::UnknownParameter: return "UnknownParameter";
        case ErrorCode::UnknownFigureTag: return "UnknownFigureTag";
        case ErrorCode::OutputUnwritable: return "OutputUnwritable";
        case ErrorCode::SingularDenominator: return "SingularDenominator";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::EigenFailure: return "EigenFailure";
        case ErrorCode::UnstableDrift: return "UnstableDrift";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::UnphysicalCovariance: return "UnphysicalCovariance";
        case ErrorCode::SingularCovariance: return "SingularCovariance";
        case ErrorCode::SingularAtFrequency: return "SingularAtFrequency";
    }
    return "Unknown";
}

/// True for errors caused by bad input rather than a numerical breakdown.
[[nodiscard]] constexpr bool is_validation_error(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ParametricThreshold:
        case ErrorCode::NonPositiveRate:
        case ErrorCode::InvalidArgument:
        case ErrorCode::UnknownParameter:
        case ErrorCode::UnknownFigureTag:
        case ErrorCode::OutputUnwritable:
            return true;
        default:
            return false;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace optomech
