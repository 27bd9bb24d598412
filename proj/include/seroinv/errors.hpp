#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace seroinv {

enum class ErrorCode {
    EmptyCohort,
    DegenerateDiscriminant,
    SingularLayer,
    SeroconversionUndefined,
    InvalidDiseaseIndex,
    ParameterOutOfRange,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyCohort: return "EmptyCohort";
        case ErrorCode::DegenerateDiscriminant: return "DegenerateDiscriminant";
        case ErrorCode::SingularLayer: return "SingularLayer";
        case ErrorCode::SeroconversionUndefined: return "SeroconversionUndefined";
        case ErrorCode::InvalidDiseaseIndex: return "InvalidDiseaseIndex";
        case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace seroinv
