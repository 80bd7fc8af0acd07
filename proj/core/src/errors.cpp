#include "biraman/errors.hpp"

namespace biraman {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_params: return "InvalidParams";
        case ErrorCode::non_positive_input: return "NonPositiveInput";
        case ErrorCode::invalid_config: return "InvalidConfig";
        case ErrorCode::non_uniform_grid: return "NonUniformGrid";
        case ErrorCode::grid_too_narrow: return "GridTooNarrow";
        case ErrorCode::wrong_profile_kind: return "WrongProfileKind";
        case ErrorCode::insufficient_coverage: return "InsufficientCoverage";
        case ErrorCode::insufficient_samples: return "InsufficientSamples";
        case ErrorCode::no_sign_change: return "NoSignChange";
        case ErrorCode::undersampled: return "Undersampled";
        case ErrorCode::rate_mismatch: return "RateMismatch";
        case ErrorCode::filter_unstable: return "FilterUnstable";
        case ErrorCode::too_short: return "TooShort";
        case ErrorCode::too_few_points: return "TooFewPoints";
        case ErrorCode::non_monotone_data: return "NonMonotoneData";
        case ErrorCode::invalid_data: return "InvalidData";
    }
    return "Unknown";
}

ErrorClass classify(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_params:
        case ErrorCode::non_positive_input:
        case ErrorCode::invalid_config:
            return ErrorClass::config;
        case ErrorCode::too_few_points:
        case ErrorCode::non_monotone_data:
        case ErrorCode::invalid_data:
            return ErrorClass::data;
        default:
            return ErrorClass::numeric;
    }
}

}  // namespace biraman
