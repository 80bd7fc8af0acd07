#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace biraman {

enum class ErrorCode {
    invalid_params,
    non_positive_input,
    invalid_config,
    non_uniform_grid,
    grid_too_narrow,
    wrong_profile_kind,
    insufficient_coverage,
    insufficient_samples,
    no_sign_change,
    undersampled,
    rate_mismatch,
    filter_unstable,
    too_short,
    too_few_points,
    non_monotone_data,
    invalid_data,
};

// Coarse grouping used by the CLI to pick an exit code.
enum class ErrorClass { config, numeric, data };

std::string_view to_string(ErrorCode code) noexcept;
ErrorClass classify(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    ErrorClass error_class() const noexcept { return classify(code_); }

private:
    ErrorCode code_;
};

}  // namespace biraman
