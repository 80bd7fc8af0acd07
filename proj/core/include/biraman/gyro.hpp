#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "biraman/medium.hpp"

namespace biraman::gyro {

// Every report is produced by this proxy, not by a full resonator-gyro theory.
inline constexpr std::string_view enhancement_model = "mode-pulling proxy 1/|n_g|";

struct EnhancementReport {
    double pump_separation_hz = 0.0;
    double n_g = 1.0;
    // 1/|n_g|. When diverged, holds the finite lower bound 1/epsilon.
    double enhancement = 1.0;
    bool diverged = false;  // |n_g| < epsilon
    double linear_bandwidth_hz = 0.0;
    std::string note;
};

EnhancementReport scale_factor_enhancement(double n_g, double epsilon = 1e-6);

// Width (Hz) of the widest window centered on the doublet where the index
// profile stays within `threshold` (relative) of its center tangent line.
// Zero when the center slope vanishes.
double linear_bandwidth(const medium::MediumParams& params, double threshold = 0.05);

// Evaluates center slope -> n_g -> enhancement over `points` pump separations
// evenly spaced on [lo, hi].
std::vector<EnhancementReport> enhancement_sweep(const medium::MediumParams& params,
                                                 double delta_lo_hz, double delta_hi_hz,
                                                 std::size_t points, double epsilon = 1e-6,
                                                 double linearity_threshold = 0.05);

}  // namespace biraman::gyro
