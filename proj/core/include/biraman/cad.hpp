#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "biraman/constants.hpp"
#include "biraman/medium.hpp"
#include "biraman/spectral.hpp"

namespace biraman::cad {

// One dispersion-slope measurement at a given pump separation.
struct SlopeMeasurement {
    double pump_separation_hz = 0.0;
    double slope = 0.0;             // dn/domega at the doublet center, rad^-1 s
    double fit_bandwidth_hz = 0.0;  // window the linear fit was taken over
    double standard_error = 0.0;    // of the slope, rad^-1 s
};

struct GroupIndexPoint {
    double pump_separation_hz = 0.0;
    double n_g = 0.0;
};

enum class NullMethod { model_root, data_extrapolation };
std::string_view to_string(NullMethod m) noexcept;

struct NullEstimate {
    double delta_null_hz = 0.0;
    NullMethod method = NullMethod::model_root;
    std::string fit;  // finer-grained tag, e.g. "bisection", "log_linear_trailing3"
    double interval_lo_hz = 0.0;
    double interval_hi_hz = 0.0;
};

// Ordinary least squares of Delta n against angular detuning 2*pi*delta over
// [center - bandwidth/2, center + bandwidth/2]. Standard error from residuals.
SlopeMeasurement fit_linear_slope(const SpectralProfile& index_profile, double center_hz,
                                  double bandwidth_hz);

double ng_from_slope(double slope,
                     double carrier_rad_s = constants::carrier_angular_frequency) noexcept;
double slope_from_ng(double n_g,
                     double carrier_rad_s = constants::carrier_angular_frequency) noexcept;

// The dispersion slope that nulls the group index, -n_o / omega_o.
double cad_threshold_slope(double carrier_rad_s = constants::carrier_angular_frequency) noexcept;

// dn/domega at the doublet center:
//   M * (gamma^2 - d^2/4) / (d^2/4 + gamma^2)^2, d = 2*pi*Delta.
double model_slope_at_center(const medium::MediumParams& p);

// Group index at the doublet center for the params with pump separation Delta.
double center_group_index(const medium::MediumParams& p, double delta_hz);

// Bisection on Delta for a zero of the center group index.
// Throws NoSignChange if n_g does not change sign across [lo, hi].
NullEstimate find_null_delta(const medium::MediumParams& p, double lo_hz, double hi_hz);

// Brackets the upper null (where n_g rises back through zero as Delta grows)
// by a geometric scan. Throws NoSignChange if the model never reaches n_g < 0.
std::pair<double, double> bracket_upper_null(const medium::MediumParams& p);

enum class ExtrapolationFit {
    log_linear_trailing,  // log(1 - n_g) linear in Delta over the trailing points
    doublet_model,        // least-squares (M, gamma) of the doublet model, then root
};
std::string_view to_string(ExtrapolationFit f) noexcept;

struct ExtrapolationOptions {
    ExtrapolationFit fit = ExtrapolationFit::log_linear_trailing;
    std::size_t trailing_points = 3;
    double confidence = 0.95;  // two-sided, jackknife + Student t
    double carrier_rad_s = constants::carrier_angular_frequency;
    double half_width_hint = 0.0;  // rad/s; doublet_model only, 0 = automatic
};

// Estimates the pump separation of the group-index null from measured
// (Delta, n_g) pairs. The interval comes from leave-one-out refits
// (jackknife standard error) scaled by the Student t quantile.
// Throws TooFewPoints, NonMonotoneData (1 - n_g not strictly decreasing in
// Delta, or repeated Delta), InvalidData (n_g >= 1 or non-finite).
NullEstimate extrapolate_null(std::span<const GroupIndexPoint> points,
                              const ExtrapolationOptions& opts = {});
NullEstimate extrapolate_null(std::span<const SlopeMeasurement> measurements,
                              const ExtrapolationOptions& opts = {});

std::vector<GroupIndexPoint> to_group_index(std::span<const SlopeMeasurement> measurements,
                                            double carrier_rad_s = constants::carrier_angular_frequency);

// |slope| at the smallest Delta divided by |slope| at the largest Delta.
double slope_range_factor(std::span<const SlopeMeasurement> measurements);
double slope_range_factor(std::span<const GroupIndexPoint> points,
                          double carrier_rad_s = constants::carrier_angular_frequency);

}  // namespace biraman::cad
