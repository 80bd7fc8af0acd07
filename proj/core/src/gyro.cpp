#include "biraman/gyro.hpp"

#include <cmath>

#include "biraman/cad.hpp"
#include "biraman/errors.hpp"

namespace biraman::gyro {

EnhancementReport scale_factor_enhancement(double n_g, double epsilon) {
    if (!(epsilon > 0.0)) throw Error(ErrorCode::invalid_params, "epsilon must be > 0");
    if (!std::isfinite(n_g)) throw Error(ErrorCode::invalid_params, "n_g must be finite");

    EnhancementReport r;
    r.n_g = n_g;
    const double mag = std::abs(n_g);
    if (mag < epsilon) {
        r.diverged = true;
        r.enhancement = 1.0 / epsilon;
        r.note = "group index within epsilon of its null; enhancement reported as the 1/epsilon bound";
        return r;
    }
    r.enhancement = 1.0 / mag;
    if (mag > 1.0) {
        r.note = n_g < 0.0 ? "negative n_g with |n_g| > 1: operation at |n_g| < 1 is required for enhancement > 1"
                           : "|n_g| > 1: no enhancement";
    }
    return r;
}

double linear_bandwidth(const medium::MediumParams& p, double threshold) {
    p.validate();
    if (!(threshold > 0.0)) throw Error(ErrorCode::invalid_params, "threshold must be > 0");
    const double slope = medium::index_slope(p, 0.0);
    if (slope == 0.0) return 0.0;

    auto deviation = [&](double d) {
        const double tangent = slope * constants::two_pi * d;
        return std::abs(medium::index_deviation(p, d) - tangent) / std::abs(tangent);
    };

    const double hwhm_hz = p.half_width / constants::two_pi;
    const double scale = p.pump_separation > 0.0 ? std::min(hwhm_hz, 0.5 * p.pump_separation) : hwhm_hz;
    const double step = scale / 400.0;
    const double limit = 20.0 * medium::spectral_support(p);

    double lo = 0.0;
    double hi = step;
    while (deviation(hi) < threshold) {
        lo = hi;
        hi += step;
        if (hi > limit) return 2.0 * limit;
    }
    for (int it = 0; it < 80 && hi - lo > 1e-9 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (deviation(mid) < threshold) lo = mid;
        else hi = mid;
    }
    return lo + hi;  // full width, 2 * edge
}

std::vector<EnhancementReport> enhancement_sweep(const medium::MediumParams& params,
                                                 double delta_lo_hz, double delta_hi_hz,
                                                 std::size_t points, double epsilon,
                                                 double linearity_threshold) {
    params.validate();
    if (!(delta_lo_hz > 0.0) || !(delta_hi_hz > delta_lo_hz) || points < 2) {
        throw Error(ErrorCode::invalid_params, "sweep needs 0 < lo < hi and points >= 2");
    }
    std::vector<EnhancementReport> out;
    out.reserve(points);
    for (const double delta : linspace(delta_lo_hz, delta_hi_hz, points)) {
        const auto p = params.with_pump_separation(delta);
        const double n_g = cad::ng_from_slope(cad::model_slope_at_center(p),
                                              p.carrier_angular_frequency);
        auto r = scale_factor_enhancement(n_g, epsilon);
        r.pump_separation_hz = delta;
        r.linear_bandwidth_hz = params.line_amplitude > 0.0 ? linear_bandwidth(p, linearity_threshold) : 0.0;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace biraman::gyro
