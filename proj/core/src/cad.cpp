#include "biraman/cad.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "biraman/errors.hpp"

namespace biraman::cad {

std::string_view to_string(NullMethod m) noexcept {
    switch (m) {
        case NullMethod::model_root: return "model_root";
        case NullMethod::data_extrapolation: return "data_extrapolation";
    }
    return "unknown";
}

std::string_view to_string(ExtrapolationFit f) noexcept {
    switch (f) {
        case ExtrapolationFit::log_linear_trailing: return "log_linear_trailing";
        case ExtrapolationFit::doublet_model: return "doublet_model";
    }
    return "unknown";
}

namespace {

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double slope_stderr = 0.0;
};

LineFit least_squares_line(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    if (x.size() > 2) {
        double ssr = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - (f.intercept + f.slope * x[i]);
            ssr += r * r;
        }
        f.slope_stderr = std::sqrt(ssr / (n - 2.0) / sxx);
    }
    return f;
}

double center_slope_factor(double half_width, double delta_hz) {
    const double quarter_d2 = std::pow(constants::pi * delta_hz, 2);
    const double g2 = half_width * half_width;
    const double den = quarter_d2 + g2;
    return (g2 - quarter_d2) / (den * den);
}

}  // namespace

SlopeMeasurement fit_linear_slope(const SpectralProfile& profile, double center_hz,
                                  double bandwidth_hz) {
    if (profile.kind != ProfileKind::index_deviation) {
        throw Error(ErrorCode::wrong_profile_kind, "fit_linear_slope expects an index profile");
    }
    if (!(bandwidth_hz > 0.0)) {
        throw Error(ErrorCode::invalid_params, "fit bandwidth must be > 0");
    }
    profile.validate();
    const double lo = center_hz - 0.5 * bandwidth_hz;
    const double hi = center_hz + 0.5 * bandwidth_hz;
    const double slack = 0.5 * profile.spacing();
    if (profile.detunings.front() > lo + slack || profile.detunings.back() < hi - slack) {
        throw Error(ErrorCode::insufficient_coverage, "profile does not cover the fit window");
    }

    std::vector<double> x, y;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const double d = profile.detunings[i];
        if (d >= lo && d <= hi) {
            x.push_back(constants::two_pi * d);
            y.push_back(profile.values[i].real());
        }
    }
    if (x.size() < 8) {
        throw Error(ErrorCode::insufficient_samples, "fewer than 8 samples inside the fit window");
    }
    const LineFit f = least_squares_line(x, y);
    return SlopeMeasurement{0.0, f.slope, bandwidth_hz, f.slope_stderr};
}

double ng_from_slope(double slope, double carrier_rad_s) noexcept {
    return constants::background_index + carrier_rad_s * slope;
}

double slope_from_ng(double n_g, double carrier_rad_s) noexcept {
    return (n_g - constants::background_index) / carrier_rad_s;
}

double cad_threshold_slope(double carrier_rad_s) noexcept {
    return -constants::background_index / carrier_rad_s;
}

double model_slope_at_center(const medium::MediumParams& p) {
    return p.line_amplitude * center_slope_factor(p.half_width, p.pump_separation);
}

double center_group_index(const medium::MediumParams& p, double delta_hz) {
    return ng_from_slope(p.line_amplitude * center_slope_factor(p.half_width, delta_hz),
                         p.carrier_angular_frequency);
}

NullEstimate find_null_delta(const medium::MediumParams& p, double lo_hz, double hi_hz) {
    p.validate();
    if (!(lo_hz >= 0.0) || !(hi_hz > lo_hz)) {
        throw Error(ErrorCode::invalid_params, "bracket must satisfy 0 <= lo < hi");
    }
    double lo = lo_hz, hi = hi_hz;
    double f_lo = center_group_index(p, lo);
    const double f_hi = center_group_index(p, hi);
    if (f_lo == 0.0) return {lo, NullMethod::model_root, "bisection", lo, lo};
    if (f_hi == 0.0) return {hi, NullMethod::model_root, "bisection", hi, hi};
    if ((f_lo < 0.0) == (f_hi < 0.0)) {
        std::ostringstream msg;
        msg << "n_g does not change sign on [" << lo_hz << ", " << hi_hz << "] Hz (n_g = " << f_lo
            << ", " << f_hi << ")";
        throw Error(ErrorCode::no_sign_change, msg.str());
    }

    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = center_group_index(p, mid);
        if (f_mid == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return {0.5 * (lo + hi), NullMethod::model_root, "bisection", lo, hi};
}

std::pair<double, double> bracket_upper_null(const medium::MediumParams& p) {
    p.validate();
    // Below Delta = gamma/pi the center slope is positive (n_g > 1).
    double delta = p.half_width / constants::pi;
    // Beyond d^2/4 > 4 omega_o M the center n_g exceeds 0.75.
    const double stop = 4.0 * std::sqrt(p.carrier_angular_frequency * p.line_amplitude) /
                            constants::pi + 10.0 * delta;
    double prev_delta = delta;
    double prev_ng = center_group_index(p, delta);
    bool seen_negative = prev_ng < 0.0;
    std::pair<double, double> bracket{0.0, 0.0};
    bool found = false;
    while (delta < stop) {
        delta *= 1.02;
        const double ng = center_group_index(p, delta);
        if (ng < 0.0) seen_negative = true;
        if (prev_ng < 0.0 && ng >= 0.0) {
            bracket = {prev_delta, delta};
            found = true;
        }
        prev_delta = delta;
        prev_ng = ng;
    }
    if (!seen_negative || !found) {
        throw Error(ErrorCode::no_sign_change, "the model group index never crosses zero");
    }
    return bracket;
}

std::vector<GroupIndexPoint> to_group_index(std::span<const SlopeMeasurement> measurements,
                                            double carrier_rad_s) {
    std::vector<GroupIndexPoint> out;
    out.reserve(measurements.size());
    for (const auto& m : measurements) {
        out.push_back({m.pump_separation_hz, ng_from_slope(m.slope, carrier_rad_s)});
    }
    return out;
}

namespace {

std::vector<GroupIndexPoint> checked_sorted(std::span<const GroupIndexPoint> points) {
    if (points.size() < 3) {
        throw Error(ErrorCode::too_few_points, "null extrapolation needs at least 3 points");
    }
    std::vector<GroupIndexPoint> pts(points.begin(), points.end());
    for (const auto& p : pts) {
        if (!std::isfinite(p.pump_separation_hz) || !std::isfinite(p.n_g)) {
            throw Error(ErrorCode::invalid_data, "non-finite measurement");
        }
        if (!(p.pump_separation_hz > 0.0)) {
            throw Error(ErrorCode::invalid_data, "pump separation must be > 0");
        }
        if (!(p.n_g < constants::background_index)) {
            throw Error(ErrorCode::invalid_data, "points must have n_g < 1 (anomalous dispersion)");
        }
    }
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.pump_separation_hz < b.pump_separation_hz;
    });
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].pump_separation_hz == pts[i - 1].pump_separation_hz) {
            throw Error(ErrorCode::non_monotone_data, "pump separations must be distinct");
        }
        if (!(1.0 - pts[i].n_g < 1.0 - pts[i - 1].n_g)) {
            throw Error(ErrorCode::non_monotone_data, "1 - n_g must decrease with pump separation");
        }
    }
    return pts;
}

double log_linear_root(std::span<const GroupIndexPoint> pts) {
    std::vector<double> x, y;
    for (const auto& p : pts) {
        x.push_back(p.pump_separation_hz);
        y.push_back(std::log(constants::background_index - p.n_g));
    }
    const LineFit f = least_squares_line(x, y);
    return -f.intercept / f.slope;
}

// Fits (log M, log gamma) so that log(1 - n_g) of the doublet center matches
// the data, then returns the upper null of the fitted model.
double doublet_model_root(std::span<const GroupIndexPoint> pts, double carrier,
                          double half_width_hint) {
    const double delta_min = pts.front().pump_separation_hz;
    const double gamma0 = half_width_hint > 0.0 ? half_width_hint : 0.5 * constants::pi * delta_min;

    auto log_excess = [&](double log_m, double log_g, double delta) {
        const double s = std::exp(log_m) * center_slope_factor(std::exp(log_g), delta);
        const double excess = -carrier * s;  // 1 - n_g
        return excess > 0.0 ? std::log(excess) : std::numeric_limits<double>::quiet_NaN();
    };

    double m0_log = 0.0;
    for (const auto& p : pts) {
        const double f = center_slope_factor(gamma0, p.pump_separation_hz);
        m0_log += std::log((constants::background_index - p.n_g) / (-carrier * f));
    }
    Eigen::Vector2d q{m0_log / static_cast<double>(pts.size()), std::log(gamma0)};

    const Eigen::Index n = static_cast<Eigen::Index>(pts.size());
    auto residuals = [&](const Eigen::Vector2d& v) {
        Eigen::VectorXd r(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto& p = pts[static_cast<std::size_t>(i)];
            const double model = log_excess(v[0], v[1], p.pump_separation_hz);
            r[i] = std::isfinite(model) ? model - std::log(constants::background_index - p.n_g)
                                        : 1e6;
        }
        return r;
    };

    Eigen::VectorXd res = residuals(q);
    double cost = res.squaredNorm();
    double lambda = 1e-3;
    for (int it = 0; it < 500; ++it) {
        Eigen::MatrixXd jac(n, 2);
        for (int c = 0; c < 2; ++c) {
            Eigen::Vector2d dq = q;
            const double h = 1e-6 * std::max(1.0, std::abs(q[c]));
            dq[c] += h;
            jac.col(c) = (residuals(dq) - res) / h;
        }
        const Eigen::Matrix2d jtj = jac.transpose() * jac;
        const Eigen::Vector2d jtr = jac.transpose() * res;
        bool improved = false;
        while (lambda < 1e12) {
            Eigen::Matrix2d a = jtj;
            a.diagonal() *= (1.0 + lambda);
            const Eigen::Vector2d trial = q + a.ldlt().solve(-jtr);
            const Eigen::VectorXd trial_res = residuals(trial);
            const double trial_cost = trial_res.squaredNorm();
            if (trial_cost < cost) {
                const bool done = (cost - trial_cost) <= 1e-15 * std::max(cost, 1e-30);
                q = trial;
                res = trial_res;
                cost = trial_cost;
                lambda = std::max(lambda * 0.3, 1e-12);
                improved = !done;
                break;
            }
            lambda *= 10.0;
        }
        if (!improved) break;
    }

    medium::MediumParams fitted;
    fitted.line_amplitude = std::exp(q[0]);
    fitted.half_width = std::exp(q[1]);
    fitted.carrier_angular_frequency = carrier;
    const auto [lo, hi] = bracket_upper_null(fitted);
    return find_null_delta(fitted, lo, hi).delta_null_hz;
}

double students_t_quantile(double confidence, std::size_t dof) {
    boost::math::students_t dist(static_cast<double>(dof));
    return boost::math::quantile(dist, 0.5 + 0.5 * confidence);
}

}  // namespace

NullEstimate extrapolate_null(std::span<const GroupIndexPoint> points,
                              const ExtrapolationOptions& opts) {
    const auto sorted = checked_sorted(points);

    std::vector<GroupIndexPoint> used;
    std::function<double(std::span<const GroupIndexPoint>)> estimator;
    std::string tag;
    if (opts.fit == ExtrapolationFit::log_linear_trailing) {
        const std::size_t k = std::clamp<std::size_t>(opts.trailing_points, 3, sorted.size());
        used.assign(sorted.end() - static_cast<std::ptrdiff_t>(k), sorted.end());
        estimator = log_linear_root;
        tag = "log_linear_trailing" + std::to_string(k);
    } else {
        used = sorted;
        estimator = [&](std::span<const GroupIndexPoint> pts) {
            return doublet_model_root(pts, opts.carrier_rad_s, opts.half_width_hint);
        };
        tag = "doublet_model_lsq";
    }

    const double estimate = estimator(used);

    // Jackknife over the points that enter the fit.
    const std::size_t n = used.size();
    std::vector<double> loo(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<GroupIndexPoint> subset;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) subset.push_back(used[j]);
        }
        loo[i] = estimator(subset);
    }
    const double mean = std::accumulate(loo.begin(), loo.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (const double v : loo) ss += (v - mean) * (v - mean);
    const double se = std::sqrt(static_cast<double>(n - 1) / static_cast<double>(n) * ss);
    const double half = students_t_quantile(opts.confidence, n - 1) * se;

    NullEstimate out;
    out.delta_null_hz = estimate;
    out.method = NullMethod::data_extrapolation;
    out.fit = tag;
    out.interval_lo_hz = std::min(estimate, std::max(0.0, estimate - half));
    out.interval_hi_hz = estimate + half;
    return out;
}

NullEstimate extrapolate_null(std::span<const SlopeMeasurement> measurements,
                              const ExtrapolationOptions& opts) {
    const auto pts = to_group_index(measurements, opts.carrier_rad_s);
    return extrapolate_null(std::span<const GroupIndexPoint>(pts), opts);
}

double slope_range_factor(std::span<const SlopeMeasurement> measurements) {
    if (measurements.size() < 2) {
        throw Error(ErrorCode::too_few_points, "slope range needs at least 2 measurements");
    }
    const auto [lo, hi] = std::minmax_element(
        measurements.begin(), measurements.end(),
        [](const auto& a, const auto& b) { return a.pump_separation_hz < b.pump_separation_hz; });
    if (hi->slope == 0.0) {
        throw Error(ErrorCode::invalid_data, "zero slope at the largest pump separation");
    }
    return std::abs(lo->slope) / std::abs(hi->slope);
}

double slope_range_factor(std::span<const GroupIndexPoint> points, double carrier_rad_s) {
    std::vector<SlopeMeasurement> m;
    for (const auto& p : points) {
        m.push_back({p.pump_separation_hz, slope_from_ng(p.n_g, carrier_rad_s), 0.0, 0.0});
    }
    return slope_range_factor(std::span<const SlopeMeasurement>(m));
}

}  // namespace biraman::cad
