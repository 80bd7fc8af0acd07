#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "biraman/errors.hpp"
#include "biraman/lineshape.hpp"

namespace biraman::medium {

namespace {

double lorentzian(const Eigen::Vector4d& q, double x) {
    const double u = (x - q[1]) / q[2];
    return q[0] / (1.0 + u * u) + q[3];
}

}  // namespace

LorentzianFit fit_lorentzian_peak(const SpectralProfile& profile, double near_hz,
                                  double window_fwhm) {
    profile.validate();
    const auto& x = profile.detunings;
    const auto y = profile.real_values();
    const std::size_t n = x.size();

    // Hill-climb from the sample nearest the hint to a local maximum.
    std::size_t i = static_cast<std::size_t>(
        std::lower_bound(x.begin(), x.end(), near_hz) - x.begin());
    i = std::min(i, n - 1);
    for (;;) {
        if (i + 1 < n && y[i + 1] > y[i]) ++i;
        else if (i > 0 && y[i - 1] > y[i]) --i;
        else break;
    }
    const std::size_t peak = i;

    // Half-maximum crossings relative to the lower of the two flanking minima.
    std::size_t l = peak, r = peak;
    while (l > 0 && y[l - 1] <= y[l]) --l;
    while (r + 1 < n && y[r + 1] <= y[r]) ++r;
    const double base = std::max(y[l], y[r]);
    const double half = base + 0.5 * (y[peak] - base);
    std::size_t hl = peak, hr = peak;
    while (hl > l && y[hl - 1] >= half) --hl;
    while (hr < r && y[hr + 1] >= half) ++hr;
    const double fwhm0 = std::max(x[hr] - x[hl], 2.0 * profile.spacing());

    const double lo = x[peak] - window_fwhm * fwhm0;
    const double hi = x[peak] + window_fwhm * fwhm0;
    std::vector<double> wx, wy;
    for (std::size_t k = 0; k < n; ++k) {
        if (x[k] >= lo && x[k] <= hi) {
            wx.push_back(x[k]);
            wy.push_back(y[k]);
        }
    }
    if (wx.size() < 8) {
        throw Error(ErrorCode::insufficient_samples, "fewer than 8 samples in the peak window");
    }

    const Eigen::Index m = static_cast<Eigen::Index>(wx.size());
    Eigen::Vector4d q{y[peak] - base, x[peak], 0.5 * fwhm0, base};

    auto residuals = [&](const Eigen::Vector4d& p) {
        Eigen::VectorXd res(m);
        for (Eigen::Index k = 0; k < m; ++k) res[k] = lorentzian(p, wx[k]) - wy[k];
        return res;
    };

    double lambda = 1e-3;
    Eigen::VectorXd res = residuals(q);
    double cost = res.squaredNorm();
    int it = 0;
    bool converged = false;
    for (; it < 200 && !converged; ++it) {
        Eigen::MatrixXd jac(m, 4);
        for (Eigen::Index k = 0; k < m; ++k) {
            const double u = (wx[k] - q[1]) / q[2];
            const double den = 1.0 + u * u;
            jac(k, 0) = 1.0 / den;
            jac(k, 1) = q[0] * 2.0 * u / (den * den * q[2]);
            jac(k, 2) = q[0] * 2.0 * u * u / (den * den * q[2]);
            jac(k, 3) = 1.0;
        }
        const Eigen::Matrix4d jtj = jac.transpose() * jac;
        const Eigen::Vector4d jtr = jac.transpose() * res;

        bool improved = false;
        while (lambda < 1e12) {
            Eigen::Matrix4d a = jtj;
            a.diagonal() *= (1.0 + lambda);
            const Eigen::Vector4d step = a.ldlt().solve(-jtr);
            Eigen::Vector4d trial = q + step;
            trial[2] = std::abs(trial[2]);
            const Eigen::VectorXd trial_res = residuals(trial);
            const double trial_cost = trial_res.squaredNorm();
            if (trial_cost < cost) {
                const double rel = (cost - trial_cost) / std::max(cost, 1e-300);
                q = trial;
                res = trial_res;
                cost = trial_cost;
                lambda = std::max(lambda * 0.3, 1e-12);
                improved = true;
                converged = rel < 1e-14;
                break;
            }
            lambda *= 10.0;
        }
        if (!improved) break;
    }

    LorentzianFit fit;
    fit.amplitude = q[0];
    fit.center_hz = q[1];
    fit.fwhm_hz = 2.0 * std::abs(q[2]);
    fit.offset = q[3];
    fit.rms_residual = std::sqrt(cost / static_cast<double>(m));
    fit.iterations = it;
    return fit;
}

}  // namespace biraman::medium
