#include "biraman/kramers_kronig.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "biraman/constants.hpp"
#include "biraman/errors.hpp"
#include "fft.hpp"

namespace biraman::medium {

double estimate_support(const SpectralProfile& profile) {
    const auto& x = profile.detunings;
    std::vector<double> mag(profile.size());
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(profile.values[i].imag());

    const auto peak_it = std::max_element(mag.begin(), mag.end());
    if (peak_it == mag.end() || *peak_it == 0.0) return 0.0;
    const double half = 0.5 * *peak_it;

    std::size_t lo = 0;
    while (mag[lo] < half) ++lo;
    std::size_t hi = mag.size() - 1;
    while (mag[hi] < half) --hi;

    // Outer shoulder on each side: distance from the half-maximum crossing
    // back to the nearest local maximum.
    auto shoulder_right = [&] {
        std::size_t i = hi;
        while (i > lo && mag[i - 1] >= mag[i]) --i;
        return x[hi] - x[i];
    };
    auto shoulder_left = [&] {
        std::size_t i = lo;
        while (i < hi && mag[i + 1] >= mag[i]) ++i;
        return x[i] - x[lo];
    };
    const double shoulder = std::max(shoulder_right(), shoulder_left());
    const double spacing = profile.spacing();
    return 0.5 * (x[hi] - x[lo]) + 4.0 * std::max(shoulder, spacing);
}

SpectralProfile kramers_kronig(const SpectralProfile& profile) {
    if (profile.kind != ProfileKind::susceptibility) {
        throw Error(ErrorCode::wrong_profile_kind,
                    "kramers_kronig expects a susceptibility profile");
    }
    profile.validate();
    if (!profile.is_uniform()) {
        throw Error(ErrorCode::non_uniform_grid, "detuning grid must be uniformly spaced");
    }

    const std::size_t n = profile.size();
    SpectralProfile out;
    out.kind = ProfileKind::index_deviation;
    out.detunings = profile.detunings;
    out.values.assign(n, 0.0);

    const double support = estimate_support(profile);
    if (support == 0.0) return out;

    const double span = profile.detunings.back() - profile.detunings.front();
    if (span < kk_min_span_ratio * support) {
        std::ostringstream msg;
        msg << "grid span " << span << " Hz is below " << kk_min_span_ratio
            << "x the estimated spectral support " << support << " Hz";
        throw Error(ErrorCode::grid_too_narrow, msg.str());
    }

    // out_i = sum_j f_j * kernel[i - j], kernel[m] = -2 / (pi m) for odd m.
    const std::size_t len = detail::next_pow2(2 * n);
    std::vector<double> signal(len, 0.0);
    for (std::size_t i = 0; i < n; ++i) signal[i] = profile.values[i].imag();

    std::vector<double> kernel(len, 0.0);
    for (std::size_t m = 1; m < n; m += 2) {
        const double k = -2.0 / (constants::pi * static_cast<double>(m));
        kernel[m] = k;
        kernel[len - m] = -k;
    }

    auto fs = detail::rfft(signal);
    const auto fk = detail::rfft(kernel);
    for (std::size_t b = 0; b < fs.size(); ++b) fs[b] *= fk[b];
    const auto conv = detail::irfft(fs, len);

    for (std::size_t i = 0; i < n; ++i) out.values[i] = 0.5 * conv[i];
    return out;
}

}  // namespace biraman::medium
