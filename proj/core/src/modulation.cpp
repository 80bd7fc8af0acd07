#include "biraman/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "biraman/constants.hpp"
#include "biraman/errors.hpp"
#include "fft.hpp"

namespace biraman::modulation {

void FieldComponents::validate() const {
    if (amplitudes.empty() || amplitudes.front() == std::complex<double>{}) {
        throw Error(ErrorCode::invalid_params, "a_0 (amplified probe) must be nonzero");
    }
    if (!cascade_mode && max_harmonic() < 1) {
        throw Error(ErrorCode::invalid_params, "need at least one Raman component unless cascaded");
    }
    if (!(pump_separation_hz > 0.0)) {
        throw Error(ErrorCode::invalid_params, "pump separation must be > 0");
    }
}

FieldComponents FieldComponents::geometric_ladder(double pump_separation_hz,
                                                  std::size_t max_harmonic, double ratio,
                                                  double a0, bool cascade_mode) {
    FieldComponents fc;
    fc.pump_separation_hz = pump_separation_hz;
    fc.cascade_mode = cascade_mode;
    double a = a0;
    for (std::size_t m = 0; m <= max_harmonic; ++m, a *= ratio) fc.amplitudes.emplace_back(a);
    return fc;
}

std::vector<double> intensity_timeseries(const FieldComponents& fc, double duration_s,
                                         double sample_rate_hz) {
    fc.validate();
    if (!(sample_rate_hz > 4.0 * static_cast<double>(fc.max_harmonic()) * fc.pump_separation_hz)) {
        throw Error(ErrorCode::undersampled, "sample rate must exceed 4 * M_max * Delta");
    }
    if (!(duration_s > 0.0)) throw Error(ErrorCode::invalid_params, "duration must be > 0");
    const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));

    std::vector<double> out(n);
    if (fc.cascade_mode) {
        std::fill(out.begin(), out.end(), std::norm(fc.amplitudes.front()));
        return out;
    }
    const double w = constants::two_pi * fc.pump_separation_hz / sample_rate_hz;
    for (std::size_t i = 0; i < n; ++i) {
        std::complex<double> field{};
        for (std::size_t m = 0; m < fc.amplitudes.size(); ++m) {
            field += fc.amplitudes[m] *
                     std::polar(1.0, w * static_cast<double>(m) * static_cast<double>(i));
        }
        out[i] = std::norm(field);
    }
    return out;
}

std::vector<double> PowerSpectrum::power_db() const {
    std::vector<double> out(power.size());
    std::transform(power.begin(), power.end(), out.begin(), [](double p) {
        return 10.0 * std::log10(std::max(p, 1e-300));
    });
    return out;
}

double PowerSpectrum::total_power() const {
    return std::accumulate(power.begin(), power.end(), 0.0);
}

PowerSpectrum power_spectrum(std::span<const double> series, double sample_rate_hz) {
    const std::size_t n = series.size();
    if (n < 1024) throw Error(ErrorCode::too_short, "power spectrum needs >= 1024 samples");

    // Periodic Hann window.
    std::vector<double> windowed(n);
    double w2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w =
            0.5 * (1.0 - std::cos(constants::two_pi * static_cast<double>(i) / static_cast<double>(n)));
        windowed[i] = w * series[i];
        w2 += w * w;
    }
    const auto spec = detail::rfft(windowed);

    PowerSpectrum out;
    out.bin_width_hz = sample_rate_hz / static_cast<double>(n);
    out.frequency_hz.resize(spec.size());
    out.power.resize(spec.size());
    const double norm = 1.0 / (static_cast<double>(n) * w2);
    for (std::size_t k = 0; k < spec.size(); ++k) {
        out.frequency_hz[k] = static_cast<double>(k) * out.bin_width_hz;
        const bool unpaired = k == 0 || (n % 2 == 0 && k == n / 2);
        out.power[k] = (unpaired ? 1.0 : 2.0) * std::norm(spec[k]) * norm;
    }
    return out;
}

std::vector<double> find_peaks(const PowerSpectrum& spectrum, double floor_db) {
    const auto db = spectrum.power_db();
    const double top = *std::max_element(db.begin(), db.end());
    std::vector<double> peaks;
    for (std::size_t k = 0; k < db.size(); ++k) {
        if (db[k] < top + floor_db) continue;
        const bool left_ok = k == 0 || db[k] > db[k - 1];
        const bool right_ok = k + 1 == db.size() || db[k] > db[k + 1];
        if (left_ok && right_ok) peaks.push_back(spectrum.frequency_hz[k]);
    }
    return peaks;
}

std::vector<double> detector_filter(std::span<const double> series, double sample_rate_hz,
                                    const DetectorModel& det) {
    if (!(det.cutoff_hz > 0.0) || !(det.cutoff_hz < 0.5 * sample_rate_hz)) {
        throw Error(ErrorCode::filter_unstable, "detector cutoff must lie in (0, Nyquist)");
    }
    const std::size_t n = series.size();
    if (n == 0) return {};
    // Unit dc gain: a constant record passes through untouched.
    if (std::all_of(series.begin(), series.end(), [&](double v) { return v == series.front(); })) {
        return {series.begin(), series.end()};
    }
    auto spec = detail::rfft(series);
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const double ratio =
            static_cast<double>(k) * sample_rate_hz / static_cast<double>(n) / det.cutoff_hz;
        const bool nyquist = n % 2 == 0 && k == n / 2;
        if (nyquist) {
            spec[k] = spec[k].real() / std::hypot(1.0, ratio);  // must stay real
        } else {
            spec[k] /= std::complex<double>(1.0, ratio);
        }
    }
    return detail::irfft(spec, n);
}

double modulation_depth(std::span<const double> series) {
    if (series.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
    if (*hi == *lo) return 0.0;
    return (*hi - *lo) / (*hi + *lo);
}

std::vector<double> modulated_phase_trace(double mean_phase, const FieldComponents& fc,
                                          double sample_rate_hz, std::size_t samples) {
    const auto intensity =
        intensity_timeseries(fc, static_cast<double>(samples) / sample_rate_hz, sample_rate_hz);
    const double mean = std::accumulate(intensity.begin(), intensity.end(), 0.0) /
                        static_cast<double>(intensity.size());
    std::vector<double> out(intensity.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = mean_phase * intensity[i] / mean;
    return out;
}

}  // namespace biraman::modulation
