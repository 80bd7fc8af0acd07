#pragma once

#include <complex>
#include <span>
#include <vector>

namespace biraman::modulation {

// Amplified probe (m = 0) plus coherently scattered Raman components offset
// by integer multiples of the pump separation.
struct FieldComponents {
    std::vector<std::complex<double>> amplitudes;  // a_m at offset m * Delta
    double pump_separation_hz = 2e6;
    // Two cells, one pump each: no common atoms, so no beating.
    bool cascade_mode = false;

    std::size_t max_harmonic() const noexcept {
        return amplitudes.empty() ? 0 : amplitudes.size() - 1;
    }
    void validate() const;

    // a_m = a0 * ratio^m for m = 0..max_harmonic. The default ratio is
    // illustrative only; harmonic strengths were not reported.
    static FieldComponents geometric_ladder(double pump_separation_hz, std::size_t max_harmonic,
                                            double ratio = 0.2, double a0 = 1.0,
                                            bool cascade_mode = false);
};

struct DetectorModel {
    double cutoff_hz = 5e6;  // first-order low-pass
};

// I(t) = |sum_m a_m exp(i 2 pi m Delta t)|^2; constant |a_0|^2 in cascade mode.
// Throws Undersampled unless sample_rate > 4 * max_harmonic * Delta.
std::vector<double> intensity_timeseries(const FieldComponents& fc, double duration_s,
                                         double sample_rate_hz);

// One-sided power spectrum of a Hann-windowed record. `power` is scaled so
// that it sums to the mean square of the series (window-corrected); the dB
// values are 10 log10(power).
struct PowerSpectrum {
    std::vector<double> frequency_hz;
    std::vector<double> power;
    double bin_width_hz = 0.0;

    std::vector<double> power_db() const;
    double total_power() const;
};

// Throws TooShort for fewer than 1024 samples.
PowerSpectrum power_spectrum(std::span<const double> series, double sample_rate_hz);

// Local spectral maxima no more than `floor_db` below the strongest bin,
// returned as frequencies in ascending order. The dc bin counts when it is
// above its neighbor.
std::vector<double> find_peaks(const PowerSpectrum& spectrum, double floor_db = -80.0);

// Applies H(f) = 1 / (1 + i f / cutoff) to the record's periodic extension,
// so a tone at f is scaled by exactly 1 / sqrt(1 + (f / cutoff)^2).
// Throws FilterUnstable unless cutoff < sample_rate / 2.
std::vector<double> detector_filter(std::span<const double> series, double sample_rate_hz,
                                    const DetectorModel& det);

// (max - min) / (max + min); zero for a constant series.
double modulation_depth(std::span<const double> series);

// Index-profile modulation seen with the demodulator low-pass removed: the
// mean phase scaled sample by sample by I(t) / <I>.
std::vector<double> modulated_phase_trace(double mean_phase, const FieldComponents& fc,
                                          double sample_rate_hz, std::size_t samples);

}  // namespace biraman::modulation
