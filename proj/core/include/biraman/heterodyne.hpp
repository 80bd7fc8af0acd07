#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "biraman/constants.hpp"
#include "biraman/medium.hpp"
#include "biraman/spectral.hpp"

namespace biraman::heterodyne {

struct BeatSpec {
    double sample_rate_hz = 400e6;
    double beat_frequency_hz = 40e6;

    void validate() const;  // Undersampled unless sample_rate > 2 * beat
};

// Phase jitter is drawn once per record: the 20 us records are short
// compared with the electronic jitter correlation time, so within a record it
// acts as a static offset. Intensity noise is white per sample.
struct NoiseConfig {
    double phase_jitter_rms = 0.0;     // rad
    double intensity_noise_rel = 0.0;  // relative amplitude, per sample
    std::uint64_t seed = 0;

    bool enabled() const noexcept { return phase_jitter_rms > 0.0 || intensity_noise_rel > 0.0; }
};

struct BeatRecord {
    std::vector<double> samples;
    double sample_rate_hz = 400e6;
    double beat_frequency_hz = 40e6;

    double duration_s() const noexcept {
        return static_cast<double>(samples.size()) / sample_rate_hz;
    }
    void validate() const;
};

struct DemodConfig {
    double lowpass_cutoff_hz = 300e3;
    int filter_order = 1;  // cascaded single-pole sections, each run forward-backward
    double quadrature_bias = constants::pi / 2.0;
    // Off: the mixer output is only stripped of its 2f image, leaving any
    // fast phase modulation in demodulate_trace().
    bool lowpass_enabled = true;
    NoiseConfig noise;

    void validate(const BeatSpec& beat) const;
};

// samples[n] = sqrt(gain) * (1 + e_n) * cos(2 pi f t_n + phase + j), t_n = n / fs.
// Throws Undersampled, or InvalidParams for durations below 10 beat periods.
BeatRecord synthesize_beat(double phase, double gain_linear, const BeatSpec& spec,
                           double duration_s, const NoiseConfig& noise = {});

// Same with a per-sample phase trace; its length sets the record length.
BeatRecord synthesize_beat(std::span<const double> phase_trace, double gain_linear,
                           const BeatSpec& spec, const NoiseConfig& noise = {});

struct DemodResult {
    double phase = 0.0;        // arcsine-corrected estimate, rad
    double small_angle = 0.0;  // linear read-out, sin(phase) for bias pi/2
    double amplitude = 0.0;    // product of channel amplitudes / 2
};

// Mixes the signal with the quadrature-shifted reference, low-pass filters,
// normalizes by the channel amplitudes and applies the arcsine correction.
// The estimate is averaged over the central 70% of the record.
// Throws RateMismatch, FilterUnstable.
DemodResult demodulate(const BeatRecord& signal, const BeatRecord& reference,
                       const DemodConfig& cfg);

// Per-sample arcsine-corrected phase. With the low-pass disabled the filter
// is opened to a quarter of the beat frequency.
std::vector<double> demodulate_trace(const BeatRecord& signal, const BeatRecord& reference,
                                     const DemodConfig& cfg);

struct SweepSpec {
    double start_hz = -4e6;
    double stop_hz = 4e6;
    std::size_t points = 161;

    void validate() const;
};

struct SweepOptions {
    BeatSpec beat;
    double record_duration_s = 20e-6;
};

// Simulated swept-probe measurement: for each detuning both channels are
// synthesized (phase k * dn * L and the medium gain on the signal arm),
// demodulated, zero-offset calibrated and divided by k * L.
SpectralProfile sweep_measure(const medium::MediumParams& params, const SweepSpec& sweep,
                              const DemodConfig& cfg, const SweepOptions& opts = {});

// |k * dn * L|; below ~0.1 the demodulated amplitude is linear in phase.
double small_angle_ratio(double delta_n, double cell_length_m, double wavenumber) noexcept;

// CSV: "time_s,amplitude".
void write_beat_csv(std::ostream& os, const BeatRecord& record);
BeatRecord read_beat_csv(std::istream& is, double beat_frequency_hz = 40e6);

// CSV: "delta_hz,delta_n".
void write_profile_csv(std::ostream& os, const SpectralProfile& profile);

}  // namespace biraman::heterodyne
