#include "biraman/heterodyne.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "biraman/errors.hpp"
#include "biraman/format.hpp"
#include "fft.hpp"

namespace biraman::heterodyne {

namespace {

// Single-pole sections above this fraction of the sample rate no longer
// track the analog response they stand in for.
constexpr double max_cutoff_fraction = 0.125;
constexpr double settle_fraction = 0.15;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void single_pole_pass(std::vector<double>& x, double alpha, bool reverse) {
    const double init = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    double y = init;
    if (reverse) {
        for (auto it = x.rbegin(); it != x.rend(); ++it) {
            y += alpha * (*it - y);
            *it = y;
        }
    } else {
        for (double& v : x) {
            y += alpha * (v - y);
            v = y;
        }
    }
}

void lowpass_zero_phase(std::vector<double>& x, double cutoff_hz, double fs, int order) {
    const double alpha = 1.0 - std::exp(-constants::two_pi * cutoff_hz / fs);
    for (int s = 0; s < order; ++s) {
        single_pole_pass(x, alpha, false);
        single_pole_pass(x, alpha, true);
    }
}

std::pair<std::size_t, std::size_t> interior(std::size_t n) {
    const auto skip = static_cast<std::size_t>(settle_fraction * static_cast<double>(n));
    return {skip, n - skip};
}

double rms_amplitude(std::span<const double> x) {
    const auto [a, b] = interior(x.size());
    double ss = 0.0;
    for (std::size_t i = a; i < b; ++i) ss += x[i] * x[i];
    return std::sqrt(2.0 * ss / static_cast<double>(b - a));
}

void check_pair(const BeatRecord& signal, const BeatRecord& reference) {
    signal.validate();
    reference.validate();
    if (signal.sample_rate_hz != reference.sample_rate_hz ||
        signal.beat_frequency_hz != reference.beat_frequency_hz) {
        throw Error(ErrorCode::rate_mismatch,
                    "signal and reference differ in sample rate or beat frequency");
    }
    if (signal.samples.size() != reference.samples.size()) {
        throw Error(ErrorCode::rate_mismatch, "signal and reference differ in length");
    }
}

struct Mixed {
    std::vector<double> normalized;  // cos(dphi - bias) per sample
    double amplitude = 0.0;
};

Mixed mix_and_filter(const BeatRecord& signal, const BeatRecord& reference,
                     const DemodConfig& cfg, double cutoff_hz, int order) {
    const auto& r = reference.samples;
    const auto hr = detail::hilbert(r);
    const double cb = std::cos(cfg.quadrature_bias);
    const double sb = std::sin(cfg.quadrature_bias);

    Mixed out;
    out.normalized.resize(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double shifted = r[i] * cb - hr[i] * sb;  // reference advanced by the bias
        out.normalized[i] = signal.samples[i] * shifted;
    }
    lowpass_zero_phase(out.normalized, cutoff_hz, signal.sample_rate_hz, order);

    out.amplitude = 0.5 * rms_amplitude(signal.samples) * rms_amplitude(r);
    if (out.amplitude > 0.0) {
        for (double& v : out.normalized) v /= out.amplitude;
    }
    return out;
}

double arcsine_phase(double normalized, double bias) {
    return std::asin(std::clamp(normalized, -1.0, 1.0)) + bias - constants::pi / 2.0;
}

}  // namespace

void BeatSpec::validate() const {
    if (!(beat_frequency_hz > 0.0) || !(sample_rate_hz > 2.0 * beat_frequency_hz)) {
        throw Error(ErrorCode::undersampled, "sample rate must exceed twice the beat frequency");
    }
}

void BeatRecord::validate() const {
    BeatSpec{sample_rate_hz, beat_frequency_hz}.validate();
    if (samples.empty()) throw Error(ErrorCode::invalid_params, "beat record is empty");
}

void DemodConfig::validate(const BeatSpec& beat) const {
    if (!(lowpass_cutoff_hz > 0.0) || !(lowpass_cutoff_hz < beat.beat_frequency_hz)) {
        throw Error(ErrorCode::invalid_params, "lowpass cutoff must lie in (0, beat frequency)");
    }
    if (lowpass_cutoff_hz > max_cutoff_fraction * beat.sample_rate_hz) {
        throw Error(ErrorCode::filter_unstable, "lowpass cutoff too close to Nyquist");
    }
    if (filter_order < 1 || filter_order > 8) {
        throw Error(ErrorCode::invalid_params, "filter order must be in [1, 8]");
    }
    if (!(noise.phase_jitter_rms >= 0.0) || !(noise.intensity_noise_rel >= 0.0)) {
        throw Error(ErrorCode::invalid_params, "noise magnitudes must be >= 0");
    }
    if (!std::isfinite(quadrature_bias)) {
        throw Error(ErrorCode::invalid_params, "quadrature bias must be finite");
    }
}

BeatRecord synthesize_beat(std::span<const double> phase_trace, double gain_linear,
                           const BeatSpec& spec, const NoiseConfig& noise) {
    spec.validate();
    if (!(gain_linear >= 0.0)) throw Error(ErrorCode::invalid_params, "gain must be >= 0");
    const double min_samples = 10.0 * spec.sample_rate_hz / spec.beat_frequency_hz;
    if (static_cast<double>(phase_trace.size()) < min_samples) {
        throw Error(ErrorCode::invalid_params, "record shorter than 10 beat periods");
    }

    std::mt19937_64 rng(splitmix64(noise.seed));
    std::normal_distribution<double> normal(0.0, 1.0);
    const double jitter = noise.phase_jitter_rms > 0.0 ? noise.phase_jitter_rms * normal(rng) : 0.0;

    BeatRecord rec;
    rec.sample_rate_hz = spec.sample_rate_hz;
    rec.beat_frequency_hz = spec.beat_frequency_hz;
    rec.samples.resize(phase_trace.size());
    const double amp = std::sqrt(gain_linear);
    const double w = constants::two_pi * spec.beat_frequency_hz / spec.sample_rate_hz;
    for (std::size_t n = 0; n < phase_trace.size(); ++n) {
        double a = amp;
        if (noise.intensity_noise_rel > 0.0) a *= 1.0 + noise.intensity_noise_rel * normal(rng);
        rec.samples[n] = a * std::cos(w * static_cast<double>(n) + phase_trace[n] + jitter);
    }
    return rec;
}

BeatRecord synthesize_beat(double phase, double gain_linear, const BeatSpec& spec,
                           double duration_s, const NoiseConfig& noise) {
    spec.validate();
    if (!(duration_s > 0.0)) throw Error(ErrorCode::invalid_params, "duration must be > 0");
    const auto n = static_cast<std::size_t>(std::llround(duration_s * spec.sample_rate_hz));
    const std::vector<double> trace(n, phase);
    return synthesize_beat(trace, gain_linear, spec, noise);
}

DemodResult demodulate(const BeatRecord& signal, const BeatRecord& reference,
                       const DemodConfig& cfg) {
    check_pair(signal, reference);
    cfg.validate({signal.sample_rate_hz, signal.beat_frequency_hz});

    const Mixed mixed = mix_and_filter(signal, reference, cfg, cfg.lowpass_cutoff_hz,
                                       cfg.filter_order);
    const auto [a, b] = interior(mixed.normalized.size());
    const double q = std::accumulate(mixed.normalized.begin() + static_cast<std::ptrdiff_t>(a),
                                     mixed.normalized.begin() + static_cast<std::ptrdiff_t>(b),
                                     0.0) /
                     static_cast<double>(b - a);

    DemodResult out;
    out.small_angle = q + cfg.quadrature_bias - constants::pi / 2.0;
    out.phase = arcsine_phase(q, cfg.quadrature_bias);
    out.amplitude = mixed.amplitude;
    return out;
}

std::vector<double> demodulate_trace(const BeatRecord& signal, const BeatRecord& reference,
                                     const DemodConfig& cfg) {
    check_pair(signal, reference);
    const BeatSpec beat{signal.sample_rate_hz, signal.beat_frequency_hz};
    double cutoff = cfg.lowpass_cutoff_hz;
    int order = cfg.filter_order;
    if (!cfg.lowpass_enabled) {
        cutoff = 0.25 * signal.beat_frequency_hz;
        order = std::max(order, 2);
    }
    DemodConfig effective = cfg;
    effective.lowpass_cutoff_hz = cutoff;
    effective.filter_order = order;
    effective.validate(beat);

    Mixed mixed = mix_and_filter(signal, reference, effective, cutoff, order);
    for (double& v : mixed.normalized) v = arcsine_phase(v, cfg.quadrature_bias);
    return std::move(mixed.normalized);
}

void SweepSpec::validate() const {
    if (points < 2 || !(stop_hz > start_hz) || !std::isfinite(start_hz) || !std::isfinite(stop_hz)) {
        throw Error(ErrorCode::invalid_params, "sweep needs points >= 2 and stop > start");
    }
}

SpectralProfile sweep_measure(const medium::MediumParams& params, const SweepSpec& sweep,
                              const DemodConfig& cfg, const SweepOptions& opts) {
    params.validate();
    sweep.validate();
    opts.beat.validate();
    cfg.validate(opts.beat);

    const double kl = params.wavenumber() * params.cell_length;
    auto noise_for = [&](std::uint64_t stream) {
        NoiseConfig n = cfg.noise;
        n.seed = splitmix64(cfg.noise.seed ^ splitmix64(stream));
        return n;
    };

    // Zero-phase calibration run removes the demodulator offset.
    const auto cal_sig = synthesize_beat(0.0, 1.0, opts.beat, opts.record_duration_s, noise_for(0));
    const auto cal_ref = synthesize_beat(0.0, 1.0, opts.beat, opts.record_duration_s, noise_for(1));
    const double offset = demodulate(cal_sig, cal_ref, cfg).phase;

    SpectralProfile out;
    out.kind = ProfileKind::index_deviation;
    out.detunings = linspace(sweep.start_hz, sweep.stop_hz, sweep.points);
    out.values.resize(sweep.points);
    for (std::size_t i = 0; i < sweep.points; ++i) {
        const double d = out.detunings[i];
        const double phase = kl * medium::index_deviation(params, d);
        const double gain = std::pow(10.0, medium::gain_db(params, d) / 10.0);
        const auto sig = synthesize_beat(phase, gain, opts.beat, opts.record_duration_s,
                                         noise_for(2 * i + 2));
        const auto ref = synthesize_beat(0.0, 1.0, opts.beat, opts.record_duration_s,
                                         noise_for(2 * i + 3));
        out.values[i] = (demodulate(sig, ref, cfg).phase - offset) / kl;
    }
    return out;
}

double small_angle_ratio(double delta_n, double cell_length_m, double wavenumber) noexcept {
    return std::abs(wavenumber * delta_n * cell_length_m);
}

void write_beat_csv(std::ostream& os, const BeatRecord& record) {
    os << "time_s,amplitude\n";
    for (std::size_t n = 0; n < record.samples.size(); ++n) {
        const double t = static_cast<double>(n) / record.sample_rate_hz;
        os << fmt9(t) << ',' << fmt9(record.samples[n]) << '\n';
    }
}

BeatRecord read_beat_csv(std::istream& is, double beat_frequency_hz) {
    std::string line;
    std::vector<double> t, a;
    bool header = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line.rfind("time_s,amplitude", 0) != 0) {
                throw Error(ErrorCode::invalid_data, "beat CSV header must be time_s,amplitude");
            }
            header = true;
            continue;
        }
        std::istringstream row(line);
        std::string ts, as;
        if (!std::getline(row, ts, ',') || !std::getline(row, as)) {
            throw Error(ErrorCode::invalid_data, "malformed beat CSV row: " + line);
        }
        const auto tv = parse_finite(ts);
        const auto av = parse_finite(as);
        if (!tv || !av) throw Error(ErrorCode::invalid_data, "non-numeric beat CSV row: " + line);
        t.push_back(*tv);
        a.push_back(*av);
    }
    if (!header) throw Error(ErrorCode::invalid_data, "beat CSV is missing its header");
    if (t.size() < 2) throw Error(ErrorCode::invalid_data, "beat CSV needs at least 2 samples");
    BeatRecord rec;
    rec.samples = std::move(a);
    rec.sample_rate_hz = static_cast<double>(t.size() - 1) / (t.back() - t.front());
    rec.beat_frequency_hz = beat_frequency_hz;
    return rec;
}

void write_profile_csv(std::ostream& os, const SpectralProfile& profile) {
    os << "delta_hz,delta_n\n";
    for (std::size_t i = 0; i < profile.size(); ++i) {
        os << fmt9(profile.detunings[i]) << ',' << fmt9(profile.values[i].real()) << '\n';
    }
}

}  // namespace biraman::heterodyne
