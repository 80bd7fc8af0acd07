#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "biraman/cad.hpp"
#include "biraman/heterodyne.hpp"
#include "support/error_code.hpp"
#include "support/param_draws.hpp"

using namespace biraman;
using namespace biraman::heterodyne;

namespace {

constexpr double record_s = 20e-6;

double rms(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s / static_cast<double>(v.size()));
}

DemodResult round_trip(double phase, double gain, const DemodConfig& cfg = {}) {
    const BeatSpec spec;
    const auto sig = synthesize_beat(phase, gain, spec, record_s, cfg.noise);
    const auto ref = synthesize_beat(0.0, 1.0, spec, record_s);
    return demodulate(sig, ref, cfg);
}

}  // namespace

TEST_CASE("synthesize_beat waveforms") {
    const BeatSpec spec;
    SUBCASE("pure cosine") {
        const auto r = synthesize_beat(0.0, 1.0, spec, 1e-6);
        const double peak = *std::max_element(r.samples.begin(), r.samples.end());
        CHECK(std::abs(peak - 1.0) < 1e-12);
        CHECK(r.samples.size() == 400);
    }
    SUBCASE("quarter-period shift is a sine") {
        const auto r = synthesize_beat(constants::pi / 2.0, 1.0, spec, 1e-6);
        // cos(wt + pi/2) = -sin(wt): the zero crossing sits at t = 0.
        CHECK(std::abs(r.samples[0]) < 1e-12);
        const double w = constants::two_pi * spec.beat_frequency_hz / spec.sample_rate_hz;
        for (std::size_t n = 0; n < 50; ++n) CHECK(r.samples[n] == doctest::Approx(-std::sin(w * n)));
    }
    SUBCASE("3.5 dB gain scales the RMS by sqrt(2.24)") {
        const double g = std::pow(10.0, 0.35);
        const auto a = synthesize_beat(0.3, 1.0, spec, record_s);
        const auto b = synthesize_beat(0.3, g, spec, record_s);
        CHECK(rms(b.samples) / rms(a.samples) == doctest::Approx(std::sqrt(2.24)).epsilon(1e-3));
    }
    SUBCASE("errors") {
        BeatSpec slow{60e6, 40e6};
        CHECK(testing::error_code_of([&] { synthesize_beat(0.0, 1.0, slow, record_s); }) ==
              ErrorCode::undersampled);
        CHECK(testing::error_code_of([&] { synthesize_beat(0.0, 1.0, spec, 5.0 / 40e6); }) ==
              ErrorCode::invalid_params);
    }
    SUBCASE("seeded noise is reproducible") {
        NoiseConfig n{0.05, 0.01, 1234};
        const auto a = synthesize_beat(0.1, 1.0, spec, record_s, n);
        const auto b = synthesize_beat(0.1, 1.0, spec, record_s, n);
        CHECK(a.samples == b.samples);
        n.seed = 1235;
        const auto c = synthesize_beat(0.1, 1.0, spec, record_s, n);
        CHECK(a.samples != c.samples);
    }
}

TEST_CASE("demodulate recovers injected phases") {
    CHECK(std::abs(round_trip(0.0, 1.0).phase) < 1e-6);
    CHECK(std::abs(round_trip(0.05, 1.0).phase - 0.05) < 1e-3);

    const auto big = round_trip(0.8, 1.0);
    CHECK(std::abs(big.phase - 0.8) <= 0.01 * 0.8);
    // The small-angle read-out is sin(0.8): short by 1 - sin(0.8)/0.8.
    const double deviation = 1.0 - big.small_angle / 0.8;
    CHECK(deviation == doctest::Approx(1.0 - std::sin(0.8) / 0.8).epsilon(0.01));
}

TEST_CASE("round trip over random phases and gains") {
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> phase(-0.1, 0.1);
    std::uniform_real_distribution<double> gain(1.0, 16.0);
    for (int i = 0; i < 40; ++i) {
        const double dphi = phase(rng);
        CHECK(std::abs(round_trip(dphi, gain(rng)).phase - dphi) < 1e-3);
    }
}

TEST_CASE("small-angle output is linear up to 0.1 rad") {
    const double unit = round_trip(0.01, 1.0).small_angle / 0.01;
    for (double dphi : {-0.1, -0.05, 0.02, 0.07, 0.1}) {
        const double out = round_trip(dphi, 1.0).small_angle;
        CHECK(std::abs(out - unit * dphi) <= 0.005 * std::abs(unit * dphi));
    }
}

TEST_CASE("demodulate error paths") {
    const BeatSpec spec;
    const auto sig = synthesize_beat(0.0, 1.0, spec, record_s);
    SUBCASE("rate mismatch") {
        const auto ref = synthesize_beat(0.0, 1.0, BeatSpec{500e6, 40e6}, record_s);
        CHECK(testing::error_code_of([&] { demodulate(sig, ref, {}); }) == ErrorCode::rate_mismatch);
    }
    SUBCASE("cutoff near Nyquist") {
        const auto slow = synthesize_beat(0.0, 1.0, BeatSpec{100e6, 40e6}, record_s);
        DemodConfig cfg;
        cfg.lowpass_cutoff_hz = 20e6;  // above fs / 8
        CHECK(testing::error_code_of([&] { demodulate(slow, slow, cfg); }) == ErrorCode::filter_unstable);
    }
}

TEST_CASE("small_angle_ratio") {
    CHECK(small_angle_ratio(1e-6, 0.1, 8.053e6) == doctest::Approx(0.8053));
    CHECK(small_angle_ratio(0.0, 0.1, 8.053e6) == 0.0);
    CHECK(small_angle_ratio(1e-8, 0.1, 8.053e6) == doctest::Approx(8.053e-3));
    CHECK(small_angle_ratio(-1e-6, 0.1, 8.053e6) == doctest::Approx(0.8053));
}

TEST_CASE("sweep_measure reconstructs the index profile") {
    SweepSpec sweep;
    sweep.points = 81;

    SUBCASE("empty medium") {
        auto p = testing::reference_params(2e6);
        p.line_amplitude = 0.0;
        const auto prof = sweep_measure(p, sweep, {});
        for (const auto& v : prof.values) CHECK(std::abs(v.real()) < 1e-12);
    }
    SUBCASE("small-angle regime, 2% RMS") {
        auto p = testing::reference_params(2e6);
        p.line_amplitude *= 0.35;
        double peak_phase = 0.0;
        for (double d : linspace(sweep.start_hz, sweep.stop_hz, 2001)) {
            peak_phase = std::max(peak_phase, small_angle_ratio(medium::index_deviation(p, d),
                                                                p.cell_length, p.wavenumber()));
        }
        REQUIRE(peak_phase <= 0.1);
        const auto prof = sweep_measure(p, sweep, {});
        double err = 0.0, ref = 0.0;
        for (std::size_t i = 0; i < prof.size(); ++i) {
            const double exact = medium::index_deviation(p, prof.detunings[i]);
            err += std::pow(prof.values[i].real() - exact, 2);
            ref += exact * exact;
        }
        CHECK(std::sqrt(err / ref) < 0.02);
    }
    SUBCASE("reference params: center slope within 3%") {
        const auto p = testing::reference_params(2e6);
        SweepSpec fine{-1e6, 1e6, 81};
        const auto prof = sweep_measure(p, fine, {});
        const auto fit = cad::fit_linear_slope(prof, 0.0, 0.5e6);
        const double analytic = cad::model_slope_at_center(p);
        CHECK(std::abs(fit.slope - analytic) <= 0.03 * std::abs(analytic));
    }
}

TEST_CASE("sweep repeatability under phase jitter") {
    // Peak |k dn L| is ~0.2 rad for the reference params; 0.04 rad of per-record
    // jitter is then a ~20% spread at the index extrema.
    const auto p = testing::reference_params(2e6);
    SweepSpec sweep{-2e6, 2e6, 41};
    DemodConfig cfg;
    cfg.noise.phase_jitter_rms = 0.04;

    const auto clean = sweep_measure(p, sweep, {});
    std::size_t peak = 0;
    for (std::size_t i = 0; i < clean.size(); ++i) {
        if (std::abs(clean.values[i].real()) > std::abs(clean.values[peak].real())) peak = i;
    }

    std::vector<double> at_peak;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        cfg.noise.seed = seed;
        at_peak.push_back(sweep_measure(p, sweep, cfg).values[peak].real());
    }
    double mean = 0.0;
    for (double v : at_peak) mean += v;
    mean /= static_cast<double>(at_peak.size());
    double var = 0.0;
    for (double v : at_peak) var += (v - mean) * (v - mean);
    const double spread = std::sqrt(var / static_cast<double>(at_peak.size() - 1)) / std::abs(mean);
    MESSAGE("relative spread at the index extremum: " << spread);
    CHECK(spread > 0.1);
    CHECK(spread < 0.3);

    cfg.noise.seed = 7;
    const auto a = sweep_measure(p, sweep, cfg);
    const auto b = sweep_measure(p, sweep, cfg);
    CHECK(a.values == b.values);
}

TEST_CASE("CSV round trips") {
    const auto rec = synthesize_beat(0.2, 1.5, BeatSpec{}, 1e-6);
    std::stringstream ss;
    write_beat_csv(ss, rec);
    const auto back = read_beat_csv(ss);
    REQUIRE(back.samples.size() == rec.samples.size());
    CHECK(back.sample_rate_hz == doctest::Approx(rec.sample_rate_hz).epsilon(1e-6));
    for (std::size_t i = 0; i < rec.samples.size(); ++i) {
        CHECK(back.samples[i] == doctest::Approx(rec.samples[i]).epsilon(1e-8));
    }

    std::stringstream bad("time_s,amplitude\n0,1\nnope,2\n");
    CHECK(testing::error_code_of([&] { read_beat_csv(bad); }).has_value());

    SpectralProfile prof = make_real_profile(ProfileKind::index_deviation, {-1.0, 0.0, 1.0},
                                             std::vector<double>{-1e-7, 0.0, 1e-7});
    std::stringstream out;
    write_profile_csv(out, prof);
    CHECK(out.str().rfind("delta_hz,delta_n\n", 0) == 0);
}
