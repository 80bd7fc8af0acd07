// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "biraman/cad.hpp"
#include "biraman/heterodyne.hpp"
#include "biraman/kramers_kronig.hpp"
#include "biraman/lineshape.hpp"
#include "biraman/medium.hpp"
#include "biraman/modulation.hpp"
#include "measurements.hpp"
#include "support/param_draws.hpp"

using namespace biraman;

namespace {

constexpr double quoted_carrier = 2.4141e15;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

cli::MeasurementSet measured(const char* file) {
    return cli::read_measurements(std::filesystem::path(BIRAMAN_DATA_DIR) / file, quoted_carrier);
}

Outcome group_index_identity() {
    const double slopes[] = {-1.08e-12, -1.4e-13, -8.05e-14, -4e-15};
    const double quoted[] = {-2608.0, -337.3, -193.5, -8.66};
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) worst = std::max(worst, rel(cad::ng_from_slope(slopes[i], quoted_carrier), quoted[i]));
    return {worst <= 0.005, fmt("worst relative deviation from the quoted values %.3g (limit 0.005)", worst)};
}

Outcome cad_threshold() {
    const double s = cad::cad_threshold_slope(quoted_carrier);
    const bool ok = std::abs(std::abs(s) - 4.14e-16) < 0.005e-16 && rel(std::abs(s), 4.1e-16) <= 0.02;
    return {ok, fmt("threshold slope %.4g rad^-1 s, %.3g from 4.1e-16", s, rel(std::abs(s), 4.1e-16))};
}

Outcome null_extrapolation() {
    const auto set = measured("measured_group_index.csv");
    const auto est = cad::extrapolate_null(set.points);
    const bool ok = est.delta_null_hz >= 4.0e6 && est.delta_null_hz <= 5.0e6 && est.interval_lo_hz <= 4.1e6 &&
                    est.interval_hi_hz >= 4.1e6;
    return {ok, fmt("null %.4g MHz, interval [%.4g, %.4g] MHz", est.delta_null_hz / 1e6, est.interval_lo_hz / 1e6,
                    est.interval_hi_hz / 1e6) +
                    " (" + est.fit + ")"};
}

template <typename Exact>
double kk_error(const SpectralProfile& kk, Exact exact, double window_hz) {
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < kk.size(); ++i) {
        if (std::abs(kk.detunings[i]) > window_hz) continue;
        const double e = exact(kk.detunings[i]);
        err = std::max(err, std::abs(kk.values[i].real() - e));
        scale = std::max(scale, std::abs(e));
    }
    return err / scale;
}

Outcome kramers_kronig_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    const double m = 2.2, gamma = constants::two_pi * 350e3;
    const double span = 100.0 * gamma / constants::two_pi;
    SpectralProfile line;
    line.kind = ProfileKind::susceptibility;
    line.detunings = linspace(-span, span, 32769);
    for (double d : line.detunings) {
        const double x = constants::two_pi * d;
        line.values.emplace_back(0.0, -m * gamma / (x * x + gamma * gamma));
    }
    const double single = kk_error(
        medium::kramers_kronig(line),
        [&](double d) {
            const double x = constants::two_pi * d;
            return 0.5 * m * x / (x * x + gamma * gamma);
        },
        10.0 * gamma / constants::two_pi);

    double worst = 0.0;
    const auto draws = testing::random_params(20, 77);
    for (const auto& p : draws) {
        const double half = 50.0 * medium::spectral_support(p);
        const double hwhm = p.half_width / constants::two_pi;
        const auto n = static_cast<std::size_t>(std::clamp(2.0 * half / (hwhm / 20.0), 4096.0, 1048576.0)) | 1u;
        const auto grid = linspace(-half, half, n);
        const auto kk = medium::kramers_kronig(medium::sample(p, grid, ProfileKind::susceptibility));
        worst = std::max(worst, kk_error(kk, [&](double d) { return medium::index_deviation(p, d); },
                                         0.5 * p.pump_separation + 10.0 * hwhm));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {single < 1e-3 && worst < 1e-3 && secs < 10.0,
            fmt("single line %.2g, worst of 20 doublets %.2g, %.2f s", single, worst, secs)};
}

Outcome finite_difference_oracle() {
    double worst = 0.0;
    for (const auto& p : testing::random_params(25)) {
        const double h = 1.0;
        const double fd = (medium::index_deviation(p, h) - medium::index_deviation(p, -h)) / (2.0 * constants::two_pi * h);
        worst = std::max(worst, rel(cad::model_slope_at_center(p), fd));
    }
    return {worst < 1e-6, fmt("worst relative error over 25 draws %.2g (limit 1e-6)", worst)};
}

Outcome heterodyne_round_trip() {
    auto p = testing::reference_params(2e6);
    p.line_amplitude *= 0.35;
    const heterodyne::SweepSpec sweep{-4e6, 4e6, 81};
    double peak = 0.0;
    for (double d : linspace(sweep.start_hz, sweep.stop_hz, 2001)) {
        peak = std::max(peak, heterodyne::small_angle_ratio(medium::index_deviation(p, d), p.cell_length, p.wavenumber()));
    }
    const auto prof = heterodyne::sweep_measure(p, sweep, {});
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < prof.size(); ++i) {
        const double e = medium::index_deviation(p, prof.detunings[i]);
        err += std::pow(prof.values[i].real() - e, 2);
        ref += e * e;
    }
    const double rms = std::sqrt(err / ref);

    const heterodyne::BeatSpec spec;
    const auto reference = heterodyne::synthesize_beat(0.0, 1.0, spec, 20e-6);
    auto recover = [&](double phi) {
        return heterodyne::demodulate(heterodyne::synthesize_beat(phi, 1.0, spec, 20e-6), reference, {}).phase;
    };
    double worst_phase = 0.0;
    for (double phi : linspace(-0.1, 0.1, 21)) worst_phase = std::max(worst_phase, std::abs(recover(phi) - phi));
    const double big = 8.053e6 * 1e-6 * 0.1;
    const double big_err = rel(recover(big), big);

    return {peak <= 0.1 && rms < 0.02 && worst_phase < 1e-3 && big_err < 0.01,
            fmt("sweep RMS %.2g at max|k dn L| %.3f; ", rms, peak) +
                fmt("worst |dphi| error %.2g rad; %.3f rad case off by %.2g", worst_phase, big, big_err)};
}

Outcome gain_calibration() {
    const auto p = testing::reference_params(20e6);
    const double g = medium::gain_db(p, 0.5 * p.pump_separation);
    const auto profile = medium::sample(p, linspace(-20e6, 20e6, 16001), ProfileKind::gain_db);
    const auto fit = medium::fit_lorentzian_peak(profile, 10e6);
    return {std::abs(g - 3.5) <= 0.01 && rel(fit.fwhm_hz, 700e3) <= 0.05,
            fmt("line-center gain %.4f dB, fitted FWHM %.1f kHz", g, fit.fwhm_hz / 1e3)};
}

Outcome modulation_spectra() {
    const double fs = 64e6;
    const std::size_t n = 4096;
    bool peaks_ok = true;
    for (double delta : {2e6, 4e6}) {
        const auto fc = modulation::FieldComponents::geometric_ladder(delta, 2);
        const auto spec = modulation::power_spectrum(modulation::intensity_timeseries(fc, n / fs, fs), fs);
        const auto peaks = modulation::find_peaks(spec);
        for (int m = 1; m <= 2; ++m) {
            peaks_ok = peaks_ok && std::any_of(peaks.begin(), peaks.end(), [&](double f) {
                return std::abs(f - m * delta) <= spec.bin_width_hz;
            });
        }
    }
    bool monotone = true;
    double prev = INFINITY;
    for (double delta : {1e6, 2e6, 3e6, 4e6, 6e6}) {
        const auto s = modulation::intensity_timeseries(modulation::FieldComponents::geometric_ladder(delta, 1), n / fs, fs);
        const double depth = modulation::modulation_depth(modulation::detector_filter(s, fs, {}));
        monotone = monotone && depth < prev;
        prev = depth;
    }
    const auto cascade = modulation::FieldComponents::geometric_ladder(2e6, 2, 0.2, 1.0, true);
    const double depth = modulation::modulation_depth(modulation::intensity_timeseries(cascade, n / fs, fs));
    return {peaks_ok && monotone && depth == 0.0,
            std::string("harmonic peaks ") + (peaks_ok ? "found" : "missing") + ", detected depth " +
                (monotone ? "falls" : "does not fall") + " with Delta, cascade depth " + fmt("%g", depth)};
}

Outcome controllability() {
    const auto set = measured("measured_slopes.csv");
    const double f = cad::slope_range_factor(set.slopes);
    return {std::abs(f - 270.0) <= 1.0, fmt("|slope(2 MHz)| / |slope(4 MHz)| = %.2f", f)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"group-index identity", group_index_identity},
        {"CAD threshold slope", cad_threshold},
        {"null extrapolation", null_extrapolation},
        {"Kramers-Kronig oracle", kramers_kronig_oracle},
        {"group-index finite-difference oracle", finite_difference_oracle},
        {"heterodyne round trip", heterodyne_round_trip},
        {"gain calibration round trip", gain_calibration},
        {"modulation spectra", modulation_spectra},
        {"controllability factor", controllability},
    };
    int failures = 0;
    int id = 0;
    for (const auto& [name, run] : criteria) {
        ++id;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
        failures += o.pass ? 0 : 1;
    }
    return failures;
}
