#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "biraman/format.hpp"
#include "biraman/gyro.hpp"
#include "biraman/kramers_kronig.hpp"
#include "measurements.hpp"
#include "output.hpp"

namespace biraman::cli {

namespace {

Provenance provenance(const RunConfig& cfg, std::vector<std::string> methods) {
    return Provenance{cfg.hash(), std::move(methods)};
}

std::vector<double> local_maxima(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> out;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (y[i] > y[i - 1] && y[i] >= y[i + 1]) out.push_back(x[i]);
    }
    return out;
}

std::string medium_tag(const RunConfig& cfg) {
    return cfg.line_amplitude_rad_s ? "line_amplitude: configured"
                                    : "line_amplitude: calibrated to peak_gain_db on an isolated line";
}

}  // namespace

int exit_code_for(const Error& e) noexcept {
    switch (e.error_class()) {
        case ErrorClass::config: return 2;
        case ErrorClass::numeric: return 3;
        case ErrorClass::data: return 4;
    }
    return 3;
}

void cmd_gain(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log) {
    cfg.validate();
    const auto p = cfg.medium_params();
    p.validate();
    const auto grid = linspace(cfg.grid.start_hz, cfg.grid.stop_hz, cfg.grid.points);
    const auto gain = medium::sample(p, grid, ProfileKind::gain_db).real_values();
    const auto kk = medium::kramers_kronig(medium::sample(p, grid, ProfileKind::susceptibility)).real_values();

    Table t{{"delta_hz", "gain_db", "delta_n_kk", "delta_n_model"}, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        t.add({grid[i], gain[i], kk[i], medium::index_deviation(p, grid[i])});
    }
    const auto prov = provenance(cfg, {"gain_db: closed-form doublet model", medium_tag(cfg),
                                       "delta_n_kk: Kramers-Kronig transform of Im chi (odd-offset rule, FFT)"});
    log << "wrote " << write_csv(cfg.output_dir, "gain.csv", prov, t).string() << '\n';

    const auto peaks = local_maxima(grid, gain);
    if (peaks.empty()) {
        log << "no gain peaks (flat profile)\n";
    } else {
        log << "gain peaks (Hz):";
        for (double f : peaks) log << ' ' << fmt9(f);
        log << '\n';
        if (peaks.size() == 2) log << "peak separation (Hz): " << fmt9(peaks[1] - peaks[0]) << '\n';
    }
    if (opts.svg) {
        write_svg(cfg.output_dir, "gain.svg", prov, "Raman gain doublet", "two-photon detuning (Hz)",
                  "gain (dB)", {{"gain_db", grid, gain}});
    }
}

void cmd_dispersion(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log) {
    cfg.validate();
    const auto p = cfg.medium_params();
    p.validate();

    auto clean_cfg = cfg.demod;
    clean_cfg.noise = {};
    const auto measured = heterodyne::sweep_measure(p, cfg.sweep, clean_cfg, cfg.sweep_options);
    const auto& grid = measured.detunings;
    std::vector<double> model(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) model[i] = medium::index_deviation(p, grid[i]);
    const auto het = measured.real_values();

    double err = 0.0, ref = 0.0, peak_phase = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        err += (het[i] - model[i]) * (het[i] - model[i]);
        ref += model[i] * model[i];
        peak_phase = std::max(peak_phase, heterodyne::small_angle_ratio(model[i], p.cell_length, p.wavenumber()));
    }

    const auto prov = provenance(
        cfg, {medium_tag(cfg), "delta_n_model: closed-form doublet model",
              "delta_n_heterodyne: simulated 40 MHz heterodyne sweep, noiseless, arcsine corrected"});
    Table t{{"delta_hz", "delta_n_model", "delta_n_heterodyne"}, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) t.add({grid[i], model[i], het[i]});
    log << "wrote " << write_csv(cfg.output_dir, "dispersion.csv", prov, t).string() << '\n';
    log << "max |k dn L| (rad): " << fmt9(peak_phase) << (peak_phase <= 0.1 ? "" : " (beyond small-angle regime)")
        << '\n';
    log << "relative RMS difference heterodyne vs model: " << fmt9(ref > 0.0 ? std::sqrt(err / ref) : std::sqrt(err))
        << '\n';

    try {
        const auto fit = cad::fit_linear_slope(measured, 0.0, 0.5e6);
        log << "center slope over 0.5 MHz (rad^-1 s): " << fmt9(fit.slope) << "  n_g: "
            << fmt9(cad::ng_from_slope(fit.slope, p.carrier_angular_frequency)) << '\n';
    } catch (const Error& e) {
        log << "center slope not fitted: " << e.what() << '\n';
    }

    if (cfg.demod.noise.enabled()) {
        const std::size_t reps = cfg.noise_replicates;
        std::vector<std::vector<double>> runs;
        for (std::size_t r = 0; r < reps; ++r) {
            auto noisy = cfg.demod;
            noisy.noise.seed = fnv1a64(std::to_string(cfg.seed) + "/" + std::to_string(r));
            runs.push_back(heterodyne::sweep_measure(p, cfg.sweep, noisy, cfg.sweep_options).real_values());
        }
        Table stats{{"delta_hz", "mean", "std", "rel_spread"}, {}};
        std::vector<double> spreads;
        const double scale = *std::max_element(model.begin(), model.end(),
                                               [](double a, double b) { return std::abs(a) < std::abs(b); });
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double mean = 0.0;
            for (const auto& run : runs) mean += run[i];
            mean /= static_cast<double>(reps);
            double var = 0.0;
            for (const auto& run : runs) var += (run[i] - mean) * (run[i] - mean);
            const double sd = std::sqrt(var / static_cast<double>(reps - 1));
            const double rel = scale != 0.0 ? sd / std::abs(scale) : 0.0;
            stats.add({grid[i], mean, sd, rel});
            spreads.push_back(rel);
        }
        std::sort(spreads.begin(), spreads.end());
        auto stats_prov = prov;
        stats_prov.methods.push_back("replicates: " + std::to_string(reps) + ", seeds derived from seed " +
                                     std::to_string(cfg.seed));
        stats_prov.methods.push_back("rel_spread: std / max |delta_n_model|");
        log << "wrote " << write_csv(cfg.output_dir, "dispersion_stats.csv", stats_prov, stats).string() << '\n';
        log << "median relative spread: " << fmt9(spreads[spreads.size() / 2]) << '\n';
    }

    if (opts.svg) {
        write_svg(cfg.output_dir, "dispersion.svg", prov, "Index deviation", "two-photon detuning (Hz)",
                  "delta n", {{"model", grid, model}, {"heterodyne", grid, het}});
    }
}

void cmd_null(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log) {
    cfg.validate();
    cad::NullEstimate est;
    std::vector<std::string> methods;
    std::vector<double> plot_x, plot_y;
    std::optional<double> factor;

    if (opts.data) {
        const auto set = read_measurements(*opts.data, cfg.carrier_rad_s);
        auto nopt = cfg.null_options;
        nopt.carrier_rad_s = cfg.carrier_rad_s;
        nopt.half_width_hint = medium::half_width_from_fwhm(cfg.fwhm_hz);
        est = cad::extrapolate_null(set.points, nopt);
        if (set.points.size() >= 2) {
            factor = set.has_slopes ? cad::slope_range_factor(set.slopes)
                                    : cad::slope_range_factor(set.points, cfg.carrier_rad_s);
        }
        for (const auto& pt : set.points) {
            plot_x.push_back(pt.pump_separation_hz);
            plot_y.push_back(pt.n_g);
        }
        methods.push_back("source: measurements " + opts.data->filename().string());
        methods.push_back("interval: jackknife standard error with Student t, confidence " +
                          fmt9(nopt.confidence));
    } else {
        const auto p = cfg.medium_params();
        p.validate();
        const auto [lo, hi] = cad::bracket_upper_null(p);
        est = cad::find_null_delta(p, lo, hi);
        for (const double d : linspace(0.5 * est.delta_null_hz, 1.5 * est.delta_null_hz, 201)) {
            plot_x.push_back(d);
            plot_y.push_back(cad::center_group_index(p, d));
        }
        methods.push_back("source: doublet model");
        methods.push_back(medium_tag(cfg));
    }
    methods.insert(methods.begin(), "fit: " + est.fit);
    methods.insert(methods.begin(), "method: " + std::string(cad::to_string(est.method)));
    const auto prov = provenance(cfg, methods);

    Table t{{"delta_null_hz", "interval_lo_hz", "interval_hi_hz"}, {}};
    t.add({est.delta_null_hz, est.interval_lo_hz, est.interval_hi_hz});
    if (factor) {
        t.columns.push_back("slope_range_factor");
        t.rows.back().push_back(fmt9(*factor));
    }

    std::ostringstream text;
    text << "method: " << cad::to_string(est.method) << " (" << est.fit << ")\n"
         << "delta_null_hz: " << fmt9(est.delta_null_hz) << '\n'
         << "interval_hz: [" << fmt9(est.interval_lo_hz) << ", " << fmt9(est.interval_hi_hz) << "]\n";
    if (factor) text << "slope_range_factor: " << fmt9(*factor) << '\n';

    write_csv(cfg.output_dir, "null.csv", prov, t);
    write_text(cfg.output_dir, "null.txt", prov, text.str());
    log << text.str();
    if (opts.svg) {
        write_svg(cfg.output_dir, "null.svg", prov, "Group index against pump separation",
                  "pump separation (Hz)", "n_g", {{"n_g", plot_x, plot_y}});
    }
}

void cmd_spectrum(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log) {
    cfg.validate();
    const auto& s = cfg.spectrum;
    const auto fc = modulation::FieldComponents::geometric_ladder(cfg.pump_separation_hz, s.max_harmonic,
                                                                  s.harmonic_ratio, 1.0, s.cascade_mode);
    fc.validate();
    const double duration = static_cast<double>(s.samples) / s.sample_rate_hz;
    const auto series = modulation::intensity_timeseries(fc, duration, s.sample_rate_hz);
    const auto detected = modulation::detector_filter(series, s.sample_rate_hz, s.detector);
    const auto spec = modulation::power_spectrum(series, s.sample_rate_hz);
    const auto spec_det = modulation::power_spectrum(detected, s.sample_rate_hz);

    const auto prov = provenance(
        cfg, {"intensity: |sum_m a_m exp(i 2 pi m Delta t)|^2, geometric ladder ratio " + fmt9(s.harmonic_ratio) +
                  " (illustrative amplitudes)",
              "spectrum: periodic Hann window, power normalized to the mean square",
              "detector: first-order low-pass, cutoff " + fmt9(s.detector.cutoff_hz) + " Hz",
              std::string("cascade_mode: ") + (s.cascade_mode ? "true" : "false")});

    Table ts{{"time_s", "intensity", "intensity_detected"}, {}};
    for (std::size_t i = 0; i < series.size(); ++i) {
        ts.add({static_cast<double>(i) / s.sample_rate_hz, series[i], detected[i]});
    }
    const auto db = spec.power_db();
    const auto db_det = spec_det.power_db();
    Table sp{{"frequency_hz", "power_db", "power_db_detected"}, {}};
    for (std::size_t k = 0; k < db.size(); ++k) sp.add({spec.frequency_hz[k], db[k], db_det[k]});

    log << "wrote " << write_csv(cfg.output_dir, "timeseries.csv", prov, ts).string() << '\n';
    log << "wrote " << write_csv(cfg.output_dir, "spectrum.csv", prov, sp).string() << '\n';
    log << "spectral peaks (Hz):";
    for (double f : modulation::find_peaks(spec)) log << ' ' << fmt9(f);
    log << '\n';
    log << "modulation depth: " << fmt9(modulation::modulation_depth(series))
        << "  after detector: " << fmt9(modulation::modulation_depth(detected)) << '\n';
    if (opts.svg) {
        write_svg(cfg.output_dir, "spectrum.svg", prov, "Power spectrum of the amplified probe",
                  "frequency (Hz)", "power (dB)", {{"intensity", spec.frequency_hz, db}});
    }
}

void cmd_sweep_enhancement(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log) {
    cfg.validate();
    const auto p = cfg.medium_params();
    p.validate();
    const auto& e = cfg.enhancement;
    const auto sweep = gyro::enhancement_sweep(p, e.delta_start_hz, e.delta_stop_hz, e.points, e.epsilon,
                                               e.linearity_threshold);

    const auto prov = provenance(cfg, {"model: " + std::string(gyro::enhancement_model), medium_tag(cfg),
                                       "linear_bw_hz: full width within " + fmt9(e.linearity_threshold) +
                                           " relative of the center tangent"});
    Table t{{"delta_hz", "n_g", "enhancement", "diverged", "linear_bw_hz"}, {}};
    std::vector<double> x, y;
    std::size_t best = 0;
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        const auto& r = sweep[i];
        t.add({r.pump_separation_hz, r.n_g, r.enhancement, r.diverged ? 1.0 : 0.0, r.linear_bandwidth_hz});
        x.push_back(r.pump_separation_hz);
        y.push_back(r.enhancement);
        if (r.enhancement > sweep[best].enhancement) best = i;
    }
    log << "wrote " << write_csv(cfg.output_dir, "enhancement.csv", prov, t).string() << '\n';
    log << "model: " << gyro::enhancement_model << '\n';
    log << "largest enhancement " << fmt9(sweep[best].enhancement) << " at delta_hz "
        << fmt9(sweep[best].pump_separation_hz) << (sweep[best].diverged ? " (diverged, 1/epsilon bound)" : "")
        << '\n';
    if (opts.svg) {
        write_svg(cfg.output_dir, "enhancement.svg", prov, "Scale-factor enhancement (mode-pulling proxy)",
                  "pump separation (Hz)", "enhancement", {{"1/|n_g|", x, y}});
    }
}

}  // namespace biraman::cli
