#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string_view>
#include <vector>

#include "biraman/errors.hpp"
#include "biraman/format.hpp"

namespace biraman::cli {

namespace {

[[noreturn]] void bad(std::string_view key, const std::string& why) {
    throw Error(ErrorCode::invalid_config, std::string(key) + ": " + why);
}

double to_double(std::string_view key, std::string_view v) {
    const auto d = parse_finite(v);
    if (!d) bad(key, "expected a finite number, got '" + std::string(v) + "'");
    return *d;
}

std::uint64_t to_u64(std::string_view key, std::string_view v) {
    v = trim(v);
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        bad(key, "expected a non-negative integer, got '" + std::string(v) + "'");
    }
    return out;
}

bool to_bool(std::string_view key, std::string_view v) {
    v = trim(v);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    bad(key, "expected true or false, got '" + std::string(v) + "'");
}

std::string u64_text(std::uint64_t v) { return std::to_string(v); }
std::string bool_text(bool v) { return v ? "true" : "false"; }

struct Field {
    std::string_view key;
    std::function<void(RunConfig&, std::string_view)> set;
    std::function<std::string(const RunConfig&)> get;
};

#define BIRAMAN_REAL(KEY, MEMBER)                                                          \
    Field { KEY, [](RunConfig& c, std::string_view v) { c.MEMBER = to_double(KEY, v); },  \
            [](const RunConfig& c) { return fmt9(c.MEMBER); } }
#define BIRAMAN_COUNT(KEY, MEMBER)                                                         \
    Field { KEY,                                                                           \
            [](RunConfig& c, std::string_view v) {                                         \
                c.MEMBER = static_cast<decltype(c.MEMBER)>(to_u64(KEY, v));                \
            },                                                                             \
            [](const RunConfig& c) { return u64_text(c.MEMBER); } }

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        BIRAMAN_REAL("peak_gain_db", peak_gain_db),
        Field{"line_amplitude_rad_s",
              [](RunConfig& c, std::string_view v) {
                  c.line_amplitude_rad_s = to_double("line_amplitude_rad_s", v);
              },
              [](const RunConfig& c) {
                  return c.line_amplitude_rad_s ? fmt9(*c.line_amplitude_rad_s) : std::string("auto");
              }},
        BIRAMAN_REAL("fwhm_hz", fwhm_hz),
        BIRAMAN_REAL("pump_separation_hz", pump_separation_hz),
        BIRAMAN_REAL("cell_length_m", cell_length_m),
        BIRAMAN_REAL("carrier_rad_s", carrier_rad_s),

        BIRAMAN_REAL("grid_start_hz", grid.start_hz),
        BIRAMAN_REAL("grid_stop_hz", grid.stop_hz),
        BIRAMAN_COUNT("grid_points", grid.points),

        BIRAMAN_REAL("sweep_start_hz", sweep.start_hz),
        BIRAMAN_REAL("sweep_stop_hz", sweep.stop_hz),
        BIRAMAN_COUNT("sweep_points", sweep.points),
        BIRAMAN_REAL("sample_rate_hz", sweep_options.beat.sample_rate_hz),
        BIRAMAN_REAL("beat_frequency_hz", sweep_options.beat.beat_frequency_hz),
        BIRAMAN_REAL("record_duration_s", sweep_options.record_duration_s),
        BIRAMAN_REAL("lowpass_cutoff_hz", demod.lowpass_cutoff_hz),
        BIRAMAN_COUNT("filter_order", demod.filter_order),
        BIRAMAN_REAL("quadrature_bias_rad", demod.quadrature_bias),
        BIRAMAN_REAL("phase_jitter_rms_rad", demod.noise.phase_jitter_rms),
        BIRAMAN_REAL("intensity_noise_rel", demod.noise.intensity_noise_rel),
        BIRAMAN_COUNT("noise_replicates", noise_replicates),

        BIRAMAN_COUNT("max_harmonic", spectrum.max_harmonic),
        BIRAMAN_REAL("harmonic_ratio", spectrum.harmonic_ratio),
        Field{"cascade_mode",
              [](RunConfig& c, std::string_view v) { c.spectrum.cascade_mode = to_bool("cascade_mode", v); },
              [](const RunConfig& c) { return bool_text(c.spectrum.cascade_mode); }},
        BIRAMAN_REAL("spectrum_sample_rate_hz", spectrum.sample_rate_hz),
        BIRAMAN_COUNT("spectrum_samples", spectrum.samples),
        BIRAMAN_REAL("detector_cutoff_hz", spectrum.detector.cutoff_hz),

        BIRAMAN_REAL("enhancement_start_hz", enhancement.delta_start_hz),
        BIRAMAN_REAL("enhancement_stop_hz", enhancement.delta_stop_hz),
        BIRAMAN_COUNT("enhancement_points", enhancement.points),
        BIRAMAN_REAL("enhancement_epsilon", enhancement.epsilon),
        BIRAMAN_REAL("linearity_threshold", enhancement.linearity_threshold),

        Field{"null_fit",
              [](RunConfig& c, std::string_view v) {
                  v = trim(v);
                  if (v == "log_linear_trailing") c.null_options.fit = cad::ExtrapolationFit::log_linear_trailing;
                  else if (v == "doublet_model") c.null_options.fit = cad::ExtrapolationFit::doublet_model;
                  else bad("null_fit", "expected log_linear_trailing or doublet_model");
              },
              [](const RunConfig& c) { return std::string(cad::to_string(c.null_options.fit)); }},
        BIRAMAN_COUNT("null_trailing_points", null_options.trailing_points),
        BIRAMAN_REAL("null_confidence", null_options.confidence),

        Field{"output_dir",
              [](RunConfig& c, std::string_view v) { c.output_dir = std::string(trim(v)); },
              [](const RunConfig& c) { return c.output_dir.generic_string(); }},
        BIRAMAN_COUNT("seed", seed),
    };
    return table;
}

#undef BIRAMAN_REAL
#undef BIRAMAN_COUNT

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char ch : bytes) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    return h;
}

medium::MediumParams RunConfig::medium_params() const {
    medium::MediumParams p;
    p.half_width = medium::half_width_from_fwhm(fwhm_hz);
    p.pump_separation = pump_separation_hz;
    p.cell_length = cell_length_m;
    p.carrier_angular_frequency = carrier_rad_s;
    p.line_amplitude = line_amplitude_rad_s
                           ? *line_amplitude_rad_s
                           : medium::calibrate_amplitude(peak_gain_db, fwhm_hz, cell_length_m, carrier_rad_s);
    return p;
}

std::map<std::string, std::string> RunConfig::canonical() const {
    std::map<std::string, std::string> out;
    for (const auto& f : fields()) {
        // The output location does not change what is computed.
        if (f.key == "output_dir") continue;
        out.emplace(f.key, f.get(*this));
    }
    return out;
}

std::uint64_t RunConfig::hash() const {
    std::string text;
    for (const auto& [k, v] : canonical()) text += k + "=" + v + "\n";
    return fnv1a64(text);
}

void RunConfig::validate() const {
    auto require = [](bool ok, std::string_view key, const char* why) {
        if (!ok) bad(key, why);
    };
    require(fwhm_hz > 0.0, "fwhm_hz", "must be > 0");
    require(pump_separation_hz >= 0.0, "pump_separation_hz", "must be >= 0");
    require(cell_length_m > 0.0, "cell_length_m", "must be > 0");
    require(carrier_rad_s > 0.0, "carrier_rad_s", "must be > 0");
    if (line_amplitude_rad_s) require(*line_amplitude_rad_s >= 0.0, "line_amplitude_rad_s", "must be >= 0");
    else require(peak_gain_db >= 0.0, "peak_gain_db", "must be >= 0");

    require(grid.stop_hz > grid.start_hz, "grid_stop_hz", "must exceed grid_start_hz");
    require(grid.points >= 2, "grid_points", "must be >= 2");

    require(sweep.points >= 2, "sweep_points", "must be >= 2");
    require(sweep.stop_hz > sweep.start_hz, "sweep_stop_hz", "must exceed sweep_start_hz");
    require(sweep_options.beat.beat_frequency_hz > 0.0, "beat_frequency_hz", "must be > 0");
    require(sweep_options.beat.sample_rate_hz > 0.0, "sample_rate_hz", "must be > 0");
    require(sweep_options.record_duration_s > 0.0, "record_duration_s", "must be > 0");
    require(demod.lowpass_cutoff_hz > 0.0 && demod.lowpass_cutoff_hz < sweep_options.beat.beat_frequency_hz,
            "lowpass_cutoff_hz", "must lie in (0, beat_frequency_hz)");
    require(demod.filter_order >= 1 && demod.filter_order <= 8, "filter_order", "must be in [1, 8]");
    require(demod.noise.phase_jitter_rms >= 0.0, "phase_jitter_rms_rad", "must be >= 0");
    require(demod.noise.intensity_noise_rel >= 0.0, "intensity_noise_rel", "must be >= 0");
    require(noise_replicates >= 2, "noise_replicates", "must be >= 2");

    require(spectrum.cascade_mode || spectrum.max_harmonic >= 1, "max_harmonic", "must be >= 1");
    require(spectrum.harmonic_ratio >= 0.0, "harmonic_ratio", "must be >= 0");
    require(spectrum.sample_rate_hz > 0.0, "spectrum_sample_rate_hz", "must be > 0");
    require(spectrum.detector.cutoff_hz > 0.0, "detector_cutoff_hz", "must be > 0");

    require(enhancement.delta_start_hz > 0.0, "enhancement_start_hz", "must be > 0");
    require(enhancement.delta_stop_hz > enhancement.delta_start_hz, "enhancement_stop_hz",
            "must exceed enhancement_start_hz");
    require(enhancement.points >= 2, "enhancement_points", "must be >= 2");
    require(enhancement.epsilon > 0.0, "enhancement_epsilon", "must be > 0");
    require(enhancement.linearity_threshold > 0.0, "linearity_threshold", "must be > 0");

    require(null_options.trailing_points >= 3, "null_trailing_points", "must be >= 3");
    require(null_options.confidence > 0.0 && null_options.confidence < 1.0, "null_confidence",
            "must lie in (0, 1)");
}

RunConfig parse_config(std::istream& is) {
    RunConfig cfg;
    std::set<std::string, std::less<>> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        text = trim(text);
        if (text.empty()) continue;

        const auto eq = text.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::invalid_config,
                        "line " + std::to_string(lineno) + ": expected key = value");
        }
        const auto key = trim(text.substr(0, eq));
        const auto value = trim(text.substr(eq + 1));
        const auto& table = fields();
        const auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) { return f.key == key; });
        if (it == table.end()) bad(key, "unknown key (line " + std::to_string(lineno) + ")");
        if (!seen.emplace(key).second) bad(key, "given more than once");
        it->set(cfg, value);
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::invalid_config, "cannot open config file " + path.string());
    return parse_config(in);
}

}  // namespace biraman::cli
