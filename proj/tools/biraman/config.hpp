#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "biraman/cad.hpp"
#include "biraman/heterodyne.hpp"
#include "biraman/medium.hpp"
#include "biraman/modulation.hpp"

namespace biraman::cli {

struct GridSpec {
    double start_hz = -40e6;
    double stop_hz = 40e6;
    std::size_t points = 16001;
};

struct SpectrumSpec {
    std::size_t max_harmonic = 2;
    double harmonic_ratio = 0.2;
    bool cascade_mode = false;
    double sample_rate_hz = 64e6;
    std::size_t samples = 4096;
    modulation::DetectorModel detector;
};

struct EnhancementSpec {
    double delta_start_hz = 1e6;
    double delta_stop_hz = 40e6;
    std::size_t points = 79;
    double epsilon = 1e-6;
    double linearity_threshold = 0.05;
};

struct RunConfig {
    double peak_gain_db = 3.5;
    std::optional<double> line_amplitude_rad_s;  // overrides peak_gain_db
    double fwhm_hz = 700e3;
    double pump_separation_hz = 2e6;
    double cell_length_m = constants::default_cell_length;
    double carrier_rad_s = constants::carrier_angular_frequency;
    GridSpec grid;
    heterodyne::SweepSpec sweep;
    heterodyne::SweepOptions sweep_options;
    heterodyne::DemodConfig demod;
    std::size_t noise_replicates = 10;
    SpectrumSpec spectrum;
    EnhancementSpec enhancement;
    cad::ExtrapolationOptions null_options;
    std::filesystem::path output_dir = ".";
    std::uint64_t seed = 0;

    medium::MediumParams medium_params() const;

    // Every key with its effective value, in key order. The config hash is
    // taken over this text, so formatting in the source file does not matter.
    std::map<std::string, std::string> canonical() const;
    std::uint64_t hash() const;

    // Throws InvalidConfig naming the first offending field.
    void validate() const;
};

// Flat "key = value" text; '#' starts a comment. Unknown keys, repeated keys
// and unparsable values throw InvalidConfig.
RunConfig parse_config(std::istream& is);
RunConfig load_config(const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

}  // namespace biraman::cli
