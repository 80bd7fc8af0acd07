#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace biraman {

enum class ProfileKind { susceptibility, index_deviation, gain_db };

std::string_view to_string(ProfileKind kind) noexcept;

// Samples of a spectral quantity against two-photon detuning (Hz) from the
// doublet center. Real-valued kinds keep a zero imaginary part.
struct SpectralProfile {
    ProfileKind kind = ProfileKind::susceptibility;
    std::vector<double> detunings;
    std::vector<std::complex<double>> values;

    std::size_t size() const noexcept { return detunings.size(); }
    std::vector<double> real_values() const;
    std::vector<double> imag_values() const;

    // Throws InvalidParams unless detunings are strictly increasing and
    // match values in length (>= 2).
    void validate() const;
    bool is_uniform(double rel_tol = 1e-6) const;
    double spacing() const;
};

// `points` evenly spaced values from start to stop inclusive.
std::vector<double> linspace(double start, double stop, std::size_t points);

SpectralProfile make_real_profile(ProfileKind kind, std::vector<double> detunings,
                                  std::span<const double> values);

}  // namespace biraman
