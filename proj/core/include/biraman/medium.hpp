#pragma once

#include <complex>
#include <span>

#include "biraman/constants.hpp"
#include "biraman/spectral.hpp"

namespace biraman::medium {

// Two equal Lorentzian gain lines at +/- pump_separation/2 about the
// two-photon resonance.
//
//   chi(x) = M * [ 1/(x - d/2 + i*gamma) + 1/(x + d/2 + i*gamma) ]
//
// with x = 2*pi*detuning and d = 2*pi*pump_separation. Im chi < 0 is gain,
// n = 1 + Re chi / 2, and the single-pass intensity gain is
// exp(-k * Im chi * L).
struct MediumParams {
    double line_amplitude = 0.0;   // M, rad/s
    double half_width = 0.0;       // gamma (HWHM), rad/s; gamma = pi * FWHM_Hz
    double pump_separation = 0.0;  // Delta, Hz
    double cell_length = constants::default_cell_length;                    // m
    double carrier_angular_frequency = constants::carrier_angular_frequency;  // rad/s

    // k = omega_o / c, rad/m.
    double wavenumber() const noexcept {
        return carrier_angular_frequency / constants::speed_of_light;
    }

    // Throws InvalidParams on any broken invariant.
    void validate() const;

    MediumParams with_pump_separation(double delta_hz) const {
        MediumParams p = *this;
        p.pump_separation = delta_hz;
        return p;
    }
};

// Convenience: HWHM in rad/s for a line of the given FWHM in Hz.
constexpr double half_width_from_fwhm(double fwhm_hz) noexcept { return constants::pi * fwhm_hz; }

std::complex<double> susceptibility(const MediumParams& p, double detuning_hz);
double gain_db(const MediumParams& p, double detuning_hz);
double index_deviation(const MediumParams& p, double detuning_hz);

// dn/domega at the given detuning, rad^-1 s (closed form).
double index_slope(const MediumParams& p, double detuning_hz);

// n_g = n_o + omega_o * dn/domega with n_o = 1.
double group_index(const MediumParams& p, double detuning_hz);

// Line amplitude M that yields `peak_gain_db` at the center of an isolated
// line of the given FWHM: M = ln(10^(dB/10)) * gamma / (k L).
double calibrate_amplitude(double peak_gain_db, double fwhm_hz, double cell_length_m,
                           double carrier_rad_s = constants::carrier_angular_frequency);

// Samples one of the model quantities on the given detuning grid.
SpectralProfile sample(const MediumParams& p, std::span<const double> detunings_hz,
                       ProfileKind kind);

// Extent (Hz, measured from the doublet center) that holds the bulk of the
// gain: Delta/2 + 5 * HWHM_Hz.
double spectral_support(const MediumParams& p) noexcept;

}  // namespace biraman::medium
