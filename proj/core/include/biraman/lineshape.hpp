#pragma once

#include "biraman/spectral.hpp"

namespace biraman::medium {

// y(x) = amplitude / (1 + ((x - center) / hwhm)^2) + offset, x in Hz.
struct LorentzianFit {
    double center_hz = 0.0;
    double fwhm_hz = 0.0;
    double amplitude = 0.0;
    double offset = 0.0;
    double rms_residual = 0.0;
    int iterations = 0;
};

// Least-squares Lorentzian fit (Levenberg-Marquardt) to the peak of a
// real-valued profile closest to `near_hz`. The fit window spans
// `window_fwhm` initial-estimate widths on either side of the peak.
// Throws InsufficientSamples if fewer than 8 samples fall in the window.
LorentzianFit fit_lorentzian_peak(const SpectralProfile& profile, double near_hz,
                                  double window_fwhm = 1.5);

}  // namespace biraman::medium
