#include "biraman/medium.hpp"

#include <cmath>
#include <string>

#include "biraman/errors.hpp"

namespace biraman::medium {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::invalid_params, what);
}

}  // namespace

void MediumParams::validate() const {
    require(std::isfinite(line_amplitude) && line_amplitude >= 0.0,
            "line_amplitude must be finite and >= 0");
    require(std::isfinite(half_width) && half_width > 0.0, "half_width must be > 0");
    require(std::isfinite(pump_separation) && pump_separation >= 0.0,
            "pump_separation must be >= 0");
    require(std::isfinite(cell_length) && cell_length > 0.0, "cell_length must be > 0");
    require(std::isfinite(carrier_angular_frequency) && carrier_angular_frequency > 0.0,
            "carrier_angular_frequency must be > 0");
}

std::complex<double> susceptibility(const MediumParams& p, double detuning_hz) {
    const double x = constants::two_pi * detuning_hz;
    const double half_d = constants::pi * p.pump_separation;
    const std::complex<double> lower{x + half_d, p.half_width};
    const std::complex<double> upper{x - half_d, p.half_width};
    return p.line_amplitude * (1.0 / upper + 1.0 / lower);
}

double gain_db(const MediumParams& p, double detuning_hz) {
    const double exponent = -p.wavenumber() * susceptibility(p, detuning_hz).imag() * p.cell_length;
    return 10.0 * exponent / std::log(10.0);
}

double index_deviation(const MediumParams& p, double detuning_hz) {
    return 0.5 * susceptibility(p, detuning_hz).real();
}

double index_slope(const MediumParams& p, double detuning_hz) {
    // d/dx [u / (u^2 + g^2)] = (g^2 - u^2) / (u^2 + g^2)^2 for each line.
    const double x = constants::two_pi * detuning_hz;
    const double half_d = constants::pi * p.pump_separation;
    const double g2 = p.half_width * p.half_width;
    double sum = 0.0;
    for (const double u : {x - half_d, x + half_d}) {
        const double u2 = u * u;
        const double den = u2 + g2;
        sum += (g2 - u2) / (den * den);
    }
    return 0.5 * p.line_amplitude * sum;
}

double group_index(const MediumParams& p, double detuning_hz) {
    return constants::background_index + p.carrier_angular_frequency * index_slope(p, detuning_hz);
}

double calibrate_amplitude(double peak_gain_db, double fwhm_hz, double cell_length_m,
                           double carrier_rad_s) {
    if (!(peak_gain_db >= 0.0) || !std::isfinite(peak_gain_db)) {
        throw Error(ErrorCode::non_positive_input, "peak_gain_db must be finite and >= 0");
    }
    if (!(fwhm_hz > 0.0) || !(cell_length_m > 0.0) || !(carrier_rad_s > 0.0)) {
        throw Error(ErrorCode::non_positive_input,
                    "fwhm, cell length and carrier must all be > 0");
    }
    const double gamma = half_width_from_fwhm(fwhm_hz);
    const double k = carrier_rad_s / constants::speed_of_light;
    const double log_gain = peak_gain_db * std::log(10.0) / 10.0;
    return log_gain * gamma / (k * cell_length_m);
}

SpectralProfile sample(const MediumParams& p, std::span<const double> detunings_hz,
                       ProfileKind kind) {
    SpectralProfile out;
    out.kind = kind;
    out.detunings.assign(detunings_hz.begin(), detunings_hz.end());
    out.values.reserve(detunings_hz.size());
    for (const double d : detunings_hz) {
        switch (kind) {
            case ProfileKind::susceptibility: out.values.push_back(susceptibility(p, d)); break;
            case ProfileKind::index_deviation: out.values.emplace_back(index_deviation(p, d)); break;
            case ProfileKind::gain_db: out.values.emplace_back(gain_db(p, d)); break;
        }
    }
    return out;
}

double spectral_support(const MediumParams& p) noexcept {
    return 0.5 * p.pump_separation + 5.0 * p.half_width / constants::two_pi;
}

}  // namespace biraman::medium
