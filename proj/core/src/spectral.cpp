#include "biraman/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "biraman/errors.hpp"

namespace biraman {

std::string_view to_string(ProfileKind kind) noexcept {
    switch (kind) {
        case ProfileKind::susceptibility: return "susceptibility";
        case ProfileKind::index_deviation: return "index_deviation";
        case ProfileKind::gain_db: return "gain_db";
    }
    return "unknown";
}

std::vector<double> SpectralProfile::real_values() const {
    std::vector<double> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(),
                   [](const std::complex<double>& v) { return v.real(); });
    return out;
}

std::vector<double> SpectralProfile::imag_values() const {
    std::vector<double> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(),
                   [](const std::complex<double>& v) { return v.imag(); });
    return out;
}

void SpectralProfile::validate() const {
    if (detunings.size() < 2 || values.size() != detunings.size()) {
        throw Error(ErrorCode::invalid_params,
                    "profile needs >= 2 samples with matching detunings and values");
    }
    for (std::size_t i = 1; i < detunings.size(); ++i) {
        if (!(detunings[i] > detunings[i - 1])) {
            throw Error(ErrorCode::invalid_params, "detunings must be strictly increasing");
        }
    }
}

bool SpectralProfile::is_uniform(double rel_tol) const {
    if (detunings.size() < 2) return false;
    const double h = spacing();
    for (std::size_t i = 1; i < detunings.size(); ++i) {
        if (std::abs((detunings[i] - detunings[i - 1]) - h) > rel_tol * std::abs(h)) return false;
    }
    return true;
}

double SpectralProfile::spacing() const {
    if (detunings.size() < 2) return 0.0;
    return (detunings.back() - detunings.front()) / static_cast<double>(detunings.size() - 1);
}

std::vector<double> linspace(double start, double stop, std::size_t points) {
    std::vector<double> out(points);
    if (points == 1) {
        out[0] = start;
        return out;
    }
    const double step = (stop - start) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) out[i] = start + step * static_cast<double>(i);
    if (points > 1) out.back() = stop;
    return out;
}

SpectralProfile make_real_profile(ProfileKind kind, std::vector<double> detunings,
                                  std::span<const double> values) {
    SpectralProfile p;
    p.kind = kind;
    p.detunings = std::move(detunings);
    p.values.assign(values.begin(), values.end());
    return p;
}

}  // namespace biraman
