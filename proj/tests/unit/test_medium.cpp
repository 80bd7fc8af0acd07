#include <doctest.h>

#include <cmath>

#include "biraman/errors.hpp"
#include "biraman/lineshape.hpp"
#include "biraman/medium.hpp"
#include "support/error_code.hpp"
#include "support/param_draws.hpp"

using namespace biraman;
using biraman::medium::MediumParams;

namespace {

// Central finite difference of the index deviation against angular
// frequency, step 1 Hz. Independent of the closed-form slope.
double fd_slope(const MediumParams& p, double detuning_hz) {
    const double h = 1.0;
    return (medium::index_deviation(p, detuning_hz + h) - medium::index_deviation(p, detuning_hz - h)) /
           (2.0 * constants::two_pi * h);
}

}  // namespace

TEST_CASE("params validation") {
    auto p = testing::reference_params();
    CHECK_NOTHROW(p.validate());
    p.half_width = 0.0;
    CHECK_THROWS_AS(p.validate(), Error);
    p = testing::reference_params();
    p.line_amplitude = -1.0;
    CHECK_THROWS_AS(p.validate(), Error);
    p = testing::reference_params();
    p.cell_length = 0.0;
    CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("wavenumber times c recovers the carrier") {
    const MediumParams p = testing::reference_params();
    const double back = p.wavenumber() * constants::speed_of_light;
    CHECK(std::abs(back - p.carrier_angular_frequency) / p.carrier_angular_frequency < 1e-12);
    CHECK(p.wavenumber() == doctest::Approx(8.053e6).epsilon(1e-3));
}

TEST_CASE("empty medium has zero response") {
    MediumParams p = testing::reference_params();
    p.line_amplitude = 0.0;
    for (double d : {-3e6, 0.0, 1e6, 7e6}) {
        CHECK(medium::susceptibility(p, d) == std::complex<double>{});
        CHECK(medium::gain_db(p, d) == 0.0);
        CHECK(medium::group_index(p, d) == 1.0);
    }
}

TEST_CASE("line center gain approaches the single-line limit") {
    MediumParams p = testing::reference_params(30e6);  // 2 pi Delta >> gamma
    const double im = medium::susceptibility(p, 0.5 * p.pump_separation).imag();
    const double single = -p.line_amplitude / p.half_width;
    const double ratio = p.half_width / (constants::two_pi * p.pump_separation);
    CHECK(std::abs(im - single) / std::abs(single) <= ratio * ratio);
}

TEST_CASE("susceptibility symmetry about the doublet center") {
    for (const auto& p : testing::random_params(20)) {
        for (double d = 1e3; d < 20e6; d *= 1.7) {
            const auto plus = medium::susceptibility(p, d);
            const auto minus = medium::susceptibility(p, -d);
            const double scale = std::abs(plus) + 1e-300;
            CHECK(std::abs(plus.real() + minus.real()) <= 1e-14 * scale);
            CHECK(std::abs(plus.imag() - minus.imag()) <= 1e-14 * scale);
            CHECK(std::abs(medium::index_deviation(p, d) + medium::index_deviation(p, -d)) < 1e-12);
        }
        CHECK(medium::index_deviation(p, 0.0) == 0.0);
        // Gain everywhere.
        CHECK(medium::susceptibility(p, 0.3e6).imag() < 0.0);
        CHECK(medium::gain_db(p, 0.0) >= 0.0);
    }
}

TEST_CASE("gain doublet has two maxima near +/- Delta/2") {
    const MediumParams p = testing::reference_params(2e6);
    const auto grid = linspace(-4e6, 4e6, 8001);
    std::vector<double> peaks;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double g = medium::gain_db(p, grid[i]);
        if (g > medium::gain_db(p, grid[i - 1]) && g > medium::gain_db(p, grid[i + 1])) {
            peaks.push_back(grid[i]);
        }
    }
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0] == doctest::Approx(-1e6).epsilon(0.1));
    CHECK(peaks[1] == doctest::Approx(1e6).epsilon(0.1));
}

TEST_CASE("calibrate_amplitude") {
    const double gamma = constants::pi * 700e3;
    // ln(10^0.35) = 0.80590...
    const double m = medium::calibrate_amplitude(3.5, 700e3, 0.1, 2.4141e15);
    CHECK(m == doctest::Approx(0.8059047825 * gamma / (2.4141e15 / constants::speed_of_light * 0.1)));
    CHECK(m == doctest::Approx(2.2).epsilon(0.01));
    CHECK(medium::calibrate_amplitude(0.0, 700e3, 0.1) == 0.0);
    CHECK(medium::calibrate_amplitude(3.5, 700e3, 0.2) ==
          doctest::Approx(0.5 * medium::calibrate_amplitude(3.5, 700e3, 0.1)).epsilon(1e-15));

    CHECK_THROWS_AS(medium::calibrate_amplitude(3.5, 0.0, 0.1), Error);
    CHECK_THROWS_AS(medium::calibrate_amplitude(3.5, 700e3, -0.1), Error);
    CHECK_THROWS_AS(medium::calibrate_amplitude(-1.0, 700e3, 0.1), Error);
    CHECK(testing::error_code_of([] { medium::calibrate_amplitude(3.5, 700e3, 0.0); }) ==
          ErrorCode::non_positive_input);
}

TEST_CASE("calibration round trip through gain_db") {
    MediumParams p = testing::reference_params(20e6);
    CHECK(medium::gain_db(p, 0.5 * p.pump_separation) == doctest::Approx(3.5).epsilon(0.01 / 3.5));
    // At 2 MHz the neighbouring line adds ~0.1 dB.
    p.pump_separation = 2e6;
    CHECK(medium::gain_db(p, 1e6) > 3.5);
}

TEST_CASE("fitted FWHM of a gain peak") {
    const MediumParams p = testing::reference_params(20e6);
    const auto grid = linspace(-20e6, 20e6, 16001);
    const auto profile = medium::sample(p, grid, ProfileKind::gain_db);
    const auto fit = medium::fit_lorentzian_peak(profile, 10e6);
    CHECK(fit.fwhm_hz == doctest::Approx(700e3).epsilon(0.05));
    CHECK(fit.center_hz == doctest::Approx(10e6).epsilon(1e-3));
    const auto left = medium::fit_lorentzian_peak(profile, -10e6);
    CHECK(left.fwhm_hz == doctest::Approx(fit.fwhm_hz).epsilon(1e-6));
}

TEST_CASE("group index: closed form against finite differences") {
    for (const auto& p : testing::random_params(25)) {
        for (double d : {0.0, 0.1e6, -0.37e6, 1.3e6}) {
            const double analytic = medium::index_slope(p, d);
            const double numeric = fd_slope(p, d);
            CHECK(std::abs(analytic - numeric) <= 1e-6 * std::abs(analytic));
        }
    }
}

TEST_CASE("anomalous dispersion at the center of a resolved doublet") {
    for (const auto& p : testing::random_params(30)) {
        if (constants::two_pi * p.pump_separation > 2.0 * p.half_width) {
            CHECK(medium::index_slope(p, 0.0) < 0.0);
            CHECK(medium::group_index(p, 0.0) < 1.0);
        }
    }
}

TEST_CASE("index deviation scale at the measured-dispersion operating point") {
    // Choose M so the center slope equals the measured -2.65e-13 rad^-1 s at
    // Delta = 2 MHz with 700 kHz lines; the index excursion is then ~1e-6.
    MediumParams p = testing::reference_params(2e6);
    p.line_amplitude = 1.0;
    p.line_amplitude = -2.65e-13 / medium::index_slope(p, 0.0);
    CHECK(medium::index_slope(p, 0.0) == doctest::Approx(-2.65e-13));
    double peak = 0.0;
    for (const double d : linspace(-5e6, 5e6, 2001)) {
        peak = std::max(peak, std::abs(medium::index_deviation(p, d)));
    }
    CHECK(std::log10(peak) > -6.5);
    CHECK(std::log10(peak) < -5.5);
}
