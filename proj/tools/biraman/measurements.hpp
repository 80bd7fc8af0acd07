#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "biraman/cad.hpp"

namespace biraman::cli {

// One of the two accepted schemas:
//   delta_pump_hz,slope_rad_inv_s,fit_bandwidth_hz,stderr
//   delta_pump_hz,n_g
// Lines starting with '#' and blank lines are skipped; the header is required.
struct MeasurementSet {
    bool has_slopes = false;
    std::vector<cad::SlopeMeasurement> slopes;  // filled when has_slopes
    std::vector<cad::GroupIndexPoint> points;   // always filled
};

// Throws InvalidData for a missing or unknown header, a malformed row or a
// non-finite field; NonMonotoneData for a repeated Delta.
MeasurementSet read_measurements(std::istream& is,
                                 double carrier_rad_s = constants::carrier_angular_frequency);
MeasurementSet read_measurements(const std::filesystem::path& path,
                                 double carrier_rad_s = constants::carrier_angular_frequency);

}  // namespace biraman::cli
