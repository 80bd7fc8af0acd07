#pragma once

#include <numbers>

namespace biraman::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double speed_of_light = 299792458.0;  // m/s

// 85Rb D2 line.
inline constexpr double rb85_d2_wavelength = 780.24e-9;  // m
inline constexpr double carrier_angular_frequency =
    two_pi * speed_of_light / rb85_d2_wavelength;  // ~2.4142e15 rad/s

inline constexpr double default_cell_length = 0.1;  // m

// Dilute vapor: background index taken as exactly one.
inline constexpr double background_index = 1.0;

}  // namespace biraman::constants
