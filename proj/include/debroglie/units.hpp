#pragma once

#include <numbers>

namespace debroglie::units {

// All internal quantities are SI: meters, seconds, rad/s.
inline constexpr double speed_of_light = 299792458.0;

inline constexpr double nm = 1e-9;
inline constexpr double um = 1e-6;
inline constexpr double mm = 1e-3;

/// Angular frequency 2*pi*c/lambda of a vacuum wavelength.
constexpr double angular_frequency(double wavelength) {
  return 2.0 * std::numbers::pi * speed_of_light / wavelength;
}

constexpr double length_to_time(double length) { return length / speed_of_light; }
constexpr double time_to_length(double time) { return time * speed_of_light; }

}  // namespace debroglie::units
