#pragma once

#include <string>

namespace dsg {

// SI constants used for unit conversion. Geometric units measure everything
// in meters with G = c = 1.
inline constexpr double kGravConstSI = 6.67430e-11;       // m^3 kg^-1 s^-2
inline constexpr double kSpeedOfLight = 299792458.0;      // m / s
inline constexpr double kSunGM = 1.32712440018e20;        // m^3 / s^2
inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kSecondsPerYear = 365.25 * 86400.0;

// A number tagged with the unit it was supplied in.
struct Quantity {
  double value = 0.0;
  std::string unit;  // one of: m, km, au, kg, Msun, s, day, yr, geom
};

// Parse "1.989e30kg" style strings: a floating literal followed by a unit
// suffix. Throws std::invalid_argument on malformed input or missing unit.
Quantity parse_quantity(const std::string& text);

// Convert to geometric length (meters): masses via G/c^2, times via c.
double to_geometric(const Quantity& q);

// Invert to_geometric for the given unit label.
Quantity from_geometric(double meters, const std::string& unit);

}  // namespace dsg
