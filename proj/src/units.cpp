#include "dsg/units.hpp"

#include <cstdlib>
#include <stdexcept>

namespace dsg {

namespace {

constexpr double kAstronomicalUnit = 1.495978707e11;  // m

double unit_to_meters(const std::string& unit) {
  const double c = kSpeedOfLight;
  if (unit == "m" || unit == "geom") return 1.0;
  if (unit == "km") return 1e3;
  if (unit == "au") return kAstronomicalUnit;
  if (unit == "kg") return kGravConstSI / (c * c);
  if (unit == "Msun") return kSunGM / (c * c);
  if (unit == "s") return c;
  if (unit == "day") return c * kSecondsPerDay;
  if (unit == "yr") return c * kSecondsPerYear;
  throw std::invalid_argument("unknown unit: " + unit);
}

}  // namespace

Quantity parse_quantity(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin) throw std::invalid_argument("no number in: " + text);
  std::string unit(end);
  if (unit.empty())
    throw std::invalid_argument("quantity missing unit suffix: " + text);
  unit_to_meters(unit);  // validate
  return Quantity{value, unit};
}

double to_geometric(const Quantity& q) { return q.value * unit_to_meters(q.unit); }

Quantity from_geometric(double meters, const std::string& unit) {
  return Quantity{meters / unit_to_meters(unit), unit};
}

}  // namespace dsg
