#pragma once

#include <functional>
#include <vector>

#include "dsg/field.hpp"
#include "dsg/ode.hpp"
#include "dsg/tensors.hpp"

namespace dsg {

// Connection coefficients Gamma^lam_{mu rho} built from the rank-2 potential
// treated as the line-element coefficients.
Rank3 christoffel(const Potential& pot, const Vec4& x);

struct GeodesicOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  // Include the force from the rank-3 potential term in the worldline
  // Lagrangian, to leading order in its amplitude. Off by default.
  bool rank3_force = false;
};

struct GeodesicState {
  Vec4 x = Vec4::Zero();
  Vec4 u = Vec4::Zero();
};

// Normalize (1, v) against the potential: timelike (G u u = -1) when
// timelike=true, null (G u u = 0) otherwise. v is dx^i/dt.
GeodesicState make_state(const Potential& pot, const Vec4& x, const Vec3& v,
                         bool timelike);

GeodesicState propagate(
    const Potential& pot, const GeodesicState& start, double tau_end,
    const GeodesicOptions& opt = {},
    const std::function<void(double, const GeodesicState&)>& observer = nullptr);

struct PerihelionResult {
  double advance_per_orbit = 0.0;  // measured, radians
  double oracle = 0.0;             // 6 pi M / (a (1 - e^2)), measured elements
  double a_measured = 0.0;
  double e_measured = 0.0;
  int periapses = 0;
};

PerihelionResult perihelion_advance(double mass, double a, double e,
                                    int orbits, const GeodesicOptions& opt = {});

struct DeflectionResult {
  double angle = 0.0;   // measured bending, radians
  double oracle = 0.0;  // 4 M / b
};

// Photon passing a mass with impact parameter b, launched from distance
// range_factor * b and tracked to the far side.
DeflectionResult light_deflection(double mass, double b,
                                  double range_factor = 1000.0,
                                  const GeodesicOptions& opt = {});

struct CircularOrbitResult {
  double period = 0.0;         // measured coordinate-time period
  double kepler_period = 0.0;  // 2 pi sqrt(r^3 / M)
};

CircularOrbitResult circular_orbit_period(double mass, double r,
                                          const GeodesicOptions& opt = {});

}  // namespace dsg
