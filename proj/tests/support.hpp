#pragma once

// Shared fixtures for the test binaries: the GTO-to-GEO rendezvous problem
// in physical units (km, s, kg) and its canonical unit system.

#include "revolve/problem.hpp"

namespace revolve::testing {

inline UnitSystem benchmark_units() {
  UnitSystem u;
  u.length_km = 6378.1363;
  u.time_s = 190.0 * 86400.0;
  u.mass_kg = 2000.0;
  return u;
}

// Fixed-span minimum-fuel transfer, boundary states in MEE. Physical units:
// km, s, kg, with thrust in kg km/s^2 (1 N = 1e-3 kg km/s^2).
inline ProblemDef gto_geo_problem(bool with_j2 = false) {
  const double re = 6378.1363;
  ProblemDef d;
  d.dynamics.mu = 398600.4418;
  d.dynamics.isp = 3000.0;
  d.dynamics.g0 = 9.80665e-3;
  d.dynamics.u_max = 0.5e-3;
  if (with_j2) {
    d.j2.j2 = 1.08262668e-3;
    d.j2.re = re;
  }
  d.L0 = 4.89;
  d.Lf = 1575.635;
  d.objective = ObjectiveKind::Fuel;

  d.depart.value << 1.7787 * re, -0.1144, 0.722, -0.0376, 0.2371, 0.0, 2000.0;
  d.depart.fixed = {true, true, true, true, true, true, true};
  d.arrive.value << 6.6107 * re, 1.7637e-7, -1.39e-6, 0.0, 0.0, 190.0 * 86400.0, 0.0;
  d.arrive.fixed = {true, true, true, true, true, true, false};

  d.bounds = default_bounds(benchmark_units());
  return d;
}

inline ScaledProblem gto_geo_scaled(bool with_j2 = false) {
  return scale(gto_geo_problem(with_j2), benchmark_units());
}

}  // namespace revolve::testing
