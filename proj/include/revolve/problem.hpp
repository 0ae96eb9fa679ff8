#pragma once

// Problem statement for a fixed-span multi-revolution transfer: dynamics
// constants, the longitude window [L0, Lf], boundary conditions over the
// L-domain state (p,f,g,h,k,t,m), simple bounds, and the objective.

#include <array>

#include "revolve/dynamics.hpp"

namespace revolve {

// Per-component boundary values with fixed flags; free components ignore the
// stored value (it still seeds the initial guess).
struct BoundarySpec {
  State7<double> value = State7<double>::Zero();
  std::array<bool, 7> fixed{false, false, false, false, false, false, false};

  int fixed_count() const {
    int n = 0;
    for (bool b : fixed) n += b;
    return n;
  }
};

// Box bounds on the state variables, same units as the owning ProblemDef.
struct StateBounds {
  double p_min = 0.0, p_max = 0.0;
  double fghk_abs = 2.0;
  double m_min = 0.0;
};

struct ProblemDef {
  DynamicsParams dynamics;
  J2Params j2;  // j2.j2 == 0 disables oblateness
  double L0 = 0.0, Lf = 0.0;
  BoundarySpec depart;  // state at L0
  BoundarySpec arrive;  // state at Lf
  StateBounds bounds;
  ObjectiveKind objective = ObjectiveKind::Fuel;
};

// Default box bounds in units of the given system: p in [0.1, 100] length
// units, |f,g,h,k| <= 2, m >= 1e-3 mass units.
StateBounds default_bounds(const UnitSystem& units);

// A ProblemDef expressed in normalized units plus the unit system that maps
// it back to km/s/kg. All internal computation runs on the scaled form.
struct ScaledProblem {
  ProblemDef def;
  UnitSystem units;
};

// Normalize a physical-unit (km, s, kg) problem by the given unit system.
ScaledProblem scale(const ProblemDef& physical, const UnitSystem& units);

}  // namespace revolve
