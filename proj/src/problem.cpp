#include "revolve/problem.hpp"

#include <stdexcept>

namespace revolve {

StateBounds default_bounds(const UnitSystem& units) {
  StateBounds b;
  b.p_min = 0.1 * units.length_km;
  b.p_max = 100.0 * units.length_km;
  b.fghk_abs = 2.0;
  b.m_min = 1e-3 * units.mass_kg;
  return b;
}

ScaledProblem scale(const ProblemDef& physical, const UnitSystem& units) {
  if (!(units.length_km > 0 && units.time_s > 0 && units.mass_kg > 0))
    throw std::invalid_argument("scale: unit quantities must be positive");
  if (!(physical.Lf > physical.L0)) throw std::invalid_argument("scale: need Lf > L0");

  const double Lu = units.length_km, Tu = units.time_s, Mu = units.mass_kg;

  ScaledProblem sp;
  sp.units = units;
  ProblemDef& d = sp.def;
  d = physical;

  d.dynamics.mu = physical.dynamics.mu / units.mu_km3_s2();
  d.dynamics.isp = physical.dynamics.isp / Tu;
  d.dynamics.g0 = physical.dynamics.g0 / units.accel_km_s2();
  d.dynamics.u_max = physical.dynamics.u_max / (Mu * units.accel_km_s2());
  d.j2.re = physical.j2.re / Lu;

  auto scale_boundary = [&](BoundarySpec& b) {
    b.value(iP) /= Lu;
    b.value(iT) /= Tu;
    b.value(iM) /= Mu;
  };
  scale_boundary(d.depart);
  scale_boundary(d.arrive);

  d.bounds.p_min = physical.bounds.p_min / Lu;
  d.bounds.p_max = physical.bounds.p_max / Lu;
  d.bounds.m_min = physical.bounds.m_min / Mu;
  return sp;
}

}  // namespace revolve
