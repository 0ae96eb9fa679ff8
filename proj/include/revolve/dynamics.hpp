#pragma once

// Modified equinoctial dynamics under RTN thrust, optional J2, and the
// Sundman change of variable that makes true longitude L the independent
// variable. Everything here is templated on the scalar so the transcription
// can push dual numbers through for exact first and second derivatives.
//
// State component order used by the L-domain system throughout the project:
//   (p, f, g, h, k, t, m)   with L the independent variable.

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>

#include "revolve/dual.hpp"

namespace revolve {

enum : int { iP = 0, iF = 1, iG = 2, iH = 3, iK = 4, iT = 5, iM = 6 };

enum class ObjectiveKind { Time, Fuel, Energy };

// Canonical units for internal computation. Base quantities in km, s, kg.
struct UnitSystem {
  double length_km = 6378.1363;
  double time_s = 190.0 * 86400.0;
  double mass_kg = 2000.0;

  double velocity_km_s() const { return length_km / time_s; }
  double accel_km_s2() const { return length_km / (time_s * time_s); }
  double mu_km3_s2() const { return length_km * length_km * length_km / (time_s * time_s); }
  // canonical force unit expressed in newtons (kg * km/s^2 = 1e3 N)
  double force_n() const { return mass_kg * accel_km_s2() * 1e3; }
};

// Dynamics constants in whatever unit system the caller works in. Internally
// the project always uses a normalized UnitSystem; the CLI layer converts.
struct DynamicsParams {
  double mu = 1.0;
  double isp = 0.0;    // specific impulse, time units
  double g0 = 0.0;     // standard gravity, acceleration units
  double u_max = 0.0;  // thrust magnitude bound, force units

  double exhaust_velocity() const { return isp * g0; }
};

struct J2Params {
  double j2 = 0.0;  // zonal coefficient, dimensionless; 0 disables
  double re = 1.0;  // equatorial radius, length units
  bool enabled() const { return j2 != 0.0; }
};

struct MeeState {
  double p = 0, f = 0, g = 0, h = 0, k = 0, L = 0;
  double m = 0, t = 0;
};

struct ControlRtn {
  double ur = 0, ut = 0, un = 0;
  double norm() const { return std::sqrt(ur * ur + ut * ut + un * un); }
};

template <class S> using State7 = Eigen::Matrix<S, 7, 1>;
template <class S> using Vec3 = Eigen::Matrix<S, 3, 1>;

// Shared per-state quantities: w = 1 + f cosL + g sinL, s2 = 1 + h^2 + k^2,
// and hk = h sinL - k cosL (the out-of-plane coupling term).
template <class S>
struct OrbitGeometry {
  S w, s2, sinL, cosL, hk;
};

template <class S>
OrbitGeometry<S> auxiliary(const S& f, const S& g, const S& h, const S& k, const S& L) {
  using std::cos, std::sin;
  OrbitGeometry<S> geo;
  geo.sinL = sin(L);
  geo.cosL = cos(L);
  geo.w = 1.0 + f * geo.cosL + g * geo.sinL;
  geo.s2 = 1.0 + h * h + k * k;
  geo.hk = h * geo.sinL - k * geo.cosL;
  return geo;
}

inline void require_nondegenerate(double p, double w) {
  if (!(p > 0.0)) throw std::domain_error("degenerate orbit: semi-latus rectum p <= 0");
  if (!(w > 1e-12)) throw std::domain_error("degenerate orbit: w = 1 + f cosL + g sinL <= 0");
}

// Oblateness acceleration in the RTN frame, r = p/w.
template <class S>
Vec3<S> j2_acceleration(const S& p, const S& h, const S& k, const OrbitGeometry<S>& geo,
                        double mu, const J2Params& j2) {
  const S r = p / geo.w;
  const S r2 = r * r;
  const S c = mu * j2.j2 * (j2.re * j2.re) / (r2 * r2);
  const S s2sq = geo.s2 * geo.s2;
  Vec3<S> a;
  a(0) = -1.5 * c * (1.0 - 12.0 * geo.hk * geo.hk / s2sq);
  a(1) = -12.0 * c * geo.hk * (h * geo.cosL + k * geo.sinL) / s2sq;
  a(2) = -6.0 * c * (1.0 - h * h - k * k) * geo.hk / s2sq;
  return a;
}

// Gauss variational equations: time rates of (p,f,g,h,k,L) under a total RTN
// acceleration. Degeneracy (p <= 0 or w ~ 0) throws; NLP callbacks catch and
// report an evaluation failure instead of propagating garbage.
template <class S>
Eigen::Matrix<S, 6, 1> gauss_rates(const S& p, const S& f, const S& g,
                                   const OrbitGeometry<S>& geo, const Vec3<S>& acc, double mu) {
  using std::sqrt;
  require_nondegenerate(value(p), value(geo.w));
  const S& ar = acc(0);
  const S& at = acc(1);
  const S& an = acc(2);
  const S sqp = sqrt(p / mu);
  const S winv = 1.0 / geo.w;

  Eigen::Matrix<S, 6, 1> d;
  d(0) = 2.0 * p * at * winv * sqp;
  d(1) = sqp * (ar * geo.sinL + ((geo.w + 1.0) * geo.cosL + f) * at * winv -
                g * geo.hk * an * winv);
  d(2) = sqp * (-ar * geo.cosL + ((geo.w + 1.0) * geo.sinL + g) * at * winv +
                f * geo.hk * an * winv);
  d(3) = sqp * geo.s2 * an * geo.cosL * (0.5 * winv);
  d(4) = sqp * geo.s2 * an * geo.sinL * (0.5 * winv);
  d(5) = sqrt(mu * p) * (geo.w / p) * (geo.w / p) + sqp * geo.hk * an * winv;
  return d;
}

template <class S>
struct TimeRates {
  S p, f, g, h, k, L, m;
};

// Physical time-domain rates with thrust u (RTN, force units) and mass flow
// -|u|/(isp g0). J2 contributes acceleration only.
template <class S>
TimeRates<S> time_derivatives(const S& p, const S& f, const S& g, const S& h, const S& k,
                              const S& L, const S& m, const Vec3<S>& u,
                              const DynamicsParams& P, const J2Params& j2) {
  using std::sqrt;
  const OrbitGeometry<S> geo = auxiliary(f, g, h, k, L);
  Vec3<S> acc = u / m;
  if (j2.enabled()) acc += j2_acceleration(p, h, k, geo, P.mu, j2);
  const Eigen::Matrix<S, 6, 1> d = gauss_rates(p, f, g, geo, acc, P.mu);
  TimeRates<S> out;
  out.p = d(0);
  out.f = d(1);
  out.g = d(2);
  out.h = d(3);
  out.k = d(4);
  out.L = d(5);
  out.m = -sqrt(u(0) * u(0) + u(1) * u(1) + u(2) * u(2)) / P.exhaust_velocity();
  return out;
}

inline TimeRates<double> time_derivatives(const MeeState& x, const ControlRtn& u,
                                          const DynamicsParams& P, const J2Params& j2 = {}) {
  return time_derivatives<double>(x.p, x.f, x.g, x.h, x.k, x.L, x.m, Vec3<double>(u.ur, u.ut, u.un),
                                  P, j2);
}

template <class S>
struct SundmanRates {
  State7<S> state;  // d(p,f,g,h,k,t,m)/dL
  S cost;           // dJ/dL for the active objective
};

// L-domain node evaluation used by the transcription: state y = (p,f,g,h,k,m)
// at fixed longitude L, control (u_r,u_t,u_n) plus throttle T. Mass flow and
// the running cost use T, which the cone constraint ties to |u|; on any point
// satisfying the cone exactly this is the physical mass equation.
template <class S>
SundmanRates<S> sundman_node(const Eigen::Matrix<S, 6, 1>& y, double L,
                             const Eigen::Matrix<S, 4, 1>& u, const DynamicsParams& P,
                             const J2Params& j2, ObjectiveKind obj) {
  const S& p = y(0);
  const S& f = y(1);
  const S& g = y(2);
  const S& h = y(3);
  const S& k = y(4);
  const S& m = y(5);
  const S& T = u(3);

  const OrbitGeometry<S> geo = auxiliary(f, g, h, k, S(L));
  Vec3<S> acc;
  acc(0) = u(0) / m;
  acc(1) = u(1) / m;
  acc(2) = u(2) / m;
  if (j2.enabled()) acc += j2_acceleration(p, h, k, geo, P.mu, j2);
  const Eigen::Matrix<S, 6, 1> d = gauss_rates(p, f, g, geo, acc, P.mu);

  const S Ldot = d(5);
  if (!(value(Ldot) > 0.0)) throw std::domain_error("Sundman transform invalid: dL/dt <= 0");
  const S dt = 1.0 / Ldot;

  SundmanRates<S> out;
  out.state(iP) = d(0) * dt;
  out.state(iF) = d(1) * dt;
  out.state(iG) = d(2) * dt;
  out.state(iH) = d(3) * dt;
  out.state(iK) = d(4) * dt;
  out.state(iT) = dt;
  out.state(iM) = -T / P.exhaust_velocity() * dt;
  switch (obj) {
    case ObjectiveKind::Time: out.cost = dt; break;
    case ObjectiveKind::Fuel: out.cost = T * dt; break;
    case ObjectiveKind::Energy: out.cost = T * T * dt; break;
  }
  return out;
}

// Spec-facing variant on the physical control (throttle = |u|).
SundmanRates<double> sundman_derivatives(const MeeState& x, const ControlRtn& u,
                                         const DynamicsParams& P, const J2Params& j2,
                                         ObjectiveKind obj);

// Conversions between modified equinoctial elements and Cartesian
// position/velocity (inertial frame, direct orbits).
Eigen::Matrix<double, 6, 1> mee_to_cartesian(const MeeState& x, double mu);
MeeState cartesian_to_mee(const Eigen::Matrix<double, 6, 1>& rv, double mu);

}  // namespace revolve
