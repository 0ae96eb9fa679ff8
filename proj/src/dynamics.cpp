#include "revolve/dynamics.hpp"

#include <Eigen/Geometry>

namespace revolve {

SundmanRates<double> sundman_derivatives(const MeeState& x, const ControlRtn& u,
                                         const DynamicsParams& P, const J2Params& j2,
                                         ObjectiveKind obj) {
  Eigen::Matrix<double, 6, 1> y;
  y << x.p, x.f, x.g, x.h, x.k, x.m;
  Eigen::Matrix<double, 4, 1> uc;
  uc << u.ur, u.ut, u.un, u.norm();
  return sundman_node<double>(y, x.L, uc, P, j2, obj);
}

// Equinoctial in-plane basis vectors, the columns the rotation to inertial
// axes acts on: fhat points at L = 0, ghat at L = pi/2.
static void equinoctial_basis(double h, double k, Eigen::Vector3d& fhat, Eigen::Vector3d& ghat) {
  const double s2 = 1.0 + h * h + k * k;
  fhat << 1.0 + h * h - k * k, 2.0 * h * k, -2.0 * k;
  ghat << 2.0 * h * k, 1.0 - h * h + k * k, 2.0 * h;
  fhat /= s2;
  ghat /= s2;
}

Eigen::Matrix<double, 6, 1> mee_to_cartesian(const MeeState& x, double mu) {
  const auto geo = auxiliary<double>(x.f, x.g, x.h, x.k, x.L);
  require_nondegenerate(x.p, geo.w);
  const double r = x.p / geo.w;

  Eigen::Vector3d fhat, ghat;
  equinoctial_basis(x.h, x.k, fhat, ghat);

  const Eigen::Vector3d pos = r * (geo.cosL * fhat + geo.sinL * ghat);
  // d/dt of pos with rdot from the orbit equation; compact closed form
  const double c = std::sqrt(mu / x.p);
  const Eigen::Vector3d vel = c * (-(geo.sinL + x.g) * fhat + (geo.cosL + x.f) * ghat);

  Eigen::Matrix<double, 6, 1> rv;
  rv << pos, vel;
  return rv;
}

MeeState cartesian_to_mee(const Eigen::Matrix<double, 6, 1>& rv, double mu) {
  const Eigen::Vector3d r = rv.head<3>();
  const Eigen::Vector3d v = rv.tail<3>();
  const Eigen::Vector3d hvec = r.cross(v);
  const double hmag = hvec.norm();
  if (!(hmag > 0.0)) throw std::domain_error("degenerate orbit: zero angular momentum");

  const Eigen::Vector3d hhat = hvec / hmag;
  const double denom = 1.0 + hhat.z();
  if (!(denom > 1e-12))
    throw std::domain_error("equinoctial singularity: retrograde equatorial orbit");

  MeeState x;
  x.p = hmag * hmag / mu;
  x.k = hhat.x() / denom;
  x.h = -hhat.y() / denom;

  Eigen::Vector3d fhat, ghat;
  equinoctial_basis(x.h, x.k, fhat, ghat);

  const Eigen::Vector3d evec = v.cross(hvec) / mu - r.normalized();
  x.f = evec.dot(fhat);
  x.g = evec.dot(ghat);

  const double L = std::atan2(r.normalized().dot(ghat), r.normalized().dot(fhat));
  x.L = L < 0.0 ? L + 2.0 * M_PI : L;
  return x;
}

}  // namespace revolve
