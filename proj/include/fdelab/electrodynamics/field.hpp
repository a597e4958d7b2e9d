#pragma once

#include "fdelab/electrodynamics/retarded_time.hpp"
#include "fdelab/error.hpp"
#include "fdelab/vec3.hpp"

namespace fdelab::electrodynamics {

/// Lienard-Wiechert electric field per unit source charge (and without the
/// 1/(4 pi eps0) factor):
///   E = |R| / (R.u)^3 [ u (c^2 - |v|^2) + R x (u x a) ]
/// with v, a the source velocity and acceleration at the retarded time.
template <class Real>
BasicVec3<Real> lw_field(const BasicRetardedSample<Real>& s, double c_light) {
  const Real c = c_light;
  const Real Ru = dot(s.R, s.u);
  if (!(Ru > 0)) {
    throw Error(ErrorCode::kDegenerateDenominator,
                "R.u is not positive; source data are superluminal");
  }
  const BasicVec3<Real> bracket = Real(c * c - dot(s.v_ret, s.v_ret)) * s.u +
                                  cross(s.R, cross(s.u, s.a_ret));
  return Real(s.R_norm / (Ru * Ru * Ru)) * bracket;
}

/// E + (v/c) x (R^ x E): the Heaviside-Lorentz force per unit
/// q_source q_observer / (4 pi eps0) on an observer moving with velocity v.
template <class Real>
BasicVec3<Real> lorentz_force(const BasicRetardedSample<Real>& s,
                              const BasicVec3<Real>& observer_velocity,
                              double c_light) {
  const Real c = c_light;
  const BasicVec3<Real> E = lw_field(s, c_light);
  const BasicVec3<Real> B_dir = cross(s.R / s.R_norm, E);  // c B
  return E + cross(observer_velocity / c, B_dir);
}

}  // namespace fdelab::electrodynamics
