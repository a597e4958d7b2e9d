#pragma once

#include <cmath>
#include <limits>

#include "fdelab/dde/trajectory.hpp"
#include "fdelab/electrodynamics/params.hpp"
#include "fdelab/electrodynamics/state.hpp"

namespace fdelab::electrodynamics {

/// Rigid rotation about the origin (the fixed centre of mass):
///   r1(t) = r0 (cos wt, sin wt, 0),  r2 = -mu r1,
/// with velocities and accelerations (-w^2 r) from differentiating it.
template <class Real = double>
class RigidRotation {
 public:
  explicit RigidRotation(const PhysicalParams& p)
      : r0_(p.r0), w_(p.omega0), mu_(p.mu) {}

  BasicSystemState<Real> state(const Real& t) const {
    using std::cos;
    using std::sin;
    const Real cs = cos(w_ * t), sn = sin(w_ * t);
    BasicSystemState<Real> s;
    s.r1 = {r0_ * cs, r0_ * sn, Real(0)};
    s.r2 = -mu_ * s.r1;
    s.v1 = {-w_ * r0_ * sn, w_ * r0_ * cs, Real(0)};
    s.v2 = -mu_ * s.v1;
    return s;
  }

  /// (a1, a2) = -w^2 (r1, r2).
  BasicSystemState<Real> derivative(const Real& t) const {
    const BasicSystemState<Real> s = state(t);
    const Real w2 = w_ * w_;
    return {s.v1, s.v2, -w2 * s.r1, -w2 * s.r2};
  }

  Real omega() const { return w_; }

 private:
  Real r0_, w_, mu_;
};

/// One particle of a RigidRotation seen as a world line defined for all t.
template <class Real = double>
class RigidRotationLine {
 public:
  using real_type = Real;

  RigidRotationLine(const PhysicalParams& p, int particle)
      : motion_(p), particle_(particle) {}

  BasicVec3<Real> position(const Real& t) const {
    const auto s = motion_.state(t);
    return particle_ == 0 ? s.r1 : s.r2;
  }
  BasicVec3<Real> velocity(const Real& t) const {
    const auto s = motion_.state(t);
    return particle_ == 0 ? s.v1 : s.v2;
  }
  BasicVec3<Real> acceleration(const Real& t) const {
    const auto d = motion_.derivative(t);
    return particle_ == 0 ? d.v1 : d.v2;
  }
  Real t_begin() const { return -std::numeric_limits<double>::max(); }
  Real t_end() const { return std::numeric_limits<double>::max(); }

 private:
  RigidRotation<Real> motion_;
  int particle_;
};

/// The rigid rotation as the prescribed past of the 12-component system,
/// defined for every t >= t_start.
template <class Real = double>
dde::PastFunction<12, Real> rigid_rotation_past(const PhysicalParams& p,
                                                Real t_start) {
  const RigidRotation<Real> motion(p);
  return {[motion](Real t) { return pack(motion.state(t)); },
          [motion](Real t) { return pack(motion.derivative(t)); }, t_start};
}

}  // namespace fdelab::electrodynamics
