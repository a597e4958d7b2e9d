#pragma once

#include <algorithm>
#include <cmath>
#include <tuple>
#include <vector>

#include "fdelab/dde/trajectory.hpp"
#include "fdelab/diagnostics/sampling.hpp"
#include "fdelab/diagnostics/torque.hpp"
#include "fdelab/electrodynamics/forces.hpp"
#include "fdelab/electrodynamics/params.hpp"

namespace fdelab::diagnostics {

/// z angular momentum about the origin in units of the electron mass:
/// (r1 x v1).z + (r2 x v2).z / mu.
template <class Real>
Real angular_momentum_z(const electrodynamics::BasicSystemState<Real>& s,
                        double mu) {
  return cross(s.r1, s.v1).z + cross(s.r2, s.v2).z / Real(mu);
}

struct AngularMomentumRate {
  double t = 0.0;
  /// Derivative of angular_momentum_z along the run's interpolant (or its
  /// analytic past).
  double dL_dt = 0.0;
  /// Sum of the torques of the model forces on both particles.
  double torque = 0.0;
  /// dL_dt - torque, evaluated in the run's scalar.
  double residual = 0.0;
};

template <class Real>
AngularMomentumRate angular_momentum_rate(
    const dde::Trajectory<12, Real>& run,
    const electrodynamics::PhysicalParams& p, double t,
    ForceModel model = ForceModel::kRetarded) {
  using namespace electrodynamics;
  const auto s = unpack(run.state(t));
  const auto d = unpack(run.derivative(t));
  const Real mu = p.mu;
  BasicVec3<Real> a1, a2;
  if (model == ForceModel::kCoulomb) {
    std::tie(a1, a2) = coulomb_accelerations(s, p);
  } else {
    const auto acc = full_accelerations(Real(t), s, ParticleHistory(run, 0),
                                        ParticleHistory(run, 1), p);
    a1 = acc.a1;
    a2 = acc.a2;
  }
  // d/dt (r x v) = r' x v + r x v'. The identity v x v = 0 lets the residual
  // be formed from the small differences r' - v and v' - a directly.
  const Real dL = (cross(d.r1, s.v1) + cross(s.r1, d.v1)).z +
                  (cross(d.r2, s.v2) + cross(s.r2, d.v2)).z / mu;
  const Real torque = cross(s.r1, a1).z + cross(s.r2, a2).z / mu;
  const Real residual =
      (cross(d.r1 - s.v1, s.v1) + cross(s.r1, d.v1 - a1)).z +
      (cross(d.r2 - s.v2, s.v2) + cross(s.r2, d.v2 - a2)).z / mu;
  return {t, static_cast<double>(dL), static_cast<double>(torque),
          static_cast<double>(residual)};
}

struct AngularMomentumCheck {
  double max_residual = 0.0;
  double peak_torque = 0.0;
  std::size_t samples = 0;

  /// max_residual / peak_torque.
  double relative() const {
    return peak_torque > 0.0 ? max_residual / peak_torque : max_residual;
  }
};

/// Compares dL/dt with the net torque on the grid k * sample_dt over the
/// integrated part of the run. The prescribed past is skipped: the motion
/// there is constrained, so the forces do not drive it.
template <class Real>
AngularMomentumCheck angular_momentum_rate_check(
    const dde::Trajectory<12, Real>& run,
    const electrodynamics::PhysicalParams& p,
    double sample_dt = kDefaultSampleDt,
    ForceModel model = ForceModel::kRetarded) {
  AngularMomentumCheck out;
  for (double t : run_grid(run, sample_dt)) {
    if (t <= static_cast<double>(run.t0())) continue;
    const AngularMomentumRate r = angular_momentum_rate(run, p, t, model);
    out.max_residual = std::max(out.max_residual, std::abs(r.residual));
    out.peak_torque = std::max(out.peak_torque, std::abs(r.torque));
    ++out.samples;
  }
  return out;
}

}  // namespace fdelab::diagnostics
