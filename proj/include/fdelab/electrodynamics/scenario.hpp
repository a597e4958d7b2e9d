#pragma once

#include <limits>

#include "fdelab/dde/integrate.hpp"
#include "fdelab/electrodynamics/forces.hpp"
#include "fdelab/electrodynamics/params.hpp"
#include "fdelab/electrodynamics/past.hpp"

namespace fdelab::electrodynamics {

/// Scalar used for the hydrogen runs.
using HydrogenReal = long double;

struct RunOptions {
  double t_end = 200.0;
  dde::Tolerance tol{1e-10, 1e-12};
  /// Length of prescribed past kept available before t = 0 (for sampling).
  double t_past = 20.0;
  int propagated_images = 3;
  /// Ceiling on the step on top of the delay cap, cfs.
  double max_step = 0.002;
};

/// The past covers the sampled window plus one time unit of slack for the
/// retarded lookups made while sampling it.
inline double history_start(const RunOptions& opt) { return -opt.t_past - 1.0; }

/// Classical hydrogen released from rigid rotation at t = 0 and evolved under
/// the retarded force. Position and velocity are continuous at t = 0; only
/// the acceleration jumps.
template <class Real = HydrogenReal>
dde::Trajectory<12, Real> run_retarded(const PhysicalParams& p,
                                       const RunOptions& opt = {}) {
  validate(p);
  dde::IntegrateOptions io;
  io.discontinuities =
      dde::record_discontinuity({}, 0.0, 2, dde::DiscontinuityKind::kSoft);
  io.neutral = true;
  io.propagated_images = opt.propagated_images;
  io.h_max = opt.max_step;
  return dde::integrate<12, Real>(
      RetardedTwoBody<Real>(p),
      rigid_rotation_past<Real>(p, history_start(opt)), 0, opt.t_end, opt.tol,
      io);
}

/// Same release evolved under the instantaneous Coulomb force.
template <class Real = HydrogenReal>
dde::Trajectory<12, Real> run_coulomb(const PhysicalParams& p,
                                      const RunOptions& opt = {}) {
  validate(p);
  dde::IntegrateOptions io;
  io.h_max = opt.max_step;
  return dde::integrate<12, Real>(
      CoulombTwoBody<Real>(p),
      rigid_rotation_past<Real>(p, history_start(opt)), 0, opt.t_end, opt.tol,
      io);
}

}  // namespace fdelab::electrodynamics
