#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fdelab/dde/trajectory.hpp"
#include "fdelab/diagnostics/sampling.hpp"
#include "fdelab/electrodynamics/forces.hpp"
#include "fdelab/electrodynamics/params.hpp"
#include "fdelab/electrodynamics/past.hpp"
#include "fdelab/error.hpp"
#include "fdelab/vec3.hpp"

namespace fdelab::diagnostics {

enum class ForceModel { kRetarded, kCoulomb };

struct TorqueSample {
  double t = 0.0;                 // cfs
  double tangential_force = 0.0;  // dnm cfs^-2 per unit electron mass
  double torque_z = 0.0;          // dnm^2 cfs^-2 per unit electron mass
};

struct TorqueSeries {
  std::vector<TorqueSample> samples;
};

/// Component of `force` along the direction of `velocity`.
template <class Real>
Real tangential_component(const BasicVec3<Real>& force,
                          const BasicVec3<Real>& velocity) {
  return dot(force, velocity) / norm(velocity);
}

/// Tangential force and z-torque about the origin for the electron
/// (particle 1) in state `s` under acceleration `a1`.
template <class Real>
TorqueSample torque_sample(double t,
                           const electrodynamics::BasicSystemState<Real>& s,
                           const BasicVec3<Real>& a1) {
  return {t, static_cast<double>(tangential_component(a1, s.v1)),
          static_cast<double>(cross(s.r1, a1).z)};
}

namespace detail {

template <class Real>
BasicVec3<Real> electron_acceleration_in_past(
    const electrodynamics::PhysicalParams& p, const Real& t,
    const electrodynamics::BasicSystemState<Real>& s, ForceModel model) {
  using namespace electrodynamics;
  if (model == ForceModel::kCoulomb) return coulomb_accelerations(s, p).first;
  return full_accelerations(t, s, RigidRotationLine<Real>(p, 0),
                            RigidRotationLine<Real>(p, 1), p)
      .a1;
}

template <class Real>
void check_rigid_past(const dde::Trajectory<12, Real>& run,
                      const electrodynamics::PhysicalParams& p) {
  const auto expected = electrodynamics::RigidRotation<double>(p).state(
      static_cast<double>(run.t0()));
  const auto actual = run.past().value(run.t0());
  const auto e = electrodynamics::pack(expected);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (std::abs(static_cast<double>(actual[i]) - e[i]) > 1e-12) {
      throw Error(ErrorCode::kInvalidArgument,
                  "run was not started from the rigid rotation of these "
                  "parameters");
    }
  }
}

}  // namespace detail

/// Force on the electron projected on its velocity, and its torque about the
/// origin, at the given times.
///
/// Samples at t <= t0 lie in the prescribed past, which must be the rigid
/// rotation of `p` (as for every hydrogen run). They are evaluated on the
/// analytic motion in PastReal; later samples read the run's dense output.
template <class Real>
TorqueSeries delay_torque_series(const dde::Trajectory<12, Real>& run,
                                 const electrodynamics::PhysicalParams& p,
                                 const std::vector<double>& times,
                                 ForceModel model = ForceModel::kRetarded) {
  using namespace electrodynamics;
  detail::check_rigid_past(run, p);
  const RigidRotation<PastReal> motion(p);
  TorqueSeries out;
  out.samples.reserve(times.size());
  for (double t : times) {
    if (!out.samples.empty() && !(t > out.samples.back().t)) {
      throw Error(ErrorCode::kNonMonotoneTime,
                  "sample times must increase strictly");
    }
    if (t <= static_cast<double>(run.t0())) {
      const PastReal tq = t;
      const auto s = motion.state(tq);
      const auto a1 = detail::electron_acceleration_in_past(p, tq, s, model);
      out.samples.push_back(torque_sample(t, s, a1));
      continue;
    }
    const auto s = unpack(run.state(t));
    const BasicVec3<Real> a1 =
        model == ForceModel::kCoulomb
            ? coulomb_accelerations(s, p).first
            : full_accelerations(Real(t), s, ParticleHistory(run, 0),
                                 ParticleHistory(run, 1), p)
                  .a1;
    out.samples.push_back(torque_sample(t, s, a1));
  }
  return out;
}

template <class Real>
TorqueSeries delay_torque_series(const dde::Trajectory<12, Real>& run,
                                 const electrodynamics::PhysicalParams& p,
                                 double sample_dt = kDefaultSampleDt,
                                 ForceModel model = ForceModel::kRetarded) {
  return delay_torque_series(run, p, run_grid(run, sample_dt), model);
}

/// Trapezoidal mean of torque_z over [t_begin, t_begin + period], using the
/// samples that fall in the window.
inline double period_average_torque(const TorqueSeries& series, double t_begin,
                                    double period) {
  const double t_end = t_begin + period;
  double integral = 0.0;
  double span = 0.0;
  const TorqueSample* prev = nullptr;
  for (const TorqueSample& s : series.samples) {
    if (s.t < t_begin - 1e-12 || s.t > t_end + 1e-12) continue;
    if (prev) {
      integral += 0.5 * (s.torque_z + prev->torque_z) * (s.t - prev->t);
      span += s.t - prev->t;
    }
    prev = &s;
  }
  if (!(span > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "averaging window holds fewer than two samples");
  }
  return integral / span;
}

/// Number of strict sign changes of tangential_force among samples with
/// t > t_after (zeros are skipped).
inline int tangential_sign_changes(const TorqueSeries& series,
                                   double t_after) {
  int changes = 0;
  int last = 0;
  for (const TorqueSample& s : series.samples) {
    if (s.t <= t_after || s.tangential_force == 0.0) continue;
    const int sign = s.tangential_force > 0.0 ? 1 : -1;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }
  return changes;
}

}  // namespace fdelab::diagnostics
