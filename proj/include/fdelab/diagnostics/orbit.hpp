#pragma once

#include <vector>

#include "fdelab/dde/trajectory.hpp"
#include "fdelab/diagnostics/sampling.hpp"
#include "fdelab/electrodynamics/state.hpp"
#include "fdelab/error.hpp"
#include "fdelab/vec3.hpp"

namespace fdelab::diagnostics {

struct OrbitDifferenceSample {
  double t = 0.0;
  Vec3 dr;  // electron position in run a minus run b, dnm
  double dr_norm = 0.0;
};

/// Electron position of `a` minus that of `b` on a common time grid. Both
/// runs must span the same history and integration window.
template <class Real>
std::vector<OrbitDifferenceSample> orbit_difference(
    const dde::Trajectory<12, Real>& a, const dde::Trajectory<12, Real>& b,
    double sample_dt = kDefaultSampleDt) {
  if (a.t0() != b.t0() || a.t_hist_start() != b.t_hist_start() ||
      a.t_current() != b.t_current()) {
    throw Error(ErrorCode::kMismatchedWindows,
                "runs cover different time windows");
  }
  std::vector<OrbitDifferenceSample> out;
  for (double t : run_grid(a, sample_dt)) {
    const BasicVec3<Real> d = electrodynamics::block(a.state(t), 0) -
                              electrodynamics::block(b.state(t), 0);
    out.push_back({t, vec_cast<double>(d), static_cast<double>(norm(d))});
  }
  return out;
}

inline double max_difference(const std::vector<OrbitDifferenceSample>& diff,
                             double t_after) {
  double m = 0.0;
  for (const auto& s : diff) {
    if (s.t > t_after && s.dr_norm > m) m = s.dr_norm;
  }
  return m;
}

}  // namespace fdelab::diagnostics
