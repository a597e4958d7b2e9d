#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "fdelab/dde/trajectory.hpp"
#include "fdelab/error.hpp"

namespace fdelab::diagnostics {

/// Scalar for forces evaluated on the analytic past.
using PastReal = boost::multiprecision::cpp_bin_float_quad;

inline constexpr double kDefaultSampleDt = 0.05;  // cfs

/// Times k * dt (k integer) inside [t_from, t_to]. Anchoring the grid at 0
/// makes t = 0 a sample whenever it is in range.
inline std::vector<double> sample_grid(double t_from, double t_to, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorCode::kInvalidArgument, "sample_dt must be positive");
  }
  std::vector<double> grid;
  if (!(t_to >= t_from)) return grid;
  const long long k0 = static_cast<long long>(std::ceil(t_from / dt - 1e-9));
  const long long k1 = static_cast<long long>(std::floor(t_to / dt + 1e-9));
  grid.reserve(static_cast<std::size_t>(std::max(0LL, k1 - k0 + 1)));
  for (long long k = k0; k <= k1; ++k) {
    grid.push_back(std::clamp(static_cast<double>(k) * dt, t_from, t_to));
  }
  return grid;
}

/// Default sampling window of a run: from one cfs after the start of the
/// stored history (room for retarded lookups) to the end of the solution.
template <std::size_t N, class Real>
std::vector<double> run_grid(const dde::Trajectory<N, Real>& run,
                             double sample_dt) {
  return sample_grid(static_cast<double>(run.t_hist_start()) + 1.0,
                     static_cast<double>(run.t_current()), sample_dt);
}

}  // namespace fdelab::diagnostics
