#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <string>
#include <type_traits>

#include "fdelab/dde/trajectory.hpp"
#include "fdelab/electrodynamics/state.hpp"
#include "fdelab/error.hpp"
#include "fdelab/vec3.hpp"

namespace fdelab::electrodynamics {

inline constexpr double kCollisionDistance = 1e-6;     // dnm
inline constexpr double kNullConeTolerance = 1e-12;    // dnm
inline constexpr int kMaxRetardedIterations = 50;

/// A world line that can be sampled on [t_begin(), t_end()].
template <class W>
concept WorldLine = requires(const W& w, typename W::real_type t) {
  { w.position(t) } -> std::convertible_to<BasicVec3<typename W::real_type>>;
  { w.velocity(t) } -> std::convertible_to<BasicVec3<typename W::real_type>>;
  { w.acceleration(t) }
      -> std::convertible_to<BasicVec3<typename W::real_type>>;
  { w.t_begin() } -> std::convertible_to<typename W::real_type>;
  { w.t_end() } -> std::convertible_to<typename W::real_type>;
};

/// One particle's world line read out of a 12-component trajectory.
/// Acceleration is the exact derivative of the velocity interpolant (or of
/// the analytic past).
template <class Real>
class ParticleHistory {
 public:
  using real_type = Real;

  ParticleHistory(const dde::Trajectory<12, Real>& traj, int particle)
      : traj_(&traj), pos_(3 * particle), vel_(6 + 3 * particle) {}

  BasicVec3<Real> position(Real t) const {
    return block(traj_->state(t), pos_);
  }
  BasicVec3<Real> velocity(Real t) const {
    return block(traj_->state(t), vel_);
  }
  BasicVec3<Real> acceleration(Real t) const {
    return block(traj_->derivative(t), vel_);
  }
  Real t_begin() const { return traj_->t_hist_start(); }
  Real t_end() const { return traj_->t_current(); }

 private:
  const dde::Trajectory<12, Real>* traj_;
  int pos_;
  int vel_;
};

/// Retarded interaction data for an observer at time t: the source is seen
/// at t - tau with separation R = observer - source(t - tau), |R| = c tau.
template <class Real>
struct BasicRetardedSample {
  Real tau = 0;
  BasicVec3<Real> R;
  Real R_norm = 0;
  BasicVec3<Real> v_ret;
  BasicVec3<Real> a_ret;
  /// c R/|R| - v_ret
  BasicVec3<Real> u;
};

using RetardedSample = BasicRetardedSample<double>;

/// Solves |observer - source(t - tau)| = c tau for tau > 0.
///
/// z(tau) = |R(tau)| - c tau has slope R^.v - c < 0 for a subluminal source,
/// so the root is unique. Newton from `tau_guess`, falling back to bisection
/// whenever an iterate leaves the current sign bracket. The bracket starts
/// as the sampled part of the world line: tau in [t - t_end, t - t_begin].
template <WorldLine W, class Real = typename W::real_type>
BasicRetardedSample<Real> solve_retarded_time(
    const W& source, const BasicVec3<Real>& observer,
    std::type_identity_t<Real> t, std::type_identity_t<Real> tau_guess,
    double c_light) {
  using std::abs;
  using std::max;
  const Real c = c_light;
  if (!(tau_guess > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "tau guess must be positive");
  }
  Real lo = max(Real(0), Real(t - source.t_end()));
  Real hi = t - source.t_begin();
  if (!(hi > lo)) {
    throw Error(ErrorCode::kHistoryTooShort,
                "source world line does not reach back from t=" +
                    dde::time_str(t));
  }
  bool lo_checked = (lo == 0);
  bool hi_checked = false;

  auto residual = [&](const Real& tau, BasicVec3<Real>& R, Real& Rn) {
    R = observer - source.position(t - tau);
    Rn = norm(R);
    if (Rn < kCollisionDistance) {
      throw Error(ErrorCode::kCollision,
                  "separation " + dde::time_str(Rn) + " dnm at t=" +
                      dde::time_str(t));
    }
    return Real(Rn - c * tau);
  };

  Real tau = tau_guess < lo ? lo : (tau_guess > hi ? hi : tau_guess);
  BasicVec3<Real> R;
  Real Rn = 0;
  for (int iter = 0; iter < kMaxRetardedIterations; ++iter) {
    const Real z = residual(tau, R, Rn);
    if (z > 0) {
      lo = tau;
      lo_checked = true;
    } else {
      hi = tau;
      hi_checked = true;
    }
    const BasicVec3<Real> v = source.velocity(t - tau);
    const Real slope = dot(R, v) / Rn - c;
    if (!(slope < 0)) {
      throw Error(ErrorCode::kSuperluminal,
                  "source approaches the observer at or above c");
    }
    const Real step = -z / slope;
    if (z == 0 ||
        abs(step) <= 4 * std::numeric_limits<Real>::epsilon() * tau) {
      if (abs(z) > kNullConeTolerance) break;
      BasicRetardedSample<Real> s;
      s.tau = tau;
      s.R = R;
      s.R_norm = Rn;
      s.v_ret = v;
      s.a_ret = source.acceleration(t - tau);
      s.u = (c / Rn) * R - v;
      return s;
    }
    Real next = tau + step;
    if (!(next > lo && next < hi)) {
      if (!hi_checked && next >= hi) {
        BasicVec3<Real> Rh;
        Real Rhn;
        if (residual(hi, Rh, Rhn) > 0) {
          throw Error(ErrorCode::kHistoryTooShort,
                      "retarded time precedes the history at t=" +
                          dde::time_str(t));
        }
        hi_checked = true;
      }
      if (!lo_checked && next <= lo) {
        BasicVec3<Real> Rl;
        Real Rln;
        if (residual(lo, Rl, Rln) <= 0) {
          throw Error(ErrorCode::kOutOfRange,
                      "retarded time falls after the computed solution at t=" +
                          dde::time_str(t));
        }
        lo_checked = true;
      }
      next = (lo + hi) / 2;
    }
    tau = next;
  }
  throw Error(ErrorCode::kNoConvergence,
              "retarded time iteration did not converge at t=" +
                  dde::time_str(t));
}

}  // namespace fdelab::electrodynamics
