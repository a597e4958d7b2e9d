#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "fdelab/dde/dormand_prince.hpp"
#include "fdelab/dde/trajectory.hpp"
#include "fdelab/electrodynamics/field.hpp"
#include "fdelab/electrodynamics/params.hpp"
#include "fdelab/electrodynamics/retarded_time.hpp"
#include "fdelab/electrodynamics/state.hpp"
#include "fdelab/error.hpp"
#include "fdelab/vec3.hpp"

namespace fdelab::electrodynamics {

/// Warm start for the two retarded-time solves; zero means "use |r1-r2|/c".
template <class Real = double>
struct DelayGuess {
  Real tau = 0;      // particle 1 as seen from particle 2
  Real tau_bar = 0;  // particle 2 as seen from particle 1
};

template <class Real>
struct BasicTwoBodyAccelerations {
  BasicVec3<Real> a1, a2;
  /// Particle 2 seen from particle 1: delay tau_bar,
  /// R2 = r1 - r2(t - tau_bar).
  BasicRetardedSample<Real> seen_by_1;
  /// Particle 1 seen from particle 2 (delay tau, R1 = r2 - r1(t - tau)).
  BasicRetardedSample<Real> seen_by_2;
};

using TwoBodyAccelerations = BasicTwoBodyAccelerations<double>;

namespace detail {

template <class Real>
void check_subluminal(const BasicVec3<Real>& v, double c, const char* which) {
  if (!(norm(v) < c)) {
    throw Error(ErrorCode::kSuperluminal,
                std::string(which) + " speed reached c");
  }
}

template <class Real>
void check_null_cone(const BasicRetardedSample<Real>& s, double c) {
  using std::abs;
  if (!(abs(s.R_norm - c * s.tau) <= kNullConeTolerance) || !(s.tau > 0)) {
    throw Error(ErrorCode::kNoConvergence, "retarded sample off the null cone");
  }
}

}  // namespace detail

/// Retarded Lienard-Wiechert accelerations of both particles (no radiation
/// reaction, constant masses):
///   dv1/dt = kappa    [E2 + (v1/c) x (R2^ x E2)]
///   dv2/dt = mu kappa [E1 + (v2/c) x (R1^ x E1)]
template <WorldLine W1, WorldLine W2, class Real = typename W1::real_type>
BasicTwoBodyAccelerations<Real> full_accelerations(
    std::type_identity_t<Real> t, const BasicSystemState<Real>& s,
    const W1& line1, const W2& line2, const PhysicalParams& p,
    DelayGuess<Real>* guess = nullptr) {
  detail::check_subluminal(s.v1, p.c, "particle 1");
  detail::check_subluminal(s.v2, p.c, "particle 2");
  const Real separation = norm(s.r1 - s.r2);
  if (!(separation >= kCollisionDistance)) {
    throw Error(ErrorCode::kCollision, "particles coincide");
  }
  const Real instantaneous = separation / p.c;
  const Real g_bar =
      guess && guess->tau_bar > 0 ? guess->tau_bar : instantaneous;
  const Real g = guess && guess->tau > 0 ? guess->tau : instantaneous;

  BasicTwoBodyAccelerations<Real> out;
  out.seen_by_1 = solve_retarded_time(line2, s.r1, t, g_bar, p.c);
  out.seen_by_2 = solve_retarded_time(line1, s.r2, t, g, p.c);
  detail::check_null_cone(out.seen_by_1, p.c);
  detail::check_null_cone(out.seen_by_2, p.c);
  out.a1 = Real(p.kappa) * lorentz_force(out.seen_by_1, s.v1, p.c);
  out.a2 = Real(p.mu * p.kappa) * lorentz_force(out.seen_by_2, s.v2, p.c);
  if (guess) {
    guess->tau_bar = out.seen_by_1.tau;
    guess->tau = out.seen_by_2.tau;
  }
  return out;
}

/// Right-hand side of the 12 retarded equations: (v1, v2, a1, a2), with both
/// world lines read from `history`.
template <class Real>
State12<Real> full_rhs(std::type_identity_t<Real> t, const State12<Real>& y,
                       const dde::Trajectory<12, Real>& history,
                       const PhysicalParams& p,
                       DelayGuess<Real>* guess = nullptr) {
  const BasicSystemState<Real> s = unpack(y);
  const auto acc =
      full_accelerations(t, s, ParticleHistory(history, 0),
                         ParticleHistory(history, 1), p, guess);
  return pack_derivative(s, acc.a1, acc.a2);
}

/// Instantaneous inverse-square accelerations along r = r1 - r2.
template <class Real>
std::pair<BasicVec3<Real>, BasicVec3<Real>> coulomb_accelerations(
    const BasicSystemState<Real>& s, const PhysicalParams& p) {
  const BasicVec3<Real> r = s.r1 - s.r2;
  const Real rn = norm(r);
  if (!(rn >= kCollisionDistance)) {
    throw Error(ErrorCode::kCollision,
                "separation " + dde::time_str(rn) + " dnm");
  }
  const BasicVec3<Real> f = r / (rn * rn * rn);
  return {Real(p.kappa) * f, Real(-(p.mu * p.kappa)) * f};
}

template <class Real>
State12<Real> coulomb_rhs(Real /*t*/, const State12<Real>& y,
                          const PhysicalParams& p) {
  const BasicSystemState<Real> s = unpack(y);
  const auto [a1, a2] = coulomb_accelerations(s, p);
  return pack_derivative(s, a1, a2);
}

/// Integrator adaptor for the retarded system. Keeps the previous delays as
/// the next warm start and reports both delays to the step-size cap.
template <class Real = double>
class RetardedTwoBody {
 public:
  explicit RetardedTwoBody(PhysicalParams p) : params_(p) {}

  State12<Real> operator()(Real t, const State12<Real>& y,
                           dde::RhsContext<12, Real>& ctx) {
    const BasicSystemState<Real> s = unpack(y);
    const auto acc =
        full_accelerations(t, s, ParticleHistory(ctx.history(), 0),
                           ParticleHistory(ctx.history(), 1), params_, &guess_);
    ctx.note_delay(acc.seen_by_1.tau);
    ctx.note_delay(acc.seen_by_2.tau);
    return pack_derivative(s, acc.a1, acc.a2);
  }

  const PhysicalParams& params() const { return params_; }

 private:
  PhysicalParams params_;
  DelayGuess<Real> guess_;
};

template <class Real = double>
class CoulombTwoBody {
 public:
  explicit CoulombTwoBody(PhysicalParams p) : params_(p) {}

  State12<Real> operator()(Real t, const State12<Real>& y,
                           dde::RhsContext<12, Real>&) const {
    return coulomb_rhs(t, y, params_);
  }

  const PhysicalParams& params() const { return params_; }

 private:
  PhysicalParams params_;
};

}  // namespace fdelab::electrodynamics
