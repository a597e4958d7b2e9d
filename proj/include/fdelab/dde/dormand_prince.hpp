#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <exception>
#include <limits>

#include "fdelab/dde/state.hpp"
#include "fdelab/dde/trajectory.hpp"
#include "fdelab/error.hpp"

namespace fdelab::dde {

/// Handed to every right-hand-side evaluation. Gives read access to the
/// solution computed so far and collects the delays the evaluation used, so
/// the integrator can keep retarded arguments behind the active step.
template <std::size_t N, class Real = double>
class RhsContext {
 public:
  explicit RhsContext(const Trajectory<N, Real>& history)
      : history_(&history) {}

  const Trajectory<N, Real>& history() const { return *history_; }

  void note_delay(Real tau) { min_delay_ = std::min(min_delay_, tau); }
  Real min_delay() const { return min_delay_; }
  bool has_delay() const {
    return min_delay_ < std::numeric_limits<Real>::infinity();
  }
  void reset() { min_delay_ = std::numeric_limits<Real>::infinity(); }

 private:
  const Trajectory<N, Real>* history_;
  Real min_delay_ = std::numeric_limits<Real>::infinity();
};

template <class F, std::size_t N, class Real = double>
concept RetardedRhs = requires(F& f, Real t, const State<N, Real>& y,
                               RhsContext<N, Real>& ctx) {
  { f(t, y, ctx) } -> std::convertible_to<State<N, Real>>;
};

/// Calls `rhs`, re-labelling foreign exceptions and non-finite output as
/// RhsFailure. fdelab errors (Collision, HistoryTooShort, ...) pass through.
template <std::size_t N, class Real, class Rhs>
State<N, Real> evaluate_rhs(Rhs& rhs, Real t, const State<N, Real>& y,
                            RhsContext<N, Real>& ctx) {
  State<N, Real> f;
  try {
    f = rhs(t, y, ctx);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kRhsFailure, e.what());
  }
  if (!all_finite(f)) {
    throw Error(ErrorCode::kRhsFailure,
                "non-finite derivative at t=" + time_str(t));
  }
  return f;
}

/// One attempted Dormand-Prince 5(4) step.
template <std::size_t N, class Real = double>
struct StepResult {
  Real t_new = 0;
  State<N, Real> state_new{};
  /// |y5 - y4| per component.
  State<N, Real> error_estimate{};
  Segment<N, Real> interpolant;
  /// Derivative at (t_new, state_new); first stage of the next step.
  State<N, Real> k_end{};
  /// Smallest delay noted by any stage, and by the endpoint stage alone.
  Real min_delay = std::numeric_limits<Real>::infinity();
  Real endpoint_delay = std::numeric_limits<Real>::infinity();

  /// Weighted RMS error against atol + rtol * max(|y0|, |y1|).
  double error_norm(const State<N, Real>& y0, double rtol, double atol) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc =
          atol + rtol * static_cast<double>(
                            std::max(std::abs(y0[i]), std::abs(state_new[i])));
      const double r = static_cast<double>(error_estimate[i]) / sc;
      sum += r * r;
    }
    return std::sqrt(sum / static_cast<double>(N));
  }
};

namespace dopri5 {

/// Butcher tableau, error weights and dense-output weights, exact in Real.
template <class Real>
struct Tableau {
  static constexpr Real c2 = Real(1) / 5, c3 = Real(3) / 10, c4 = Real(4) / 5,
                        c5 = Real(8) / 9;

  static constexpr Real a21 = Real(1) / 5;
  static constexpr Real a31 = Real(3) / 40, a32 = Real(9) / 40;
  static constexpr Real a41 = Real(44) / 45, a42 = Real(-56) / 15,
                        a43 = Real(32) / 9;
  static constexpr Real a51 = Real(19372) / 6561, a52 = Real(-25360) / 2187,
                        a53 = Real(64448) / 6561, a54 = Real(-212) / 729;
  static constexpr Real a61 = Real(9017) / 3168, a62 = Real(-355) / 33,
                        a63 = Real(46732) / 5247, a64 = Real(49) / 176,
                        a65 = Real(-5103) / 18656;
  static constexpr Real a71 = Real(35) / 384, a73 = Real(500) / 1113,
                        a74 = Real(125) / 192, a75 = Real(-2187) / 6784,
                        a76 = Real(11) / 84;

  static constexpr Real e1 = Real(71) / 57600, e3 = Real(-71) / 16695,
                        e4 = Real(71) / 1920, e5 = Real(-17253) / 339200,
                        e6 = Real(22) / 525, e7 = Real(-1) / 40;

  static constexpr Real d1 = Real(-12715105075.0L) / 11282082432.0L,
                        d3 = Real(87487479700.0L) / 32700410799.0L,
                        d4 = Real(-10690763975.0L) / 1880347072.0L,
                        d5 = Real(701980252875.0L) / 199316789632.0L,
                        d6 = Real(-1453857185.0L) / 822651844.0L,
                        d7 = Real(69997945.0L) / 29380423.0L;
};

}  // namespace dopri5

/// Advances (t, y) to t_new = t + h (t_new is passed separately so a step can
/// land exactly on a breakpoint). `k1` is the derivative at (t, y). All
/// retarded queries issued by `rhs` go through `ctx.history()`.
template <std::size_t N, class Real, class Rhs>
StepResult<N, Real> dormand_prince_step(Rhs& rhs, RhsContext<N, Real>& ctx,
                                        Real t, const State<N, Real>& y,
                                        const State<N, Real>& k1, Real h,
                                        Real t_new) {
  using T = dopri5::Tableau<Real>;
  State<N, Real> tmp;
  auto stage = [&](Real tc) { return evaluate_rhs(rhs, tc, tmp, ctx); };

  ctx.reset();
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * T::a21 * k1[i];
  const State<N, Real> k2 = stage(t + T::c2 * h);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (T::a31 * k1[i] + T::a32 * k2[i]);
  const State<N, Real> k3 = stage(t + T::c3 * h);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (T::a41 * k1[i] + T::a42 * k2[i] + T::a43 * k3[i]);
  const State<N, Real> k4 = stage(t + T::c4 * h);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (T::a51 * k1[i] + T::a52 * k2[i] + T::a53 * k3[i] +
                         T::a54 * k4[i]);
  const State<N, Real> k5 = stage(t + T::c5 * h);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (T::a61 * k1[i] + T::a62 * k2[i] + T::a63 * k3[i] +
                         T::a64 * k4[i] + T::a65 * k5[i]);
  const State<N, Real> k6 = stage(t_new);
  const Real interior_delay = ctx.min_delay();

  // The increment is kept apart from y_new so the interpolant's derivative
  // is not polluted by the rounding of y_new.
  State<N, Real> incr, y_new;
  for (std::size_t i = 0; i < N; ++i) {
    incr[i] = h * (T::a71 * k1[i] + T::a73 * k3[i] + T::a74 * k4[i] +
                   T::a75 * k5[i] + T::a76 * k6[i]);
    y_new[i] = y[i] + incr[i];
  }
  tmp = y_new;
  ctx.reset();
  const State<N, Real> k7 = stage(t_new);

  StepResult<N, Real> out;
  out.t_new = t_new;
  out.state_new = y_new;
  out.k_end = k7;
  out.endpoint_delay = ctx.min_delay();
  out.min_delay = std::min(interior_delay, out.endpoint_delay);

  auto& [r1, r2, r3, r4, r5] = out.interpolant.coeffs;
  for (std::size_t i = 0; i < N; ++i) {
    out.error_estimate[i] =
        std::abs(h * (T::e1 * k1[i] + T::e3 * k3[i] + T::e4 * k4[i] +
                      T::e5 * k5[i] + T::e6 * k6[i] + T::e7 * k7[i]));
    r1[i] = y[i];
    r2[i] = incr[i];
    r3[i] = h * k1[i] - r2[i];
    r4[i] = r2[i] - h * k7[i] - r3[i];
    r5[i] = h * (T::d1 * k1[i] + T::d3 * k3[i] + T::d4 * k4[i] +
                 T::d5 * k5[i] + T::d6 * k6[i] + T::d7 * k7[i]);
  }
  out.interpolant.t_begin = t;
  out.interpolant.t_end = t_new;
  out.interpolant.h = h;
  return out;
}

}  // namespace fdelab::dde
