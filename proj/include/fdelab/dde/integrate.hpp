#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "fdelab/dde/discontinuity.hpp"
#include "fdelab/dde/dormand_prince.hpp"
#include "fdelab/dde/state.hpp"
#include "fdelab/dde/trajectory.hpp"
#include "fdelab/error.hpp"

namespace fdelab::dde {

struct Tolerance {
  double rtol = 1e-10;
  double atol = 1e-12;
};

struct IntegrateOptions {
  /// Known breaking points, typically the junction with the past at t0.
  DiscontinuityLedger discontinuities;
  /// How many delay images of each recorded breaking point become forced
  /// step endpoints.
  int propagated_images = 3;
  /// Neutral problems (right-hand side reads retarded derivatives) do not
  /// smooth their discontinuities, so images keep the parent's order.
  bool neutral = false;
  /// > 0 switches off error control and uses this step everywhere except
  /// where a breakpoint or t_end forces a shorter one.
  double fixed_step = 0.0;
  double h_min = 1e-12;
  /// Upper bound on accepted steps, on top of the delay cap.
  double h_max = std::numeric_limits<double>::infinity();
  /// 0 selects an initial step from the derivative at t0.
  double h_initial = 0.0;
  std::size_t max_steps = 50'000'000;
};

/// Largest admissible step when the shortest active delay is `min_delay`:
/// every stage of a step this short reads history that is already accepted.
template <class Real>
Real step_cap_for_delay(Real min_delay) {
  if (!(min_delay > 0)) {
    throw Error(ErrorCode::kNonpositiveDelay,
                "delay " + time_str(min_delay) + " is not positive");
  }
  return Real(0.9L) * min_delay;
}

namespace detail {

template <class Real>
struct Breakpoint {
  Real t;
  int order;
  int generation;
};

}  // namespace detail

/// Method-of-steps solution of y'(t) = rhs(t, y(t), history) on [t0, t_end]
/// with y = past on [past.t_start, t0].
///
/// The right-hand side reads retarded values through `ctx.history()` and
/// reports each delay it uses with `ctx.note_delay`. Steps are capped at
/// step_cap_for_delay(shortest noted delay) so retarded arguments always fall
/// on accepted segments; breakpoints from `options.discontinuities` and their
/// first `propagated_images` delay images are hit exactly.
template <std::size_t N, class Real, class Rhs>
  requires RetardedRhs<Rhs, N, Real>
Trajectory<N, Real> integrate(Rhs&& rhs, PastFunction<N, Real> past,
                              std::type_identity_t<Real> t0,
                              std::type_identity_t<Real> t_end, Tolerance tol,
                              const IntegrateOptions& options = {}) {
  if (!(t_end > t0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "t_end must exceed t0; retarded problems are only solved "
                "forward in time");
  }
  if (!(tol.rtol > 0.0) || !(tol.atol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerances must be positive");
  }

  Trajectory<N, Real> traj(std::move(past), t0);
  using Writer = detail::TrajectoryWriter<N, Real>;
  using Breakpoint = detail::Breakpoint<Real>;
  constexpr Real kInf = std::numeric_limits<Real>::infinity();
  const Real h_max = static_cast<Real>(options.h_max);

  std::vector<Discontinuity> reached;
  std::vector<Breakpoint> pending;  // sorted, all > current t
  for (const Discontinuity& d : options.discontinuities.points()) {
    if (d.t < t0 || d.t > t_end) continue;
    reached.push_back(d);
    pending.push_back({static_cast<Real>(d.t), d.order, 0});
  }

  const Real t_eps = 64 * std::numeric_limits<Real>::epsilon() *
                     std::max({Real(1), std::abs(t0), std::abs(t_end)});

  RhsContext<N, Real> ctx(traj);
  Real t = t0;
  State<N, Real> y = traj.past().value(t0);
  ctx.reset();
  State<N, Real> k1 = evaluate_rhs(rhs, t, y, ctx);
  auto step_cap = [&](Real min_delay) {
    return min_delay < kInf ? std::min(h_max, step_cap_for_delay(min_delay))
                            : h_max;
  };
  Real cap = step_cap(ctx.min_delay());
  const Real delay_here = ctx.min_delay();

  auto schedule_image = [&](const Breakpoint& bp, Real delay) {
    if (bp.generation >= options.propagated_images) return;
    if (!(delay < kInf)) return;
    const Real ti = bp.t + delay;
    if (ti > t_end - t_eps) return;
    const int order = options.neutral ? bp.order : bp.order + 1;
    Breakpoint img{ti, order, bp.generation + 1};
    auto pos = std::upper_bound(
        pending.begin(), pending.end(), ti,
        [](Real v, const Breakpoint& b) { return v < b.t; });
    pending.insert(pos, img);
  };

  // Breakpoints at t0 itself.
  while (!pending.empty() && pending.front().t <= t + t_eps) {
    schedule_image(pending.front(), delay_here);
    pending.erase(pending.begin());
  }

  const Real fixed_step = static_cast<Real>(options.fixed_step);
  const Real h_min = static_cast<Real>(options.h_min);
  Real h;
  if (fixed_step > 0) {
    h = fixed_step;
  } else if (options.h_initial > 0.0) {
    h = static_cast<Real>(options.h_initial);
  } else {
    double dy = 0.0, df = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double yi = static_cast<double>(y[i]);
      const double fi = static_cast<double>(k1[i]);
      const double sc = tol.atol + tol.rtol * std::abs(yi);
      dy += (yi / sc) * (yi / sc);
      df += (fi / sc) * (fi / sc);
    }
    dy = std::sqrt(dy / N);
    df = std::sqrt(df / N);
    h = static_cast<Real>((dy < 1e-5 || df < 1e-5) ? 1e-6 : 0.01 * dy / df);
    h = std::min(h, Real(0.1L) * (t_end - t0));
  }

  bool last_rejected = false;
  std::size_t steps = 0;
  while (t_end - t > t_eps) {
    if (++steps > options.max_steps) {
      throw Error(ErrorCode::kStepSizeUnderflow,
                  "step budget exhausted at t=" + time_str(t));
    }
    Real step = std::min({h, cap, t_end - t});
    if (fixed_step > 0) step = std::min(fixed_step, cap);
    Real target = t + step;
    bool on_breakpoint = false;
    if (!pending.empty() && target >= pending.front().t - t_eps) {
      target = pending.front().t;
      on_breakpoint = true;
    }
    if (target >= t_end - t_eps) {
      target = t_end;
      on_breakpoint = false;
    }
    step = target - t;
    if (step < h_min) {
      throw Error(ErrorCode::kStepSizeUnderflow,
                  "step " + time_str(step) + " below minimum at t=" +
                      time_str(t));
    }

    StepResult<N, Real> res;
    try {
      res = dormand_prince_step(rhs, ctx, t, y, k1, step, target);
    } catch (const Error& e) {
      // A stage reached past the accepted solution: the delay shrank faster
      // than the cap anticipated. Retry shorter.
      if (e.code() != ErrorCode::kOutOfRange || fixed_step > 0) throw;
      h = step / 2;
      last_rejected = true;
      continue;
    }

    const double err = res.error_norm(y, tol.rtol, tol.atol);
    if (!(fixed_step > 0) && err > 1.0) {
      h = step * static_cast<Real>(std::max(0.2, 0.9 * std::pow(err, -0.2)));
      last_rejected = true;
      continue;
    }

    Writer::append(traj, res.interpolant);
    t = target;
    y = res.state_new;
    k1 = res.k_end;
    cap = step_cap(res.min_delay);

    if (!(fixed_step > 0)) {
      double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 10.0;
      fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 10.0);
      // Landing on a breakpoint or t_end truncates the step; grow from the
      // controller's proposal rather than the truncated length.
      h = std::max(step, std::min(h, cap)) * static_cast<Real>(fac);
    }
    last_rejected = false;

    if (on_breakpoint) {
      while (!pending.empty() && pending.front().t <= t + t_eps) {
        const Breakpoint bp = pending.front();
        pending.erase(pending.begin());
        if (bp.generation > 0) {
          reached.push_back(
              {static_cast<double>(bp.t), bp.order, DiscontinuityKind::kSoft});
        }
        schedule_image(bp, res.endpoint_delay);
      }
    }
  }

  std::stable_sort(reached.begin(), reached.end(),
                   [](const Discontinuity& a, const Discontinuity& b) {
                     return a.t < b.t;
                   });
  DiscontinuityLedger ledger;
  for (const Discontinuity& d : reached) {
    ledger = record_discontinuity(std::move(ledger), d.t, d.order, d.kind);
  }
  Writer::set_ledger(traj, std::move(ledger));
  return traj;
}

}  // namespace fdelab::dde
