#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fdelab/dde/discontinuity.hpp"
#include "fdelab/dde/state.hpp"
#include "fdelab/error.hpp"

namespace fdelab::dde {

/// Prescribed history of a retarded problem. `value` and `derivative` must be
/// defined on [t_start, t0].
template <std::size_t N, class Real = double>
struct PastFunction {
  std::function<State<N, Real>(Real)> value;
  std::function<State<N, Real>(Real)> derivative;
  Real t_start = 0;
};

/// Quartic continuous extension of one Dormand-Prince step, stored in
/// Hairer's nested form
///   y(theta) = r1 + theta (r2 + (1-theta) (r3 + theta (r4 + (1-theta) r5)))
/// with theta = (t - t_begin) / h.
template <std::size_t N, class Real = double>
struct Segment {
  Real t_begin = 0;
  Real t_end = 0;
  Real h = 0;
  std::array<State<N, Real>, 5> coeffs{};

  State<N, Real> value(Real t) const {
    const Real th = (t - t_begin) / h;
    const Real th1 = 1 - th;
    const auto& [r1, r2, r3, r4, r5] = coeffs;
    State<N, Real> y;
    for (std::size_t i = 0; i < N; ++i) {
      y[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
    }
    return y;
  }

  /// Exact time derivative of `value`.
  State<N, Real> derivative(Real t) const {
    const Real th = (t - t_begin) / h;
    const Real th1 = 1 - th;
    const auto& [r1, r2, r3, r4, r5] = coeffs;
    State<N, Real> dy;
    for (std::size_t i = 0; i < N; ++i) {
      const Real a = r4[i] + th1 * r5[i];
      const Real da = -r5[i];
      const Real b = r3[i] + th * a;
      const Real db = a + th * da;
      const Real c = r2[i] + th1 * b;
      const Real dc = -b + th1 * db;
      dy[i] = (c + th * dc) / h;
    }
    return dy;
  }
};

template <std::size_t N, class Real>
class Trajectory;

namespace detail {
template <std::size_t N, class Real>
struct TrajectoryWriter;
}  // namespace detail

/// Dense solution of a retarded problem: the prescribed past on
/// [t_hist_start, t0] followed by contiguous integration segments on
/// [t0, t_current].
template <std::size_t N, class Real = double>
class Trajectory {
 public:
  using real_type = Real;
  static constexpr std::size_t dimension = N;

  Trajectory(PastFunction<N, Real> past, Real t0)
      : past_(std::move(past)), t0_(t0) {
    if (!past_.value || !past_.derivative) {
      throw Error(ErrorCode::kInvalidArgument, "past function is empty");
    }
    if (past_.t_start > t0_) {
      throw Error(ErrorCode::kHistoryTooShort,
                  "past function starts after t0");
    }
  }

  Real t0() const { return t0_; }
  Real t_hist_start() const { return past_.t_start; }
  Real t_current() const {
    return segments_.empty() ? t0_ : segments_.back().t_end;
  }

  const PastFunction<N, Real>& past() const { return past_; }
  const std::vector<Segment<N, Real>>& segments() const { return segments_; }
  const DiscontinuityLedger& discontinuities() const { return ledger_; }

  /// Interpolated state (order 0) or its time derivative (order 1).
  State<N, Real> query(Real t, int derivative_order) const {
    if (derivative_order != 0 && derivative_order != 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "derivative order must be 0 or 1");
    }
    check_covered(t);
    if (t <= t0_) {
      return derivative_order == 0 ? past_.value(t) : past_.derivative(t);
    }
    const Segment<N, Real>& seg = segment_at(t);
    return derivative_order == 0 ? seg.value(t) : seg.derivative(t);
  }

  State<N, Real> state(Real t) const { return query(t, 0); }
  State<N, Real> derivative(Real t) const { return query(t, 1); }

  bool covers(Real t) const {
    return t >= past_.t_start && t <= t_current();
  }

 private:
  friend struct detail::TrajectoryWriter<N, Real>;

  void check_covered(Real t) const {
    if (t < past_.t_start) {
      throw Error(ErrorCode::kHistoryTooShort,
                  "query at t=" + time_str(t) + " precedes history start " +
                      time_str(past_.t_start));
    }
    if (t > t_current()) {
      throw Error(ErrorCode::kOutOfRange,
                  "query at t=" + time_str(t) + " beyond computed t=" +
                      time_str(t_current()));
    }
  }

  const Segment<N, Real>& segment_at(Real t) const {
    auto it = std::upper_bound(
        segments_.begin(), segments_.end(), t,
        [](Real v, const Segment<N, Real>& s) { return v < s.t_begin; });
    return it == segments_.begin() ? segments_.front() : *std::prev(it);
  }

  PastFunction<N, Real> past_;
  Real t0_;
  std::vector<Segment<N, Real>> segments_;
  DiscontinuityLedger ledger_;
};

namespace detail {

template <std::size_t N, class Real>
struct TrajectoryWriter {
  static void append(Trajectory<N, Real>& traj, Segment<N, Real> seg) {
    if (seg.t_begin != traj.t_current() || !(seg.t_end > seg.t_begin)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "segment does not continue the trajectory");
    }
    traj.segments_.push_back(std::move(seg));
  }
  static void set_ledger(Trajectory<N, Real>& traj,
                         DiscontinuityLedger ledger) {
    traj.ledger_ = std::move(ledger);
  }
};

}  // namespace detail

}  // namespace fdelab::dde
