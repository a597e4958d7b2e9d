#pragma once

#include <string>
#include <vector>

#include "fdelab/error.hpp"

namespace fdelab::dde {

/// Hard discontinuities propagate instantaneously between components; soft
/// ones travel along the delays.
enum class DiscontinuityKind { kHard, kSoft };

struct Discontinuity {
  double t = 0.0;
  /// Lowest derivative order that jumps (1 = first derivative of the state).
  int order = 1;
  DiscontinuityKind kind = DiscontinuityKind::kSoft;
};

/// Ordered record of known breaking points of a solution.
class DiscontinuityLedger {
 public:
  DiscontinuityLedger() = default;

  const std::vector<Discontinuity>& points() const { return points_; }
  bool empty() const { return points_.empty(); }
  std::size_t size() const { return points_.size(); }

  friend DiscontinuityLedger record_discontinuity(DiscontinuityLedger ledger,
                                                  double t, int order,
                                                  DiscontinuityKind kind);

 private:
  std::vector<Discontinuity> points_;
};

/// Returns `ledger` extended by (t, order, kind). A repeated time merges into
/// the existing entry, keeping the lower order.
inline DiscontinuityLedger record_discontinuity(DiscontinuityLedger ledger,
                                                double t, int order,
                                                DiscontinuityKind kind) {
  if (order < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "discontinuity order must be non-negative");
  }
  if (!ledger.points_.empty()) {
    Discontinuity& last = ledger.points_.back();
    if (t < last.t) {
      throw Error(ErrorCode::kNonMonotoneTime,
                  "discontinuity at t=" + std::to_string(t) +
                      " precedes last recorded t=" + std::to_string(last.t));
    }
    if (t == last.t) {
      if (order < last.order) {
        last.order = order;
        last.kind = kind;
      }
      return ledger;
    }
  }
  ledger.points_.push_back({t, order, kind});
  return ledger;
}

}  // namespace fdelab::dde
