#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

namespace fdelab::dde {

template <std::size_t N, class Real = double>
using State = std::array<Real, N>;

template <std::size_t N, class Real = double>
constexpr State<N, Real> zero_state() {
  return State<N, Real>{};
}

template <std::size_t N, class Real>
bool all_finite(const State<N, Real>& y) {
  using std::isfinite;
  for (const Real& v : y) {
    if (!isfinite(v)) return false;
  }
  return true;
}

/// Time stamp for error messages.
template <class Real>
std::string time_str(const Real& t) {
  return std::to_string(static_cast<double>(t));
}

}  // namespace fdelab::dde
