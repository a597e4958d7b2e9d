#pragma once

#include "fdelab/dde/state.hpp"
#include "fdelab/vec3.hpp"

namespace fdelab::electrodynamics {

/// Flat layout used by the integrator:
/// [x1 y1 z1 x2 y2 z2 vx1 vy1 vz1 vx2 vy2 vz2].
template <class Real = double>
using State12 = dde::State<12, Real>;

template <class Real>
struct BasicSystemState {
  BasicVec3<Real> r1, r2;
  BasicVec3<Real> v1, v2;
};

using SystemState = BasicSystemState<double>;

template <class Real>
BasicVec3<Real> block(const State12<Real>& y, int offset) {
  return {y[offset], y[offset + 1], y[offset + 2]};
}

template <class Real>
void set_block(State12<Real>& y, int offset, const BasicVec3<Real>& v) {
  y[offset] = v.x;
  y[offset + 1] = v.y;
  y[offset + 2] = v.z;
}

template <class Real>
BasicSystemState<Real> unpack(const State12<Real>& y) {
  return {block(y, 0), block(y, 3), block(y, 6), block(y, 9)};
}

template <class Real>
State12<Real> pack(const BasicSystemState<Real>& s) {
  State12<Real> y{};
  set_block(y, 0, s.r1);
  set_block(y, 3, s.r2);
  set_block(y, 6, s.v1);
  set_block(y, 9, s.v2);
  return y;
}

/// (v1, v2, a1, a2) in the same layout.
template <class Real>
State12<Real> pack_derivative(const BasicSystemState<Real>& s,
                              const BasicVec3<Real>& a1,
                              const BasicVec3<Real>& a2) {
  return pack(BasicSystemState<Real>{s.v1, s.v2, a1, a2});
}

}  // namespace fdelab::electrodynamics
