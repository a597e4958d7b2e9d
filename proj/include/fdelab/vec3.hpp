#pragma once

#include <cmath>

namespace fdelab {

/// Plain Cartesian 3-vector over a floating scalar.
template <class Real>
struct BasicVec3 {
  Real x = 0;
  Real y = 0;
  Real z = 0;

  constexpr BasicVec3& operator+=(const BasicVec3& o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr BasicVec3& operator-=(const BasicVec3& o) {
    x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr BasicVec3& operator*=(const Real& s) {
    x *= s; y *= s; z *= s;
    return *this;
  }

  friend constexpr BasicVec3 operator+(BasicVec3 a, const BasicVec3& b) {
    return a += b;
  }
  friend constexpr BasicVec3 operator-(BasicVec3 a, const BasicVec3& b) {
    return a -= b;
  }
  friend constexpr BasicVec3 operator-(const BasicVec3& a) {
    return {-a.x, -a.y, -a.z};
  }
  friend constexpr BasicVec3 operator*(BasicVec3 a, const Real& s) {
    return a *= s;
  }
  friend constexpr BasicVec3 operator*(const Real& s, BasicVec3 a) {
    return a *= s;
  }
  friend constexpr BasicVec3 operator/(BasicVec3 a, const Real& s) {
    a.x /= s; a.y /= s; a.z /= s;
    return a;
  }
  friend constexpr bool operator==(const BasicVec3&,
                                   const BasicVec3&) = default;
};

using Vec3 = BasicVec3<double>;

template <class To, class From>
constexpr BasicVec3<To> vec_cast(const BasicVec3<From>& v) {
  return {static_cast<To>(v.x), static_cast<To>(v.y), static_cast<To>(v.z)};
}

template <class Real>
constexpr Real dot(const BasicVec3<Real>& a, const BasicVec3<Real>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <class Real>
constexpr BasicVec3<Real> cross(const BasicVec3<Real>& a,
                                const BasicVec3<Real>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <class Real>
Real norm(const BasicVec3<Real>& a) {
  using std::sqrt;
  return sqrt(dot(a, a));
}

template <class Real>
BasicVec3<Real> normalized(const BasicVec3<Real>& a) {
  return a / norm(a);
}

}  // namespace fdelab
