#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "fdelab/error.hpp"
#include "fdelab/spectrum/quasi_polynomial.hpp"

namespace fdelab::spectrum {

inline constexpr double kRootResidual = 1e-10;
inline constexpr int kMaxNewtonIterations = 50;

struct SpectrumRoot {
  int k = 0;
  Complex z;
  /// |g(z)|
  double residual = 0.0;
};

/// Large-|z| approximation of the k-th root of z^2 e^z = -1 in the upper half
/// plane: (-ln 2 k pi, 2 k pi).
inline Complex asymptotic_seed(int k) {
  if (k < 1) {
    throw Error(ErrorCode::kInvalidArgument, "root index starts at 1");
  }
  const double y = 2.0 * k * std::numbers::pi;
  return {-std::log(y), y};
}

/// Damped complex Newton on g from `seed`: each step is halved until |g|
/// decreases. Stops once the step is at round-off level or |g| can no longer
/// be reduced.
inline SpectrumRoot refine_root(const QuasiPolynomial& g, Complex seed,
                                int k = 0) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  Complex z = seed;
  double r = std::abs(g.value(z));
  for (int iter = 0; iter < kMaxNewtonIterations; ++iter) {
    const Complex step = -g.value(z) / g.derivative(z);
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
      throw Error(ErrorCode::kNoConvergence, "Newton step is not finite");
    }
    double lambda = 1.0;
    Complex zn = z + step;
    double rn = std::abs(g.value(zn));
    for (int halving = 0; halving < 60 && !(rn < r); ++halving) {
      lambda *= 0.5;
      zn = z + lambda * step;
      rn = std::abs(g.value(zn));
    }
    if (!(rn < r)) break;
    z = zn;
    r = rn;
    if (std::abs(lambda * step) <= 4.0 * eps * std::abs(z)) break;
  }
  if (!(r <= kRootResidual)) {
    throw Error(ErrorCode::kNoConvergence,
                "residual " + std::to_string(r) + " after Newton iteration");
  }
  if (std::abs(z.imag() - seed.imag()) > std::numbers::pi) {
    throw Error(ErrorCode::kWrongBasin,
                "Newton left the seed's strip: seed y = " +
                    std::to_string(seed.imag()) +
                    ", root y = " + std::to_string(z.imag()));
  }
  return {k, z, r};
}

/// Roots k = 1..k_max of z^2 e^z = -1 with positive imaginary part, ordered
/// by imaginary part.
inline std::vector<SpectrumRoot> characteristic_roots(int k_max) {
  if (k_max < 0) {
    throw Error(ErrorCode::kInvalidArgument, "k_max must be non-negative");
  }
  const QuasiPolynomial g = retarded_oscillator();
  std::vector<SpectrumRoot> roots;
  for (int k = 1; k <= k_max; ++k) {
    roots.push_back(refine_root(g, asymptotic_seed(k), k));
  }
  return roots;
}

struct Box {
  double x_lo, x_hi, y_lo, y_hi;
};

struct ContourCount {
  int count = 0;
  /// (1 / 2 pi i) of the contour integral of g'/g, before rounding.
  Complex raw;
};

/// Zeros of g inside `box` by the argument principle: trapezoid rule for
/// (1 / 2 pi i) closed-integral g'/g dz along the boundary, counter-clockwise.
inline ContourCount count_roots_in_box(const QuasiPolynomial& g,
                                       const Box& box,
                                       int samples_per_side = 4000) {
  if (!(box.x_hi > box.x_lo) || !(box.y_hi > box.y_lo) ||
      samples_per_side < 2) {
    throw Error(ErrorCode::kInvalidArgument, "degenerate contour");
  }
  const Complex corners[5] = {{box.x_lo, box.y_lo},
                              {box.x_hi, box.y_lo},
                              {box.x_hi, box.y_hi},
                              {box.x_lo, box.y_hi},
                              {box.x_lo, box.y_lo}};
  Complex integral = 0.0;
  for (int side = 0; side < 4; ++side) {
    const Complex a = corners[side], b = corners[side + 1];
    const Complex dz = (b - a) / static_cast<double>(samples_per_side);
    Complex sum = 0.0;
    for (int j = 0; j <= samples_per_side; ++j) {
      const Complex z = a + static_cast<double>(j) * dz;
      const Complex f = g.derivative(z) / g.value(z);
      sum += (j == 0 || j == samples_per_side) ? 0.5 * f : f;
    }
    integral += sum * dz;
  }
  const Complex raw = integral / Complex(0.0, 2.0 * std::numbers::pi);
  return {static_cast<int>(std::lround(raw.real())), raw};
}

}  // namespace fdelab::spectrum
