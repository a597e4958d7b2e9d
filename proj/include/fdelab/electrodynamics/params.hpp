#pragma once

#include <cmath>
#include <string>

#include "fdelab/error.hpp"

namespace fdelab::electrodynamics {

/// Scenario constants in computational units: length in dnm (1e-10 m), time
/// in cfs (1e-17 s).
///
/// kappa = q1 q2 / (4 pi eps0 m1) is signed (negative for attraction);
/// mu = m1 / m2 <= 1, particle 1 being the lighter one.
struct PhysicalParams {
  double kappa = 0.0;   // dnm^3 cfs^-2
  double mu = 0.0;      // dimensionless
  double c = 0.0;       // dnm cfs^-1
  double r0 = 0.0;      // dnm, radius of the lighter particle's circle
  double omega0 = 0.0;  // cfs^-1
};

/// sqrt(|kappa| / r^3), the angular velocity that balances the inverse-square
/// force when the heavier particle is held fixed.
inline double keplerian_omega(double kappa, double r) {
  return std::sqrt(std::abs(kappa) / (r * r * r));
}

/// sqrt(|kappa| / r), the matching orbital speed.
inline double keplerian_speed(double kappa, double r) {
  return std::sqrt(std::abs(kappa) / r);
}

/// Rigid two-body rotation about the fixed centre of mass with the lighter
/// particle on radius r0: the separation is r0 (1 + mu), so the Coulomb
/// balance gives omega^2 r0^3 (1 + mu)^2 = |kappa|.
inline double circular_omega(double kappa, double mu, double r0) {
  return keplerian_omega(kappa, r0) / (1.0 + mu);
}

inline PhysicalParams make_params(double kappa, double mu, double c,
                                  double r0) {
  return {kappa, mu, c, r0, circular_omega(kappa, mu, r0)};
}

/// Classical hydrogen: electron (particle 1) and proton (particle 2).
inline PhysicalParams default_params() {
  return make_params(-0.02528, 5.436e-4, 29.9792458, 0.53);
}

inline void validate(const PhysicalParams& p) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, what);
  };
  if (!(p.mu > 0.0 && p.mu <= 1.0)) fail("mu must lie in (0, 1]");
  if (!(p.c > 0.0) || !std::isfinite(p.c)) fail("c must be positive");
  if (!(p.r0 > 0.0) || !std::isfinite(p.r0)) fail("r0 must be positive");
  if (!(p.kappa != 0.0) || !std::isfinite(p.kappa)) {
    fail("kappa must be non-zero");
  }
  if (!(p.omega0 > 0.0)) fail("omega0 must be positive");
  const double balance = p.omega0 * p.omega0 * p.r0 * p.r0 * p.r0 *
                         (1.0 + p.mu) * (1.0 + p.mu);
  if (std::abs(balance - std::abs(p.kappa)) > 1e-6 * std::abs(p.kappa)) {
    fail("omega0 does not balance the Coulomb force on the circular orbit");
  }
  if (!(p.omega0 * p.r0 < p.c)) fail("circular orbit speed must be below c");
}

}  // namespace fdelab::electrodynamics
