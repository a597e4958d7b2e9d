#pragma once

#include <cmath>

#include "fdelab/electrodynamics/params.hpp"
#include "fdelab/error.hpp"

namespace fdelab::diagnostics {

/// Retarded inverse-square heuristic for a rigidly rotating pair with mass
/// ratio epsilon and electron radius r_e. e^2 per unit electron mass is
/// |kappa|.
struct BalanceReport {
  double epsilon = 0.0;
  double r_e = 0.0;              // dnm
  double omega_balance = 0.0;    // cfs^-1
  double omega_classical = 0.0;  // cfs^-1
  double r_simultaneous = 0.0;   // dnm
};

/// T_delay = (e^2 / c) epsilon / (1 + epsilon)^2 omega, along +z.
inline double delay_torque_estimate(double epsilon, double omega,
                                    const electrodynamics::PhysicalParams& p) {
  const double one_plus = 1.0 + epsilon;
  return std::abs(p.kappa) / p.c * epsilon / (one_plus * one_plus) * omega;
}

/// T_rad = -(2/3) (e^2 / c^3) omega^3 r_e^2, along +z.
inline double radiation_torque(double omega, double r_e,
                               const electrodynamics::PhysicalParams& p) {
  return -(2.0 / 3.0) * std::abs(p.kappa) / (p.c * p.c * p.c) * omega * omega *
         omega * r_e * r_e;
}

inline BalanceReport torque_balance(double epsilon, double r_e,
                                    const electrodynamics::PhysicalParams& p) {
  if (!(epsilon > 0.0) || !(r_e > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "epsilon and r_e must be positive");
  }
  BalanceReport b;
  b.epsilon = epsilon;
  b.r_e = r_e;
  b.omega_balance = (p.c / r_e) * std::sqrt(1.5 * epsilon) / (1.0 + epsilon);
  b.omega_classical = electrodynamics::keplerian_omega(p.kappa, r_e);
  b.r_simultaneous = std::abs(p.kappa) * (1.0 + epsilon) * (1.0 + epsilon) /
                     (1.5 * epsilon * p.c * p.c);
  return b;
}

}  // namespace fdelab::diagnostics
