// Integrates 20 cfs of classical hydrogen with and without retardation and
// prints how far the two electron orbits drift apart.
#include <cstdio>

#include "fdelab/diagnostics.hpp"
#include "fdelab/electrodynamics.hpp"

int main() {
  namespace ed = fdelab::electrodynamics;
  namespace dg = fdelab::diagnostics;

  const ed::PhysicalParams p = ed::default_params();
  ed::RunOptions opt;
  opt.t_end = 20.0;
  const auto fde = ed::run_retarded(p, opt);
  const auto ode = ed::run_coulomb(p, opt);

  const auto diff = dg::orbit_difference(fde, ode, 1.0);
  for (const auto& s : diff) {
    if (s.t < 0.0) continue;
    std::printf("t = %5.1f cfs   |dr| = %.3e dnm\n", s.t, s.dr_norm);
  }

  const auto b = dg::torque_balance(p.mu, p.r0, p);
  std::printf("omega_balance = %.6e cfs^-1, r_simultaneous = %.6e dnm\n",
              b.omega_balance, b.r_simultaneous);
}
