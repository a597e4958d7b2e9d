#pragma once

#include <charconv>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fdelab/dde/trajectory.hpp"
#include "fdelab/diagnostics/balance.hpp"
#include "fdelab/diagnostics/orbit.hpp"
#include "fdelab/diagnostics/torque.hpp"
#include "fdelab/spectrum/roots.hpp"

namespace fdelab::cli {

inline constexpr std::string_view kUnitsLine =
    "# units: length dnm (1e-10 m), time cfs (1e-17 s), velocity dnm/cfs";

/// 17 significant digits in scientific notation; reads back to the same
/// double.
inline std::string format_number(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v,
                                 std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::string_view units, std::string_view header)
      : out_(out) {
    out_ << units << '\n' << header << '\n';
  }

  template <class... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
    out_ << '\n';
  }

 private:
  static std::string cell(double v) { return format_number(v); }
  static std::string cell(int v) { return std::to_string(v); }

  std::ostream& out_;
};

template <class Real>
void write_trajectory_csv(std::ostream& out,
                          const dde::Trajectory<12, Real>& traj,
                          const std::vector<double>& times) {
  CsvWriter w(out, kUnitsLine, "t,x1,y1,z1,x2,y2,z2,vx1,vy1,vz1,vx2,vy2,vz2");
  for (double t : times) {
    const auto y = traj.state(t);
    auto d = [&](int i) { return static_cast<double>(y[i]); };
    w.row(t, d(0), d(1), d(2), d(3), d(4), d(5), d(6), d(7), d(8), d(9),
          d(10), d(11));
  }
}

inline void write_difference_csv(
    std::ostream& out,
    const std::vector<diagnostics::OrbitDifferenceSample>& diff) {
  CsvWriter w(out, kUnitsLine, "t,dx,dy,dz,dnorm");
  for (const auto& s : diff) w.row(s.t, s.dr.x, s.dr.y, s.dr.z, s.dr_norm);
}

inline void write_torque_csv(std::ostream& out,
                             const diagnostics::TorqueSeries& series) {
  CsvWriter w(out,
              "# units: time cfs, force dnm/cfs^2 and torque dnm^2/cfs^2, "
              "both per unit electron mass",
              "t,f_tangential,torque_z");
  for (const auto& s : series.samples) {
    w.row(s.t, s.tangential_force, s.torque_z);
  }
}

inline void write_spectrum_csv(
    std::ostream& out, const std::vector<spectrum::SpectrumRoot>& roots) {
  CsvWriter w(out,
              "# units: roots of z^2 e^z = -1 in cfs^-1 for a delay of 1 cfs",
              "k,x_k,y_k,residual");
  for (const auto& r : roots) w.row(r.k, r.z.real(), r.z.imag(), r.residual);
}

inline void write_balance_csv(std::ostream& out,
                              const diagnostics::BalanceReport& b) {
  CsvWriter w(out, "# units: r_e and r_simultaneous dnm, omegas cfs^-1",
              "epsilon,r_e,omega_balance,omega_classical,r_simultaneous");
  w.row(b.epsilon, b.r_e, b.omega_balance, b.omega_classical,
        b.r_simultaneous);
}

struct ConvergenceRow {
  double h = 0.0;
  double max_error = 0.0;
  /// Error at the previous (twice larger) step over this one; 0 for the first.
  double ratio = 0.0;
};

inline void write_convergence_csv(std::ostream& out,
                                  const std::vector<ConvergenceRow>& rows) {
  CsvWriter w(out, "# units: step and time dimensionless", "h,max_error,ratio");
  for (const auto& r : rows) w.row(r.h, r.max_error, r.ratio);
}

}  // namespace fdelab::cli
