#pragma once

#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <future>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "fdelab/cli/config.hpp"
#include "fdelab/cli/csv.hpp"
#include "fdelab/dde/integrate.hpp"
#include "fdelab/diagnostics.hpp"
#include "fdelab/electrodynamics.hpp"
#include "fdelab/error.hpp"
#include "fdelab/spectrum.hpp"

namespace fdelab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Fixed-step refinement on x'(t) = -x(t - pi/2) with x = sin on
/// [-pi/2, 0], whose solution is sin(t). Errors are measured at step
/// endpoints over [0, 10] for h = (pi/2) / n, n = 4, 8, 16, 32.
inline std::vector<ConvergenceRow> convergence_study() {
  constexpr double quarter = std::numbers::pi / 2.0;
  dde::PastFunction<1> past{
      [](double t) { return dde::State<1>{std::sin(t)}; },
      [](double t) { return dde::State<1>{std::cos(t)}; }, -quarter};
  auto rhs = [](double t, const dde::State<1>&, dde::RhsContext<1>& ctx) {
    ctx.note_delay(quarter);
    return dde::State<1>{-ctx.history().state(t - quarter)[0]};
  };
  std::vector<ConvergenceRow> rows;
  for (int n : {4, 8, 16, 32}) {
    dde::IntegrateOptions opt;
    opt.fixed_step = quarter / n;
    const auto traj = dde::integrate<1>(rhs, past, 0.0, 10.0, {}, opt);
    double err = 0.0;
    for (const auto& seg : traj.segments()) {
      err = std::max(err, std::abs(seg.value(seg.t_end)[0] -
                                   std::sin(seg.t_end)));
    }
    ConvergenceRow row{opt.fixed_step, err, 0.0};
    if (!rows.empty()) row.ratio = rows.back().max_error / err;
    rows.push_back(row);
  }
  return rows;
}

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

template <class WriteFn>
void emit(const std::filesystem::path& path, std::ostream& log,
          WriteFn&& write) {
  std::ofstream out = open_output(path);
  write(out);
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
  log << "wrote " << path.string() << '\n';
}

using HydrogenRun = dde::Trajectory<12, electrodynamics::HydrogenReal>;

inline void run_scenario(const ScenarioConfig& cfg, std::ostream& log) {
  namespace ed = electrodynamics;
  namespace dg = diagnostics;
  const std::filesystem::path dir = cfg.output_path;
  const ed::PhysicalParams p = cfg.params();
  const ed::RunOptions opt = cfg.run_options();
  auto grid = [&](const HydrogenRun& run) {
    return dg::run_grid(run, cfg.sample_dt);
  };
  auto trajectory_csv = [&](const char* name, const HydrogenRun& run) {
    emit(dir / name, log,
         [&](std::ostream& o) { write_trajectory_csv(o, run, grid(run)); });
  };

  switch (cfg.scenario) {
    case Scenario::kHydrogenFde:
      trajectory_csv("trajectory_fde.csv", ed::run_retarded(p, opt));
      break;
    case Scenario::kHydrogenCoulomb:
      trajectory_csv("trajectory_coulomb.csv", ed::run_coulomb(p, opt));
      break;
    case Scenario::kCompare: {
      auto fde_job = std::async(std::launch::async,
                                [&] { return ed::run_retarded(p, opt); });
      auto ode_job = std::async(std::launch::async,
                                [&] { return ed::run_coulomb(p, opt); });
      const HydrogenRun fde = fde_job.get();
      const HydrogenRun ode = ode_job.get();
      trajectory_csv("trajectory_fde.csv", fde);
      trajectory_csv("trajectory_coulomb.csv", ode);
      const auto diff = dg::orbit_difference(fde, ode, cfg.sample_dt);
      emit(dir / "difference.csv", log,
           [&](std::ostream& o) { write_difference_csv(o, diff); });
      log << "max |dr| after t=0: "
          << format_number(dg::max_difference(diff, 0.0)) << " dnm\n";
      break;
    }
    case Scenario::kTorque: {
      const HydrogenRun fde = ed::run_retarded(p, opt);
      const auto series = dg::delay_torque_series(fde, p, cfg.sample_dt);
      emit(dir / "torque.csv", log,
           [&](std::ostream& o) { write_torque_csv(o, series); });
      log << "tangential force sign changes after t=0: "
          << dg::tangential_sign_changes(series, 0.0) << '\n';
      break;
    }
    case Scenario::kBalance: {
      const auto b = dg::torque_balance(p.mu, p.r0, p);
      emit(dir / "balance.csv", log,
           [&](std::ostream& o) { write_balance_csv(o, b); });
      log << "omega_balance " << format_number(b.omega_balance)
          << " cfs^-1, omega_classical " << format_number(b.omega_classical)
          << " cfs^-1, r_simultaneous " << format_number(b.r_simultaneous)
          << " dnm\n";
      break;
    }
    case Scenario::kSpectrum: {
      const auto roots = spectrum::characteristic_roots(cfg.k_max);
      emit(dir / "spectrum.csv", log,
           [&](std::ostream& o) { write_spectrum_csv(o, roots); });
      break;
    }
    case Scenario::kConvergence: {
      const auto rows = convergence_study();
      emit(dir / "convergence.csv", log,
           [&](std::ostream& o) { write_convergence_csv(o, rows); });
      break;
    }
  }
}

}  // namespace detail

/// Runs one scenario and writes its CSV files into cfg.output_path.
/// Returns 0 on success, 2 for an invalid configuration and 3 for a
/// numerical or output failure; the error goes to `err` prefixed by its
/// structured name.
inline int run(const ScenarioConfig& cfg, std::ostream& log,
               std::ostream& err) {
  try {
    validate(cfg);
    std::filesystem::create_directories(cfg.output_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: ConfigParse: output_path: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    detail::run_scenario(cfg, log);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace fdelab::cli
