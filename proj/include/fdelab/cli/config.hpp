#pragma once

#include <charconv>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "fdelab/dde/integrate.hpp"
#include "fdelab/diagnostics/sampling.hpp"
#include "fdelab/electrodynamics/params.hpp"
#include "fdelab/electrodynamics/scenario.hpp"
#include "fdelab/error.hpp"

namespace fdelab::cli {

enum class Scenario {
  kHydrogenFde,
  kHydrogenCoulomb,
  kCompare,
  kTorque,
  kBalance,
  kSpectrum,
  kConvergence,
};

inline std::string_view scenario_name(Scenario s) {
  switch (s) {
    case Scenario::kHydrogenFde: return "hydrogen-fde";
    case Scenario::kHydrogenCoulomb: return "hydrogen-coulomb";
    case Scenario::kCompare: return "compare";
    case Scenario::kTorque: return "torque";
    case Scenario::kBalance: return "balance";
    case Scenario::kSpectrum: return "spectrum";
    case Scenario::kConvergence: return "convergence";
  }
  return "unknown";
}

inline std::optional<Scenario> parse_scenario(std::string_view name) {
  for (Scenario s :
       {Scenario::kHydrogenFde, Scenario::kHydrogenCoulomb, Scenario::kCompare,
        Scenario::kTorque, Scenario::kBalance, Scenario::kSpectrum,
        Scenario::kConvergence}) {
    if (scenario_name(s) == name) return s;
  }
  return std::nullopt;
}

/// Everything a run needs. Defaults reproduce the classical hydrogen setup.
struct ScenarioConfig {
  Scenario scenario = Scenario::kCompare;
  double kappa = electrodynamics::default_params().kappa;  // dnm^3 cfs^-2
  double mu = electrodynamics::default_params().mu;
  double c = electrodynamics::default_params().c;    // dnm cfs^-1
  double r0 = electrodynamics::default_params().r0;  // dnm
  double t_end = electrodynamics::RunOptions{}.t_end;  // cfs
  double rtol = electrodynamics::RunOptions{}.tol.rtol;
  double atol = electrodynamics::RunOptions{}.tol.atol;
  double sample_dt = diagnostics::kDefaultSampleDt;  // cfs
  /// Prescribed past written out before t = 0, cfs.
  double t_past = electrodynamics::RunOptions{}.t_past;
  double max_step = electrodynamics::RunOptions{}.max_step;  // cfs
  std::string output_path = ".";
  int k_max = 10;

  electrodynamics::PhysicalParams params() const {
    return electrodynamics::make_params(kappa, mu, c, r0);
  }

  electrodynamics::RunOptions run_options() const {
    electrodynamics::RunOptions o;
    o.t_end = t_end;
    o.tol = {rtol, atol};
    o.t_past = t_past;
    o.max_step = max_step;
    return o;
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] inline void parse_fail(int line, const std::string& what) {
  throw Error(ErrorCode::kConfigParse,
              "line " + std::to_string(line) + ": " + what);
}

inline double parse_double(std::string_view v, int line,
                           std::string_view key) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    parse_fail(line, "'" + std::string(key) + "' needs a finite number, got '" +
                         std::string(v) + "'");
  }
  return out;
}

inline int parse_int(std::string_view v, int line, std::string_view key) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    parse_fail(line, "'" + std::string(key) + "' needs an integer, got '" +
                         std::string(v) + "'");
  }
  return out;
}

}  // namespace detail

/// Reads `key = value` lines. `#` starts a comment, blank lines are skipped,
/// keys may appear once, and missing keys keep their defaults.
inline ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      detail::parse_fail(line_no, "expected key = value");
    }
    const std::string_view key = detail::trim(line.substr(0, eq));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      detail::parse_fail(line_no, "expected key = value");
    }
    if (!seen.emplace(key).second) {
      detail::parse_fail(line_no, "duplicate key '" + std::string(key) + "'");
    }
    auto num = [&] { return detail::parse_double(value, line_no, key); };
    if (key == "kappa") cfg.kappa = num();
    else if (key == "mu") cfg.mu = num();
    else if (key == "c") cfg.c = num();
    else if (key == "r0") cfg.r0 = num();
    else if (key == "t_end") cfg.t_end = num();
    else if (key == "rtol") cfg.rtol = num();
    else if (key == "atol") cfg.atol = num();
    else if (key == "sample_dt") cfg.sample_dt = num();
    else if (key == "t_past") cfg.t_past = num();
    else if (key == "max_step") cfg.max_step = num();
    else if (key == "output_path") cfg.output_path = std::string(value);
    else if (key == "k_max") cfg.k_max = detail::parse_int(value, line_no, key);
    else if (key == "scenario") {
      const auto s = parse_scenario(value);
      if (!s) {
        detail::parse_fail(line_no,
                           "unknown scenario '" + std::string(value) + "'");
      }
      cfg.scenario = *s;
    } else {
      detail::parse_fail(line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  return cfg;
}

/// Range checks that do not depend on where a value came from.
inline void validate(const ScenarioConfig& cfg) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kConfigParse, what);
  };
  if (!(cfg.t_end > 0.0)) fail("t_end must be positive");
  if (!(cfg.rtol > 0.0) || !(cfg.atol > 0.0)) {
    fail("tolerances must be positive");
  }
  if (!(cfg.sample_dt > 0.0)) fail("sample_dt must be positive");
  if (!(cfg.t_past >= 0.0)) fail("t_past must be non-negative");
  if (!(cfg.max_step > 0.0)) fail("max_step must be positive");
  if (cfg.k_max < 1) fail("k_max must be at least 1");
  if (cfg.output_path.empty()) fail("output_path is empty");
  try {
    electrodynamics::validate(cfg.params());
  } catch (const Error& e) {
    fail(e.what());
  }
}

}  // namespace fdelab::cli
