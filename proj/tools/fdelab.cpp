#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "fdelab/cli.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<double> t_end, rtol, atol;
  std::optional<std::string> out;
  std::optional<int> k_max;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config, "key = value configuration file");
  sub->add_option("--t-end", o.t_end, "end of the integration window, cfs");
  sub->add_option("--rtol", o.rtol, "relative tolerance");
  sub->add_option("--atol", o.atol, "absolute tolerance");
  sub->add_option("--out", o.out, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = fdelab::cli;
  using fdelab::cli::Scenario;

  CLI::App app{"Two-body retarded electrodynamics and delay equation runs"};
  app.require_subcommand(1);
  Overrides o;
  const std::pair<const char*, Scenario> commands[] = {
      {"simulate", Scenario::kHydrogenFde},
      {"coulomb", Scenario::kHydrogenCoulomb},
      {"compare", Scenario::kCompare},
      {"torque", Scenario::kTorque},
      {"balance", Scenario::kBalance},
      {"spectrum", Scenario::kSpectrum},
      {"convergence", Scenario::kConvergence},
  };
  for (const auto& [name, scenario] : commands) {
    CLI::App* sub = app.add_subcommand(
        name, std::string("run the ") +
                  std::string(cli::scenario_name(scenario)) + " scenario");
    add_common(sub, o);
    if (scenario == Scenario::kSpectrum) {
      sub->add_option("--k-max", o.k_max, "number of roots to refine");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitConfig;
  }

  Scenario scenario = Scenario::kCompare;
  for (const auto& [name, s] : commands) {
    if (app.got_subcommand(name)) scenario = s;
  }

  cli::ScenarioConfig cfg;
  try {
    if (!o.config.empty()) {
      std::ifstream in(o.config, std::ios::binary);
      if (!in) {
        throw fdelab::Error(fdelab::ErrorCode::kConfigParse,
                            "cannot read " + o.config);
      }
      std::ostringstream text;
      text << in.rdbuf();
      cfg = cli::parse_config(text.str());
    }
  } catch (const fdelab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitConfig;
  }
  cfg.scenario = scenario;
  if (o.t_end) cfg.t_end = *o.t_end;
  if (o.rtol) cfg.rtol = *o.rtol;
  if (o.atol) cfg.atol = *o.atol;
  if (o.out) cfg.output_path = *o.out;
  if (o.k_max) cfg.k_max = *o.k_max;
  return cli::run(cfg, std::cout, std::cerr);
}
