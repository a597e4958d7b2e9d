#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fdelab/cli.hpp"
#include "gtest/gtest.h"

namespace fdelab::cli {
namespace {

namespace fs = std::filesystem;

class ScratchDir : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           (std::string("fdelab_cli_") + info->name());
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  ScenarioConfig config(Scenario s) const {
    ScenarioConfig cfg;
    cfg.scenario = s;
    cfg.output_path = dir_.string();
    return cfg;
  }

  fs::path dir_;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> data_rows(const fs::path& path) {
  std::istringstream in(slurp(path));
  std::string line;
  std::vector<std::vector<std::string>> rows;
  int n = 0;
  while (std::getline(in, line)) {
    if (n++ < 2) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

double number(const std::string& s) {
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

TEST(ParseConfig, EmptyTextGivesDefaults) {
  const ScenarioConfig cfg = parse_config("");
  const auto p = electrodynamics::default_params();
  EXPECT_EQ(cfg.kappa, p.kappa);
  EXPECT_EQ(cfg.mu, p.mu);
  EXPECT_EQ(cfg.c, p.c);
  EXPECT_EQ(cfg.r0, p.r0);
  EXPECT_EQ(cfg.t_end, 200.0);
  EXPECT_EQ(cfg.rtol, 1e-10);
  EXPECT_EQ(cfg.atol, 1e-12);
  EXPECT_EQ(cfg.sample_dt, 0.05);
}

TEST(ParseConfig, OverridesSpeedOfLight) {
  const ScenarioConfig cfg = parse_config("c = 30\n");
  EXPECT_EQ(cfg.c, 30.0);
  EXPECT_EQ(cfg.params().c, 30.0);
}

TEST(ParseConfig, CommentsAndBlankLines) {
  const ScenarioConfig cfg = parse_config(
      "# header\n\n  t_end = 50   # short\r\noutput_path = out dir\n"
      "scenario = spectrum\nk_max=4");
  EXPECT_EQ(cfg.t_end, 50.0);
  EXPECT_EQ(cfg.output_path, "out dir");
  EXPECT_EQ(cfg.scenario, Scenario::kSpectrum);
  EXPECT_EQ(cfg.k_max, 4);
}

void expect_parse_error(const std::string& text, const std::string& needle) {
  try {
    parse_config(text);
    FAIL() << "accepted: " << text;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigParse);
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos)
        << e.what();
  }
}

TEST(ParseConfig, RejectsBadInput) {
  expect_parse_error("velocity_of_light = 30", "line 1: unknown key");
  expect_parse_error("c = 30\nc = 31", "line 2: duplicate key");
  expect_parse_error("\nrtol = small", "line 2:");
  expect_parse_error("t_end", "line 1: expected key = value");
  expect_parse_error("mu = 1e-3x", "line 1:");
  expect_parse_error("k_max = 2.5", "line 1:");
  expect_parse_error("scenario = movie", "unknown scenario");
  expect_parse_error("c = inf", "line 1:");
}

TEST(Validate, RangeChecks) {
  EXPECT_NO_THROW(validate(ScenarioConfig{}));
  auto bad = [](auto mutate) {
    ScenarioConfig cfg;
    mutate(cfg);
    EXPECT_THROW(validate(cfg), Error);
  };
  bad([](ScenarioConfig& c) { c.t_end = 0.0; });
  bad([](ScenarioConfig& c) { c.rtol = -1.0; });
  bad([](ScenarioConfig& c) { c.atol = 0.0; });
  bad([](ScenarioConfig& c) { c.sample_dt = 0.0; });
  bad([](ScenarioConfig& c) { c.mu = 2.0; });
  bad([](ScenarioConfig& c) { c.k_max = 0; });
}

TEST(Csv, SeventeenSignificantDigitsRoundTrip) {
  for (double v : {0.1, -1.0 / 3.0, 6.02214076e23, 5e-324, 0.0, 1.0}) {
    const std::string s = format_number(v);
    EXPECT_EQ(number(s), v) << s;
    const auto mantissa = s.substr(0, s.find('e'));
    int digits = 0;
    for (char ch : mantissa) digits += (ch >= '0' && ch <= '9');
    EXPECT_EQ(digits, 17) << s;
  }
}

TEST(Csv, HeaderAndUnits) {
  std::ostringstream out;
  write_spectrum_csv(out, spectrum::characteristic_roots(2));
  std::istringstream in(out.str());
  std::string units, header;
  std::getline(in, units);
  std::getline(in, header);
  EXPECT_EQ(units.front(), '#');
  EXPECT_EQ(header, "k,x_k,y_k,residual");
}

TEST_F(ScratchDir, SpectrumWritesOneRowPerRoot) {
  ScenarioConfig cfg = config(Scenario::kSpectrum);
  cfg.k_max = 10;
  std::ostringstream log, err;
  ASSERT_EQ(run(cfg, log, err), kExitOk) << err.str();
  const auto rows = data_rows(dir_ / "spectrum.csv");
  ASSERT_EQ(rows.size(), 10u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), 4u);
    EXPECT_EQ(rows[i][0], std::to_string(i + 1));
    EXPECT_LE(number(rows[i][3]), 1e-10);
  }
}

TEST_F(ScratchDir, BalanceReportsBothQuantities) {
  std::ostringstream log, err;
  ASSERT_EQ(run(config(Scenario::kBalance), log, err), kExitOk);
  const std::string text = slurp(dir_ / "balance.csv");
  EXPECT_NE(text.find("omega_balance"), std::string::npos);
  EXPECT_NE(text.find("r_simultaneous"), std::string::npos);
  const auto rows = data_rows(dir_ / "balance.csv");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(number(rows[0][2]), 1.614, 1e-3);
}

TEST_F(ScratchDir, ConvergenceShowsFifthOrder) {
  std::ostringstream log, err;
  ASSERT_EQ(run(config(Scenario::kConvergence), log, err), kExitOk);
  const auto rows = data_rows(dir_ / "convergence.csv");
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_NEAR(number(rows[i][2]), 32.0, 0.4 * 32.0);
  }
}

TEST_F(ScratchDir, CompareDifferenceIsZeroOverPast) {
  ScenarioConfig cfg = config(Scenario::kCompare);
  cfg.t_end = 5.0;
  std::ostringstream log, err;
  ASSERT_EQ(run(cfg, log, err), kExitOk) << err.str();
  for (const char* name : {"trajectory_fde.csv", "trajectory_coulomb.csv"}) {
    const auto rows = data_rows(dir_ / name);
    ASSERT_FALSE(rows.empty());
    EXPECT_EQ(rows.front().size(), 13u);
  }
  const auto rows = data_rows(dir_ / "difference.csv");
  int past = 0;
  for (const auto& r : rows) {
    ASSERT_EQ(r.size(), 5u);
    if (number(r[0]) > 0.0) continue;
    ++past;
    for (int i = 1; i < 5; ++i) EXPECT_EQ(number(r[i]), 0.0) << r[0];
  }
  EXPECT_GT(past, 100);
}

TEST_F(ScratchDir, RepeatedRunsAreByteIdentical) {
  ScenarioConfig a = config(Scenario::kCompare);
  a.t_end = 5.0;
  ScenarioConfig b = a;
  b.output_path = (dir_ / "again").string();
  std::ostringstream log, err;
  ASSERT_EQ(run(a, log, err), kExitOk);
  ASSERT_EQ(run(b, log, err), kExitOk);
  for (const char* name :
       {"trajectory_fde.csv", "trajectory_coulomb.csv", "difference.csv"}) {
    EXPECT_EQ(slurp(dir_ / name), slurp(dir_ / "again" / name)) << name;
  }
}

TEST_F(ScratchDir, TorqueSeriesColumns) {
  ScenarioConfig cfg = config(Scenario::kTorque);
  cfg.t_end = 3.0;
  std::ostringstream log, err;
  ASSERT_EQ(run(cfg, log, err), kExitOk) << err.str();
  const auto rows = data_rows(dir_ / "torque.csv");
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows.front().size(), 3u);
  EXPECT_NE(log.str().find("sign changes"), std::string::npos);
}

TEST_F(ScratchDir, InvalidConfigExitsWithTwo) {
  ScenarioConfig cfg = config(Scenario::kHydrogenFde);
  cfg.rtol = 0.0;
  std::ostringstream log, err;
  EXPECT_EQ(run(cfg, log, err), kExitConfig);
  EXPECT_EQ(err.str().rfind("error: ConfigParse", 0), 0u) << err.str();
  EXPECT_FALSE(fs::exists(dir_ / "trajectory_fde.csv"));
}

TEST_F(ScratchDir, NumericalFailureExitsWithThree) {
  // Released at 99% of c, the electron is pushed past c.
  ScenarioConfig cfg = config(Scenario::kHydrogenFde);
  cfg.c = 0.22;
  cfg.t_end = 50.0;
  std::ostringstream log, err;
  EXPECT_EQ(run(cfg, log, err), kExitNumerical);
  EXPECT_EQ(err.str().rfind("error: Superluminal", 0), 0u) << err.str();
}

}  // namespace
}  // namespace fdelab::cli
