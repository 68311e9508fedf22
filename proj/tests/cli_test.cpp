// Copyright 2026 The dlcz-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dlcz/cli/commands.hpp"
#include "dlcz/cli/config.hpp"
#include "dlcz/errors.hpp"

namespace {

using namespace dlcz::cli;

double scalar(const Report& r, const std::string& key) {
  for (const auto& [k, v] : r.scalars) {
    if (k == key) {
      if (const auto* d = std::get_if<double>(&v)) return *d;
      if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    }
  }
  ADD_FAILURE() << "missing scalar " << key;
  return std::nan("");
}

std::string render(const Report& r, Format f, int precision = 9) {
  std::ostringstream os;
  write_report(r, f, precision, os);
  return os.str();
}

int run_binary(const std::string& args, const std::string& out_file = "") {
  std::string cmd = std::string(DLCZ_CLI_PATH) + " " + args;
  cmd += out_file.empty() ? " > /dev/null 2>&1" : " > " + out_file + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(Config, DefaultsValidate) { EXPECT_NO_THROW(Config{}.validate()); }

TEST(Config, ParsesSections) {
  const auto c = parse_config("[repeater]\nswap_efficiency = 0.5\n[output]\nformat = csv\n");
  EXPECT_DOUBLE_EQ(c.repeater.swap_efficiency, 0.5);
  EXPECT_EQ(c.output.format, Format::csv);
}

TEST(Config, UnknownKeyNamesField) {
  try {
    parse_config("[repeater]\nswap_eficiency = 0.5\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("repeater.swap_eficiency"), std::string::npos);
  }
  EXPECT_THROW(parse_config("[nosuch]\nx = 1\n"), ConfigError);
}

TEST(Config, MalformedNumber) {
  EXPECT_THROW(parse_config("[repeater]\nswap_efficiency = 0.5x\n"), ConfigError);
}

TEST(Config, ZeroDetuningRejectedWithFieldPath) {
  Config c;
  try {
    c.set("ensemble.detuning", "0");
    c.validate();
    FAIL();
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("ensemble.detuning"), std::string::npos);
    EXPECT_EQ(exit_code_for(std::current_exception()), kConfig);
  }
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(exit_code_for(std::make_exception_ptr(dlcz::InfeasibleError("x"))), kInfeasible);
  EXPECT_EQ(exit_code_for(std::make_exception_ptr(dlcz::NumericError("x"))), kNumeric);
  EXPECT_EQ(exit_code_for(std::make_exception_ptr(dlcz::TruncationError("x"))), kNumeric);
  EXPECT_EQ(exit_code_for(std::make_exception_ptr(std::invalid_argument("x"))), kConfig);
  EXPECT_EQ(exit_code_for(std::make_exception_ptr(std::runtime_error("x"))), 1);
}

TEST(Commands, RatesHasFiveRateFields) {
  const auto r = run_command("rates", Config{});
  const auto j = nlohmann::json::parse(render(r, Format::json));
  for (const char* k : {"kappa_prime", "gamma_prime", "snr", "squeeze", "excitation_prob"}) {
    EXPECT_TRUE(j.contains(k)) << k;
  }
  EXPECT_EQ(j["schema_version"], 1);
}

TEST(Commands, RatesCsvIsSingleRow) {
  const auto text = render(run_command("rates", Config{}), Format::csv);
  std::istringstream in(text);
  std::string line;
  int data = 0;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# schema_version=1", 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line.rfind("kappa_prime,gamma_prime,snr", 0), 0u);
  while (std::getline(in, line)) ++data;
  EXPECT_EQ(data, 1);
}

TEST(Commands, DynamicsSeries) {
  const auto r = run_command("dynamics", Config{});
  ASSERT_EQ(r.tables.size(), 1u);
  EXPECT_GE(r.tables[0].rows.size(), 100u);
  EXPECT_LT(std::abs(scalar(r, "relative_error")), 0.05);
}

TEST(Commands, DynamicsWithoutNoise) {
  Config c;
  c.set("ensemble.spont_rate", "0");
  const auto r = run_command("dynamics", c);
  for (const auto& row : r.tables[0].rows) EXPECT_LT(std::abs(std::get<double>(row[2])), 1e-15);
}

TEST(Commands, ChshDefault) {
  const auto r = run_command("chsh", Config{});
  EXPECT_NEAR(scalar(r, "chsh"), 2.8284271, 1e-7);
  EXPECT_EQ(r.tables[0].rows.size(), 64u);
}

TEST(Commands, ScalingDirectBaseline) {
  Config c;
  c.set("repeater.swap_efficiency", "0.66666666666666667");
  c.set("scaling.length", "100");
  const auto r = run_command("scaling", c);
  EXPECT_NEAR(scalar(r, "ratio_direct") / 2.6881171418e43, 1.0, 1e-9);
  const auto text = render(r, Format::csv);
  EXPECT_NE(text.find("L_over_Latt,L0_over_Latt,n,ratio_compositional,ratio_closed_form,ratio_direct"),
            std::string::npos);
  EXPECT_NE(text.find("2.68811714e+43"), std::string::npos);
}

TEST(Commands, OptimizePowerLaw) {
  Config c;
  c.set("scaling.objective", "power_law");
  c.set("scaling.exponent", "2");
  const auto r = run_command("optimize", c);
  EXPECT_NEAR(scalar(r, "L0_star"), 2.0, 1e-9);
  EXPECT_NE(render(r, Format::csv).find(",2,"), std::string::npos);
}

TEST(Commands, ChainTable) {
  Config c;
  c.set("repeater.levels", "3");
  c.set("repeater.swap_efficiency", "0.9");
  const auto r = run_command("chain", c);
  ASSERT_EQ(r.tables[0].rows.size(), 4u);
  EXPECT_EQ(r.tables[0].columns, (std::vector<std::string>{"i", "L_i", "c_i", "p_i", "dF_i", "T_i"}));
}

TEST(Commands, TeleportAndEkert) {
  const auto t = run_command("teleport", Config{});
  EXPECT_NEAR(scalar(t, "output_fidelity"), 1.0, 1e-9);
  Config c;
  c.set("application.rounds", "2000");
  const auto a = render(run_command("ekert", c), Format::json);
  const auto b = render(run_command("ekert", c), Format::json);
  EXPECT_EQ(a, b);
  EXPECT_EQ(nlohmann::json::parse(a)["qber"], 0.0);
}

TEST(Commands, MonteCarloSeedAndThreads) {
  Config c;
  c.set("trials.n_trials", "2000");
  c.set("trials.seed", "7");
  c.set("trials.threads", "1");
  const auto one = render(run_command("montecarlo", c), Format::json);
  c.set("trials.threads", "4");
  EXPECT_EQ(one, render(run_command("montecarlo", c), Format::json));
  c.set("trials.seed", "8");
  EXPECT_NE(one, render(run_command("montecarlo", c), Format::json));
  const auto j = nlohmann::json::parse(one);
  for (const char* k : {"n_trials", "seed", "mean_s", "stddev_s", "ci95_s", "analytic_Tn_s", "ratio"}) {
    EXPECT_TRUE(j.contains(k)) << k;
  }
}

TEST(Commands, UnknownSubcommand) { EXPECT_THROW(run_command("nope", Config{}), ConfigError); }

TEST(Sweep, Table) {
  const auto r = run_sweep("chain", Config{}, "repeater.levels=0:3:4");
  ASSERT_EQ(r.tables[0].rows.size(), 4u);
  EXPECT_EQ(r.tables[0].columns.front(), "repeater.levels");
  EXPECT_THROW(run_sweep("chain", Config{}, "repeater.levels=0:3"), ConfigError);
  EXPECT_THROW(run_sweep("chain", Config{}, "repeater.nope=0:3:4"), ConfigError);
}

TEST(Format, NonFiniteIsNullInJson) {
  Report r{"x", {{"a", std::numeric_limits<double>::infinity()}, {"b", 1.0}}, {}, {}};
  const auto j = nlohmann::json::parse(render(r, Format::json));
  EXPECT_TRUE(j["a"].is_null());
  EXPECT_NE(render(r, Format::csv).find("inf,1"), std::string::npos);
}

TEST(Format, Precision) {
  EXPECT_EQ(format_number(1.0 / 3.0, 9), "0.333333333");
  EXPECT_EQ(format_number(1.0 / 3.0, 3), "0.333");
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_binary("rates"), 0);
  EXPECT_EQ(run_binary("rates --set ensemble.detuning=0"), 2);
  EXPECT_EQ(run_binary("rates --bogus-flag"), 2);
  EXPECT_EQ(run_binary("rates --config /nonexistent/file.ini"), 2);
  EXPECT_EQ(run_binary("montecarlo --set repeater.excitation_prob=1e-12 --set trials.n_trials=4"), 4);
  EXPECT_EQ(run_binary("scaling --set scaling.target_infidelity=1e-300 --set scaling.max_levels=3"), 3);
}

TEST(Binary, ByteIdenticalRunsAndOutputDir) {
  const auto dir = std::filesystem::temp_directory_path() / "dlcz_cli_test";
  std::filesystem::create_directories(dir);
  const std::string a = (dir / "a.csv").string();
  const std::string b = (dir / "b.csv").string();
  ASSERT_EQ(run_binary("montecarlo --format csv --seed 11 --set trials.n_trials=500", a), 0);
  ASSERT_EQ(run_binary("montecarlo --format csv --seed 11 --threads 3 --set trials.n_trials=500", b), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_NE(slurp(a).find("seed"), std::string::npos);

  const std::string env = "DLCZ_OUTPUT_DIR=" + dir.string() + " ";
  std::filesystem::remove(dir / "rates.json");
  const std::string cmd = env + DLCZ_CLI_PATH + " rates -o rates.json";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "rates.json"));
  std::filesystem::remove_all(dir);
}

}  // namespace
