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

#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dlcz/cli/commands.hpp"
#include "dlcz/cli/config.hpp"

namespace {

int run(int argc, char** argv) {
  using namespace dlcz::cli;
  CLI::App app{"DLCZ quantum repeater simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string format;
  std::string out_path;
  int precision = -1;
  long long seed = -1;
  long long threads = -1;
  std::string sweep;
  std::vector<std::string> overrides;

  app.add_option("-c,--config", config_path, "INI configuration file");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("-o,--out", out_path, "output file (default: stdout)");
  app.add_option("--precision", precision, "significant digits")->check(CLI::Range(1, 17));
  app.add_option("--seed", seed, "RNG seed")->check(CLI::NonNegativeNumber);
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--sweep", sweep, "section.key=a:b:steps");
  app.add_option("--set", overrides, "section.key=value override (repeatable)");
  for (const auto& name : command_names()) app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    Config cfg = config_path.empty() ? Config{} : load_config(config_path);
    for (const auto& o : overrides) {
      const auto eq = o.find('=');
      if (eq == std::string::npos) throw ConfigError("--set: expected section.key=value");
      cfg.set(o.substr(0, eq), o.substr(eq + 1));
    }
    if (!format.empty()) cfg.set("output.format", format);
    if (!out_path.empty()) cfg.set("output.path", out_path);
    if (precision > 0) cfg.set("output.precision", std::to_string(precision));
    if (seed >= 0) cfg.set("trials.seed", std::to_string(seed));
    if (threads > 0) cfg.set("trials.threads", std::to_string(threads));
    cfg.validate();

    const std::string command = app.get_subcommands().front()->get_name();
    const Report report = sweep.empty() ? run_command(command, cfg) : run_sweep(command, cfg, sweep);
    for (const auto& line : report.summary) std::cerr << line << '\n';

    const std::string path = resolve_output_path(cfg.output.path);
    if (path.empty()) {
      write_report(report, cfg.output.format, cfg.output.precision, std::cout);
    } else {
      std::ofstream out(path);
      if (!out) throw ConfigError("output.path: cannot write '" + path + "'");
      write_report(report, cfg.output.format, cfg.output.precision, out);
    }
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(std::current_exception());
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
