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

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dlcz/ensemble.hpp"
#include "dlcz/monte_carlo.hpp"
#include "dlcz/repeater.hpp"
#include "dlcz/scaling.hpp"

namespace dlcz::cli {

/// Invalid configuration; the message starts with the field path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct DynamicsConfig {
  std::size_t noise_modes = 3;
  std::size_t cutoff = 2;
  double kappa_t_end = 0.05;  ///< final time in units of 1/kappa'
  std::size_t steps = 200;
};

struct FreeSpaceConfig {
  double density = 1.0;     ///< atoms per unit volume
  double length = 1.0;      ///< ensemble length
  double wavenumber = 2.0;  ///< Stokes wavenumber
};

struct ScalingConfig {
  double length = 100.0;  ///< L in units of L_att
  double target_infidelity = 0.01;
  double per_connection_dark = 0.0;
  double asym = 0.0;
  std::size_t max_levels = 12;
  scaling::Objective objective = scaling::Objective::compositional;
  double exponent = 2.0;
};

struct ApplicationConfig {
  double vacuum_coeff = 0.0;  ///< c_n
  double app_efficiency = 1.0;
  double phase = 0.0;
  double dark_prob = 0.0;
  std::uint64_t rounds = 100000;
  double d0_re = 1.0, d0_im = 0.0, d1_re = 0.0, d1_im = 0.0;
};

struct TrialsConfig {
  monte_carlo::TrialConfig trial;
  std::size_t level = 2;
  std::string samples_path;  ///< optional per-trial CSV
};

struct OutputConfig {
  Format format = Format::json;
  std::string path;  ///< empty: standard output
  int precision = 9;
};

/// Lengths in units of L_att, times in seconds, rates in 1/s.
struct Config {
  ensemble::EnsembleParams ensemble;
  FreeSpaceConfig free_space;
  DynamicsConfig dynamics;
  repeater::RepeaterParams repeater;
  ScalingConfig scaling;
  ApplicationConfig application;
  TrialsConfig trials;
  OutputConfig output;

  /// Sets "section.key" from text, validating the single field.
  void set(std::string_view path, std::string_view value);
  /// Cross-field checks; throws ConfigError.
  void validate() const;
};

/// Strict INI: unknown sections or keys are rejected. Sections: ensemble,
/// free_space, dynamics, repeater, scaling, application, trials, output.
Config load_config(const std::string& path);
Config parse_config(std::string_view text);

/// Every accepted "section.key".
std::vector<std::string> config_keys();

}  // namespace dlcz::cli
