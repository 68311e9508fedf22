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
#include <random>
#include <vector>

#include "dlcz/repeater.hpp"

namespace dlcz::monte_carlo {

/// serial_redo: the two sub-pairs are prepared one after another.
/// parallel_max: prepared concurrently; the attempt lasts the longer of the two.
enum class Policy { serial_redo, parallel_max };

struct TrialConfig {
  std::uint64_t seed = 1;
  std::uint64_t n_trials = 10000;
  Policy policy = Policy::parallel_max;
  std::size_t threads = 1;
  bool keep_samples = false;

  void validate() const;
};

/// Cap on generation attempts plus swap attempts inside a single trial.
inline constexpr std::uint64_t kAttemptCap = 100'000'000;

using Rng = std::mt19937_64;

/// Independent generator for one trial, derived from (seed, trial index).
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Geometric number of attempts at q = eta_p p_c + p_dc, times t_Delta.
double sample_generation_time(const repeater::RepeaterParams& params, Rng& rng);

/// Two level-(i-1) pairs per attempt, swap success p_i; a failed swap
/// regenerates both pairs. Swaps take no time. Throws InfeasibleError past
/// kAttemptCap attempts.
double sample_chain_time(const repeater::RepeaterParams& params, std::size_t level, Rng& rng,
                         Policy policy = Policy::parallel_max);

struct Estimate {
  std::uint64_t n_trials = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double ci95 = 0.0;        ///< half width, 1.96 stddev / sqrt(n)
  double analytic = 0.0;    ///< T_n = T_0 / prod p_i
  double ratio = 0.0;       ///< mean / analytic
  std::vector<double> samples;  ///< per trial, when requested
};

/// Deterministic for fixed (params, seed) regardless of thread count.
Estimate estimate(const repeater::RepeaterParams& params, std::size_t level,
                  const TrialConfig& cfg);

}  // namespace dlcz::monte_carlo
