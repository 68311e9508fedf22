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

#include "dlcz/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "dlcz/errors.hpp"

namespace dlcz::monte_carlo {

void TrialConfig::validate() const {
  if (n_trials == 0) throw std::invalid_argument("n_trials must be >= 1");
}

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return Rng(seq);
}

namespace {

struct Sampler {
  double click = 0.0;
  double pulse = 0.0;
  std::vector<double> swap;  ///< swap[i] = p_i, index 0 unused
  Policy policy = Policy::parallel_max;
  std::uint64_t attempts = 0;

  void charge(std::uint64_t n) {
    attempts += n;
    if (attempts > kAttemptCap) {
      throw InfeasibleError("monte carlo trial exceeded " + std::to_string(kAttemptCap) +
                            " attempts (click probability " + std::to_string(click) + ")");
    }
  }

  double generation(Rng& rng) {
    std::uint64_t n = 1;
    if (click < 1.0) n += std::geometric_distribution<std::uint64_t>(click)(rng);
    charge(n);
    return static_cast<double>(n) * pulse;
  }

  double level(std::size_t i, Rng& rng) {
    if (i == 0) return generation(rng);
    std::bernoulli_distribution ok(swap[i]);
    double total = 0.0;
    for (;;) {
      const double a = level(i - 1, rng);
      const double b = level(i - 1, rng);
      total += policy == Policy::parallel_max ? std::max(a, b) : a + b;
      charge(1);
      if (ok(rng)) return total;
    }
  }
};

Sampler make_sampler(const repeater::RepeaterParams& params, std::size_t level, Policy policy) {
  params.validate();
  Sampler s;
  s.click = params.eta_p() * params.excitation_prob + params.dark_prob;
  if (!(s.click > 0.0 && s.click <= 1.0)) {
    throw std::invalid_argument("click probability eta_p p_c + p_dc must be in (0, 1]");
  }
  s.pulse = params.pulse_time;
  s.policy = policy;
  s.swap.assign(level + 1, 0.0);
  if (level > 0) {
    repeater::RepeaterParams p = params;
    p.levels = level;
    const auto c = repeater::chain(p);
    for (std::size_t i = 1; i <= level; ++i) s.swap[i] = c[i].probability;
  }
  return s;
}

}  // namespace

double sample_generation_time(const repeater::RepeaterParams& params, Rng& rng) {
  return make_sampler(params, 0, Policy::parallel_max).generation(rng);
}

double sample_chain_time(const repeater::RepeaterParams& params, std::size_t level, Rng& rng,
                         Policy policy) {
  auto s = make_sampler(params, level, policy);
  return s.level(level, rng);
}

Estimate estimate(const repeater::RepeaterParams& params, std::size_t level,
                  const TrialConfig& cfg) {
  cfg.validate();
  const Sampler proto = make_sampler(params, level, cfg.policy);
  repeater::RepeaterParams p = params;
  p.levels = level;
  const double analytic = repeater::chain(p).back().time;

  const std::uint64_t n = cfg.n_trials;
  std::vector<double> samples(n);
  const std::size_t threads =
      static_cast<std::size_t>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(cfg.threads, n)));
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&](std::size_t w) {
    try {
      for (std::uint64_t t = w; t < n; t += threads) {
        Sampler s = proto;
        Rng rng = trial_rng(cfg.seed, t);
        samples[t] = s.level(level, rng);
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < threads; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  Estimate e;
  e.n_trials = n;
  e.seed = cfg.seed;
  double sum = 0.0;
  for (double x : samples) sum += x;
  e.mean = sum / static_cast<double>(n);
  double sq = 0.0;
  for (double x : samples) sq += (x - e.mean) * (x - e.mean);
  e.stddev = n > 1 ? std::sqrt(sq / static_cast<double>(n - 1)) : 0.0;
  e.ci95 = 1.96 * e.stddev / std::sqrt(static_cast<double>(n));
  e.analytic = analytic;
  e.ratio = e.mean / analytic;
  if (cfg.keep_samples) e.samples = std::move(samples);
  return e;
}

}  // namespace dlcz::monte_carlo
