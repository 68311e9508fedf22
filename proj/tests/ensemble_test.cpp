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
#include <limits>

#include "dlcz/ensemble.hpp"
#include "dlcz/errors.hpp"
#include "dlcz/fock/ops.hpp"

namespace dlcz::ensemble {
namespace {

EnsembleParams reference() {
  EnsembleParams p;
  p.atom_count = 100;
  p.rabi = 1.0;
  p.coupling = 1.0;
  p.detuning = 10.0;
  p.cavity_decay = 10.0;
  p.spont_rate = 1.0;
  return p;
}

// Rates producing the requested kappa' t and R_sn directly.
EffectiveRates rates_for(double kappa_prime, double gamma_prime) {
  EffectiveRates r;
  r.kappa_prime = kappa_prime;
  r.gamma_prime = gamma_prime;
  return r;
}

TEST(EffectiveRates, ReferenceValues) {
  const auto r = effective_rates(reference());
  EXPECT_NEAR(r.kappa_prime, 0.4, 1e-15);
  EXPECT_NEAR(r.gamma_prime, 0.01, 1e-16);
  EXPECT_NEAR(r.snr, 40.0, 1e-12);
  EXPECT_NEAR(r.snr, r.kappa_prime / r.gamma_prime, 1e-12);
  EXPECT_EQ(r.squeeze, 0.0);
  EXPECT_EQ(r.excitation_prob, 0.0);
  EXPECT_NEAR(r.bad_cavity_ratio, 10.0, 1e-12);
  EXPECT_FALSE(r.bad_cavity_warning);
}

TEST(EffectiveRates, SqueezeFollowsInteractionTime) {
  auto p = reference();
  p.interaction_time = 2.5;  // kappa' t = 1
  const auto r = effective_rates(p);
  EXPECT_NEAR(std::cosh(r.squeeze), std::exp(0.5), 1e-14);
  EXPECT_NEAR(r.excitation_prob, std::tanh(r.squeeze) * std::tanh(r.squeeze), 1e-14);
  EXPECT_GE(r.excitation_prob, 0.0);
  EXPECT_LT(r.excitation_prob, 1.0);
}

TEST(EffectiveRates, BadCavityWarningAndGuards) {
  auto p = reference();
  p.atom_count = 10000;
  EXPECT_TRUE(effective_rates(p).bad_cavity_warning);
  p = reference();
  p.spont_rate = 0.0;
  EXPECT_EQ(effective_rates(p).snr, std::numeric_limits<double>::infinity());
  p = reference();
  p.detuning = 0.0;
  EXPECT_THROW(effective_rates(p), std::invalid_argument);
  p = reference();
  p.cavity_decay = 0.0;
  EXPECT_THROW(effective_rates(p), std::invalid_argument);
}

TEST(Langevin, ClosedFormAndIntegrationAgree) {
  const auto p = reference();
  EXPECT_EQ(langevin_mean_solution(p, 0.0), 1.0);
  EXPECT_NEAR(langevin_mean_solution(p, 5.0), std::exp(1.0), 1e-14);  // kappa' t = 2
  double prev = 0.0;
  for (int k = 0; k <= 30; ++k) {
    const double t = k * 0.1 / 0.4;  // kappa' t in [0, 3]
    const double exact = langevin_mean_solution(p, t);
    EXPECT_NEAR(langevin_mean_numeric(p, t), exact, 1e-8);
    EXPECT_GT(exact, prev);
    prev = exact;
  }
}

TEST(SqueezedJointState, ZeroSqueezeIsVacuum) {
  const auto rho = squeezed_joint_state(rates_for(0.4, 0.01), 3);
  EXPECT_NEAR(rho.population(0), 1.0, 1e-15);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-15);
}

TEST(SqueezedJointState, OnePercentExcitation) {
  auto r = rates_for(0.4, 0.01);
  r.excitation_prob = 0.01;
  r.squeeze = std::atanh(0.1);
  const auto rho = squeezed_joint_state(r, 6);
  const auto& layout = rho.layout();
  const std::size_t one_one[] = {1, 1};
  const double ratio = rho.population(layout.index_of(one_one)) / rho.population(0);
  EXPECT_NEAR(ratio, 0.01, 1e-13);
  const double s = std::sinh(r.squeeze);
  EXPECT_NEAR(fock::mean_photon_number(rho, 1), s * s, 1e-10);
  double diag = 0.0;
  for (std::size_t n = 0; n <= layout.cutoff(); ++n) {
    const std::size_t nn[] = {n, n};
    diag += rho.population(layout.index_of(nn));
  }
  EXPECT_GE(diag, 1.0 - std::pow(0.01, double(layout.cutoff() + 1)) - 1e-15);
  EXPECT_LE(diag, 1.0 + 1e-14);
}

TEST(SqueezedJointState, TruncationGuard) {
  auto r = rates_for(0.4, 0.01);
  r.squeeze = 1.5;
  EXPECT_THROW(squeezed_joint_state(r, 3), TruncationError);
}

std::vector<double> grid(double t_end, int steps) {
  std::vector<double> t;
  for (int k = 0; k <= steps; ++k) t.push_back(t_end * k / steps);
  return t;
}

TEST(MasterEquation, NoSpontaneousEmissionLeavesNoiseModesEmpty) {
  const auto pops = integrate_master_equation(rates_for(1.0, 0.0), 3, 3, grid(0.05, 10));
  for (double n : pops.per_noise_mode) EXPECT_NEAR(n, 0.0, 1e-10);
  EXPECT_GT(pops.collective.back(), 0.04);
}

TEST(MasterEquation, ShortTimeLinearRates) {
  const double kp = 1.0;
  const double gp = 0.1;
  const auto pops = integrate_master_equation(rates_for(kp, gp), 4, 3, grid(0.05, 5));
  for (std::size_t k = 1; k < pops.time_grid.size(); ++k) {
    const double t = pops.time_grid[k];
    EXPECT_NEAR(pops.collective[k] / ((kp + gp) * t), 1.0, 0.05);
    EXPECT_NEAR(pops.per_noise_mode[k] / (gp * t), 1.0, 0.05);
    EXPECT_NEAR(pops.collective[k] / pops.per_noise_mode[k], (kp + gp) / gp,
                0.05 * (kp + gp) / gp);
  }
}

TEST(MasterEquation, MatchesExactMeanPhotonGrowth) {
  // d<n>/dt = g(<n> + 1) from vacuum gives <n> = e^{gt} - 1 without truncation.
  const double kp = 2.0;
  const double gp = 0.5;
  const auto pops = integrate_master_equation(rates_for(kp, gp), 2, 14, grid(0.1, 4));
  for (std::size_t k = 0; k < pops.time_grid.size(); ++k) {
    const double t = pops.time_grid[k];
    EXPECT_NEAR(pops.collective[k], std::expm1((kp + gp) * t), 1e-6);
    EXPECT_NEAR(pops.per_noise_mode[k], std::expm1(gp * t), 1e-7);
  }
}

TEST(MasterEquation, TraceAndPositivity) {
  const auto pops = integrate_master_equation(rates_for(3.0, 0.3), 3, 3, grid(0.5, 20));
  for (double tr : pops.trace) EXPECT_NEAR(tr, 1.0, 1e-9);
  EXPECT_GE(pops.min_population, -1e-10);
  for (std::size_t k = 1; k < pops.collective.size(); ++k) {
    EXPECT_GE(pops.collective[k], pops.collective[k - 1]);
    EXPECT_GE(pops.per_noise_mode[k], pops.per_noise_mode[k - 1]);
  }
}

TEST(MasterEquation, SymmetricRatesGiveEqualPopulations) {
  const auto pops = integrate_master_equation(rates_for(0.0, 0.7), 3, 3, grid(0.2, 8));
  for (std::size_t k = 0; k < pops.time_grid.size(); ++k) {
    EXPECT_NEAR(pops.collective[k], pops.per_noise_mode[k], 1e-9);
  }
}

TEST(MasterEquation, RatioApproachesSnrPlusOne) {
  for (double snr : {1.0, 10.0, 40.0, 100.0}) {
    for (double kt : {0.01, 0.05}) {
      const double kp = 1.0;
      const auto pops = integrate_master_equation(rates_for(kp, kp / snr), 3, 3, {kt});
      const double ratio = pops.collective[0] / pops.per_noise_mode[0];
      EXPECT_NEAR(ratio / (snr + 1.0), 1.0, 0.05) << "snr " << snr << " kt " << kt;
    }
  }
}

TEST(MasterEquation, RejectsBadInput) {
  EXPECT_THROW(integrate_master_equation(rates_for(1, 0.1), 1, 3, {0.1}), std::invalid_argument);
  EXPECT_THROW(integrate_master_equation(rates_for(1, 0.1), 2, 3, {0.2, 0.1}),
               std::invalid_argument);
  EXPECT_THROW(integrate_master_equation(rates_for(1, 0.1), 2, 3, {}), std::invalid_argument);
  EXPECT_THROW(integrate_master_equation(rates_for(1, 0.1), 12, 4, {0.1}), DimensionError);
}

TEST(FreeSpace, OpticalDepthEstimate) {
  const double k = 2.0;
  const double rho = 0.5;
  const auto unit = free_space_snr(rho, k * k / (3.0 * rho), k);
  EXPECT_NEAR(unit.snr, 1.0, 1e-15);
  EXPECT_EQ(unit.snr, unit.optical_depth);
  const auto a = free_space_snr(rho, 3.0, k);
  const auto b = free_space_snr(rho, 6.0, k);
  EXPECT_NEAR(b.snr, 2.0 * a.snr, 1e-14);
}

TEST(FreeSpace, DilutenessFlag) {
  EXPECT_FALSE(free_space_snr(1.0, 1.0, 2.0).dilute_violated);
  EXPECT_TRUE(free_space_snr(27.0, 1.0, 2.0).dilute_violated);  // k / rho^{1/3} = 2/3
  EXPECT_THROW(free_space_snr(0.0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(free_space_snr(1.0, -1.0, 1.0), std::invalid_argument);
}

}  // namespace
}  // namespace dlcz::ensemble
