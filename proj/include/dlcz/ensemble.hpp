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
#include <vector>

#include "dlcz/fock/state.hpp"

namespace dlcz::ensemble {

/// Microscopic parameters of an off-resonant Raman-pumped ensemble in a
/// low-finesse cavity. Frequencies share one angular unit.
struct EnsembleParams {
  std::size_t atom_count = 100;
  double rabi = 1.0;
  double detuning = 10.0;
  double coupling = 1.0;
  double cavity_decay = 10.0;
  double spont_rate = 1.0;
  double interaction_time = 0.0;

  void validate() const;
};

struct EffectiveRates {
  double kappa_prime = 0.0;   ///< 4 N_a |Omega g_c|^2 / (Delta^2 kappa)
  double gamma_prime = 0.0;   ///< (Omega / Delta)^2 gamma_s
  double snr = 0.0;           ///< kappa' / gamma', +inf when gamma' = 0
  double squeeze = 0.0;       ///< r_c with cosh r_c = exp(kappa' t / 2)
  double excitation_prob = 0.0;  ///< p_c = tanh^2 r_c
  double bad_cavity_ratio = 0.0;  ///< kappa / (sqrt(N_a) |Omega g_c| / Delta)
  bool bad_cavity_warning = false;  ///< ratio below 10
};

EffectiveRates effective_rates(const EnsembleParams& params);

/// Closed-form amplitude gain exp(kappa' t / 2) of S^dag(t).
double langevin_mean_solution(const EnsembleParams& params, double t);

/// Same gain from adaptive integration of dx/dt = kappa' x / 2.
double langevin_mean_numeric(const EnsembleParams& params, double t, double rtol = 1e-12,
                             double atol = 1e-14);

/// Two-mode squeezed vacuum of (atomic, Stokes) at squeeze r_c on a two-mode
/// layout with the given cutoff. Not renormalized after truncation.
fock::DensityOperator squeezed_joint_state(const EffectiveRates& rates, std::size_t cutoff,
                                           double truncation_tolerance = 1e-10);

struct ModePopulations {
  std::vector<double> time_grid;
  std::vector<double> collective;      ///< <n> of mode 0
  std::vector<double> per_noise_mode;  ///< mean <n> over modes 1..n-1
  std::vector<double> trace;
  double min_population = 0.0;  ///< smallest diagonal entry seen on the grid
};

struct MasterOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
};

/// Lindblad gain dynamics from multimode vacuum: L[S^dag] at kappa' + gamma'
/// on mode 0 and at gamma' on each of the remaining modes. t_grid must be
/// non-decreasing and start at or after 0.
ModePopulations integrate_master_equation(const EffectiveRates& rates, std::size_t n_modes,
                                          std::size_t cutoff, const std::vector<double>& t_grid,
                                          const MasterOptions& options = {});

/// Gain rates given directly, one per mode.
ModePopulations integrate_gain_dynamics(const std::vector<double>& mode_rates,
                                        std::size_t cutoff, const std::vector<double>& t_grid,
                                        const MasterOptions& options = {});

struct FreeSpaceSnr {
  double snr = 0.0;
  double optical_depth = 0.0;
  bool dilute_violated = false;  ///< k_s / rho_n^{1/3} < 1
};

/// R_sn ~ 3 rho_n L_a / k_s^2, the on-resonance optical depth.
FreeSpaceSnr free_space_snr(double density, double length, double wavenumber);

}  // namespace dlcz::ensemble
