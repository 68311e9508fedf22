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

#include <array>
#include <cstddef>
#include <vector>

#include "dlcz/fock/state.hpp"

namespace dlcz::repeater {

/// Effective maximally entangled pair: weight c/(c+1) on vacuum and 1/(c+1)
/// on (S_L^dag + e^{i phase} S_R^dag)/sqrt2 |vac>.
struct EMEState {
  double vacuum_coeff = 0.0;
  double phase = 0.0;
  double fidelity_deficit = 0.0;
  double span_length = 0.0;  ///< units of L_att

  double entanglement_fraction() const { return 1.0 / (vacuum_coeff + 1.0); }
  void validate() const;
};

/// Lengths in units of the attenuation length unless L_att is set otherwise.
struct RepeaterParams {
  double excitation_prob = 0.01;   ///< p_c
  double pulse_time = 1e-6;        ///< t_Delta, seconds
  double local_efficiency = 1.0;   ///< eta_p'
  double swap_efficiency = 1.0;    ///< eta_s
  double app_efficiency = 1.0;     ///< eta_a
  double dark_prob = 0.0;          ///< p_dc
  double attenuation_length = 1.0;  ///< L_att
  double segment_length = 1.0;     ///< L_0
  std::size_t levels = 0;          ///< n
  double channel_phase = 0.0;

  /// eta_p = eta_p' exp(-L_0 / L_att)
  double eta_p() const;
  /// L_n = 2^n L_0
  double total_length() const;
  void validate() const;
};

struct Generation {
  EMEState state;
  double click_prob = 0.0;  ///< eta_p p_c + p_dc
  double time = 0.0;        ///< T_0 = t_Delta / (eta_p p_c)
};

Generation generate_analytic(const RepeaterParams& params);

struct GenerationOracle {
  double vacuum_coeff = 0.0;      ///< P(vac) / P(one excitation)
  double fidelity_deficit = 0.0;  ///< 1 - F on the non-vacuum part
  double raw_fidelity = 0.0;      ///< F including the vacuum weight
  double click_prob = 0.0;        ///< P(D1 click, D2 silent)
  fock::DensityOperator atoms;    ///< conditional (S_L, S_R) state
};

struct GenerationOracleOptions {
  std::size_t cutoff = 4;
  std::size_t per_source = 2;  ///< excitations kept per ensemble
  std::size_t total = 4;       ///< excitations kept across both sources
};

/// Two sources in the truncated pair-emission state, loss eta_p on each
/// Stokes arm, channel phase on the right arm, a 50/50 beamsplitter and
/// threshold detectors with dark counts. Conditions on the sum-port detector
/// D1 clicking and D2 staying silent.
GenerationOracle generate_oracle(const RepeaterParams& params,
                                 const GenerationOracleOptions& options = {});

struct Swap {
  double probability = 0.0;
  EMEState state;
};

/// p = eta_s (1 - eta_s / (2(c+1))) / (c+1), c' = 2c + 1 - eta_s.
/// Requires equal vacuum coefficients.
Swap swap_analytic(const EMEState& left, const EMEState& right, double eta_s);

double swap_success(double c, double eta_s);
double swap_vacuum_coeff(double c, double eta_s);

/// c_i = 2^i c_0 + (2^i - 1)(1 - eta_s)
double vacuum_coeff_closed_form(std::size_t level, double eta_s, double c0);

/// rho_EME on two modes at the given cutoff.
fock::DensityOperator eme_density(double vacuum_coeff, double phase, std::size_t cutoff = 2);

struct SwapOracleOptions {
  std::size_t cutoff = 2;
  /// true: a click means exactly one registered photon. false: threshold
  /// detectors, which also accept bunched photon pairs.
  bool resolving = true;
};

struct SwapOracle {
  double probability = 0.0;           ///< sum over both single-click patterns
  std::array<double, 2> pattern{};    ///< {D1 only, D2 only}
  double vacuum_coeff = 0.0;          ///< of the D1-conditioned (L, R) state
  fock::DensityOperator state;        ///< D1-conditioned (L, R) state
};

/// Modes L, I1, I2, R; loss eta_s on I1 and I2, beamsplitter with the sum on
/// D1 (I2 port) and the difference on D2 (I1 port).
SwapOracle swap_oracle(const EMEState& left, const EMEState& right, double eta_s,
                       const SwapOracleOptions& options = {});
SwapOracle swap_oracle(double c, double eta_s, const SwapOracleOptions& options = {});

struct ChainLevel {
  std::size_t level = 0;
  double length = 0.0;       ///< L_i
  double vacuum_coeff = 0.0;  ///< c_i
  double probability = 0.0;  ///< p_i; the click probability at level 0
  double fidelity_deficit = 0.0;  ///< 2^i dF_0
  double time = 0.0;         ///< T_i = T_{i-1} / p_i
};

/// Levels 0..n. Throws InfeasibleError when some p_i < 1e-12.
std::vector<ChainLevel> chain(const RepeaterParams& params);

}  // namespace dlcz::repeater
