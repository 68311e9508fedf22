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
#include <span>
#include <vector>

#include "dlcz/fock/layout.hpp"
#include "dlcz/fock/state.hpp"

namespace dlcz::fock {

/// Photodetector with efficiency and dark-count probability per gate.
///
/// Threshold (non-resolving) model: P(click | n) = 1 - (1 - p_dc)(1 - eta)^n.
/// Resolving model splits "click" into exactly one registered count and
/// multi_click (two or more counts); a dark count adds one count.
struct DetectorModel {
  double efficiency = 1.0;
  double dark_count_prob = 0.0;
  bool resolving = false;

  void validate() const;
};

enum class Outcome { no_click, click, multi_click };

/// Probability that the detector reports the outcome given n incident photons.
double outcome_weight(const DetectorModel& det, Outcome outcome, std::size_t photons);

struct Measurement {
  double probability;
  DensityOperator state;  ///< Normalized; the measured mode is traced out.
};

DensityOperator vacuum(const ModeLayout& layout);

/// Two-mode beamsplitter U with
///   U a_i^dag U^dag = cos(t) a_i^dag + e^{i phase} sin(t) a_j^dag
///   U a_j^dag U^dag = -e^{-i phase} sin(t) a_i^dag + cos(t) a_j^dag.
/// angle = pi/4 is a 50/50 splitter whose output port j carries the sum
/// (a_i + e^{i phase} a_j)/sqrt2 and port i the difference. Throws
/// TruncationError if rho has weight where n_i + n_j > cutoff.
DensityOperator apply_beamsplitter(const DensityOperator& rho, std::size_t i, std::size_t j,
                                   double angle, double phase);

/// e^{i psi n} on mode i.
DensityOperator apply_phase(const DensityOperator& rho, std::size_t i, double psi);

/// exp(r (a_i^dag a_j^dag - a_i a_j)), matrix elements exact inside the
/// truncation. Requires tanh(r)^(2(cutoff+1)) < truncation_tolerance. The
/// result is not renormalized.
DensityOperator apply_two_mode_squeeze(const DensityOperator& rho, std::size_t i, std::size_t j,
                                       double r, double truncation_tolerance = 1e-10);

/// Pure-loss channel with transmissivity eta on mode i.
DensityOperator apply_loss(const DensityOperator& rho, std::size_t i, double eta);

/// Probability of an outcome on mode i, without conditioning.
double outcome_probability(const DensityOperator& rho, std::size_t i, const DetectorModel& det,
                           Outcome outcome);

/// Destructive detection of mode i. Throws ImpossibleOutcomeError when the
/// outcome probability is below 1e-15.
Measurement measure_detector(const DensityOperator& rho, std::size_t i, const DetectorModel& det,
                             Outcome outcome);

/// Traces out the listed modes; at least one mode must remain.
DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::size_t> modes);

/// <psi|rho|psi>
double fidelity(const DensityOperator& rho, const PureState& psi);

/// rho_a (x) rho_b on the concatenated mode list; cutoffs must agree.
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

double mean_photon_number(const DensityOperator& rho, std::size_t mode);

/// Joint probability of one outcome per listed mode (modes distinct).
double joint_outcome_probability(const DensityOperator& rho, std::span<const std::size_t> modes,
                                 std::span<const DetectorModel> detectors,
                                 std::span<const Outcome> outcomes);

namespace detail {

/// Dense operator on the subspace of the listed modes (dimension levels^k,
/// row-major, local index = mode digits in listed order).
struct LocalOperator {
  std::vector<std::size_t> modes;
  std::size_t local_dim = 0;
  std::vector<cplx> matrix;
};

/// out = (op (x) I) * in for row-major D x D matrices.
void left_apply(const ModeLayout& layout, const LocalOperator& op, std::span<const cplx> in,
                std::span<cplx> out);

/// out += op rho op^dag, valid for Hermitian rho.
void accumulate_sandwich(const DensityOperator& rho, const LocalOperator& op,
                         DensityOperator& out);

LocalOperator beamsplitter_operator(std::size_t levels, std::size_t i, std::size_t j,
                                    double angle, double phase);
LocalOperator squeeze_operator(std::size_t levels, std::size_t i, std::size_t j, double r);

}  // namespace detail

}  // namespace dlcz::fock
