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

#include "dlcz/repeater.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dlcz/errors.hpp"
#include "dlcz/fock/ops.hpp"

namespace dlcz::repeater {

using fock::cplx;
using fock::DensityOperator;
using fock::ModeLayout;
using fock::Outcome;

namespace {

void check_unit(double v, const char* name, bool allow_zero, bool allow_one) {
  const bool low = allow_zero ? v >= 0.0 : v > 0.0;
  const bool high = allow_one ? v <= 1.0 : v < 1.0;
  if (!(low && high)) throw std::invalid_argument(std::string(name) + " out of range");
}

void check_eta_s(double eta_s) { check_unit(eta_s, "swap_efficiency", false, true); }

std::size_t idx2(const ModeLayout& layout, std::size_t a, std::size_t b) {
  const std::size_t occ[] = {a, b};
  return layout.index_of(occ);
}

}  // namespace

void EMEState::validate() const {
  if (!(vacuum_coeff >= 0.0) || std::isinf(vacuum_coeff)) {
    throw std::invalid_argument("vacuum coefficient must be finite and >= 0");
  }
  check_unit(fidelity_deficit, "fidelity_deficit", true, true);
  if (!(span_length >= 0.0)) throw std::invalid_argument("span_length must be >= 0");
  if (!std::isfinite(phase)) throw std::invalid_argument("phase must be finite");
}

double RepeaterParams::eta_p() const {
  return local_efficiency * std::exp(-segment_length / attenuation_length);
}

double RepeaterParams::total_length() const {
  return std::ldexp(segment_length, static_cast<int>(levels));
}

void RepeaterParams::validate() const {
  check_unit(excitation_prob, "excitation_prob", false, false);
  if (!(pulse_time > 0.0) || !std::isfinite(pulse_time)) {
    throw std::invalid_argument("pulse_time must be positive");
  }
  check_unit(local_efficiency, "local_efficiency", false, true);
  check_unit(swap_efficiency, "swap_efficiency", false, true);
  check_unit(app_efficiency, "app_efficiency", false, true);
  check_unit(dark_prob, "dark_prob", true, false);
  if (!(attenuation_length > 0.0) || !std::isfinite(attenuation_length)) {
    throw std::invalid_argument("attenuation_length must be positive");
  }
  if (!(segment_length > 0.0) || !std::isfinite(segment_length)) {
    throw std::invalid_argument("segment_length must be positive");
  }
  if (levels > 60) throw std::invalid_argument("levels must be <= 60");
  if (!std::isfinite(channel_phase)) throw std::invalid_argument("channel_phase must be finite");
}

Generation generate_analytic(const RepeaterParams& params) {
  params.validate();
  const double signal = params.eta_p() * params.excitation_prob;
  if (!(signal > 0.0)) {
    throw InfeasibleError("all-dark generation: eta_p p_c underflows to zero");
  }
  Generation g;
  g.state.vacuum_coeff = params.dark_prob / signal;
  g.state.phase = params.channel_phase;
  g.state.fidelity_deficit = params.excitation_prob;
  g.state.span_length = params.segment_length / params.attenuation_length;
  g.click_prob = signal + params.dark_prob;
  g.time = params.pulse_time / signal;
  return g;
}

GenerationOracle generate_oracle(const RepeaterParams& params,
                                 const GenerationOracleOptions& options) {
  params.validate();
  const std::size_t per = options.per_source;
  if (options.cutoff < per) throw TruncationError("cutoff below per-source excitations");

  // Modes: aL, pL, aR, pR. Amplitude tanh^n r with tanh^2 r = p_c.
  const ModeLayout layout(4, options.cutoff);
  const double t = std::sqrt(params.excitation_prob);
  fock::PureState psi(layout);
  for (std::size_t n = 0; n <= per; ++n) {
    for (std::size_t m = 0; m <= per && n + m <= options.total; ++m) {
      const std::size_t occ[] = {n, n, m, m};
      psi[layout.index_of(occ)] = std::pow(t, static_cast<double>(n + m));
    }
  }
  psi.normalize();
  auto rho = DensityOperator::from_pure(psi);
  const double eta = params.eta_p();
  rho = fock::apply_loss(rho, 1, eta);
  rho = fock::apply_loss(rho, 3, eta);
  rho = fock::apply_phase(rho, 3, params.channel_phase);
  rho = fock::apply_beamsplitter(rho, 1, 3, M_PI / 4, 0.0);

  const fock::DetectorModel det{1.0, params.dark_prob, false};
  auto d1 = fock::measure_detector(rho, 3, det, Outcome::click);
  auto d2 = fock::measure_detector(d1.state, 1, det, Outcome::no_click);

  GenerationOracle out{0.0, 0.0, 0.0, d1.probability * d2.probability, std::move(d2.state)};
  const auto& al = out.atoms.layout();
  const double vac = out.atoms.population(0);
  const double one = out.atoms.population(idx2(al, 1, 0)) + out.atoms.population(idx2(al, 0, 1));
  out.vacuum_coeff = vac / one;

  fock::PureState target(al);
  target[idx2(al, 1, 0)] = 1.0 / std::sqrt(2.0);
  target[idx2(al, 0, 1)] = std::polar(1.0 / std::sqrt(2.0), params.channel_phase);
  out.raw_fidelity = fock::fidelity(out.atoms, target);
  out.fidelity_deficit = 1.0 - out.raw_fidelity / (1.0 - vac);
  return out;
}

double swap_success(double c, double eta_s) {
  check_eta_s(eta_s);
  if (!(c >= 0.0)) throw std::invalid_argument("vacuum coefficient must be >= 0");
  return eta_s * (1.0 - eta_s / (2.0 * (c + 1.0))) / (c + 1.0);
}

double swap_vacuum_coeff(double c, double eta_s) {
  check_eta_s(eta_s);
  if (!(c >= 0.0)) throw std::invalid_argument("vacuum coefficient must be >= 0");
  return 2.0 * c + 1.0 - eta_s;
}

Swap swap_analytic(const EMEState& left, const EMEState& right, double eta_s) {
  left.validate();
  right.validate();
  const double scale = std::max({1.0, left.vacuum_coeff, right.vacuum_coeff});
  if (std::abs(left.vacuum_coeff - right.vacuum_coeff) > 1e-12 * scale) {
    throw std::invalid_argument(
        "analytic swap needs equal vacuum coefficients; use swap_oracle for asymmetric inputs");
  }
  Swap s;
  s.probability = swap_success(left.vacuum_coeff, eta_s);
  s.state.vacuum_coeff = swap_vacuum_coeff(left.vacuum_coeff, eta_s);
  s.state.phase = left.phase + right.phase;
  s.state.fidelity_deficit = std::min(1.0, left.fidelity_deficit + right.fidelity_deficit);
  s.state.span_length = left.span_length + right.span_length;
  return s;
}

double vacuum_coeff_closed_form(std::size_t level, double eta_s, double c0) {
  const double p2 = std::ldexp(1.0, static_cast<int>(level));
  return p2 * c0 + (p2 - 1.0) * (1.0 - eta_s);
}

DensityOperator eme_density(double vacuum_coeff, double phase, std::size_t cutoff) {
  if (!(vacuum_coeff >= 0.0) || std::isinf(vacuum_coeff)) {
    throw std::invalid_argument("vacuum coefficient must be finite and >= 0");
  }
  const ModeLayout layout(2, cutoff);
  const double w = 1.0 / (vacuum_coeff + 1.0);
  fock::PureState psi(layout);
  psi[idx2(layout, 1, 0)] = 1.0 / std::sqrt(2.0);
  psi[idx2(layout, 0, 1)] = std::polar(1.0 / std::sqrt(2.0), phase);
  auto rho = DensityOperator::from_pure(psi);
  rho.scale(w);
  rho(0, 0) += vacuum_coeff * w;
  return rho;
}

SwapOracle swap_oracle(const EMEState& left, const EMEState& right, double eta_s,
                       const SwapOracleOptions& options) {
  check_eta_s(eta_s);
  left.validate();
  right.validate();
  // Modes: L, I1, I2, R.
  auto rho = fock::tensor(eme_density(left.vacuum_coeff, left.phase, options.cutoff),
                          eme_density(right.vacuum_coeff, right.phase, options.cutoff));
  rho = fock::apply_loss(rho, 1, eta_s);
  rho = fock::apply_loss(rho, 2, eta_s);
  rho = fock::apply_beamsplitter(rho, 1, 2, M_PI / 4, 0.0);

  const fock::DetectorModel det{1.0, 0.0, options.resolving};
  SwapOracle out{0.0, {}, 0.0, DensityOperator(ModeLayout(2, options.cutoff))};
  // D1 reads I2 (sum port), D2 reads I1 (difference port).
  for (int pattern = 0; pattern < 2; ++pattern) {
    const Outcome on_i2 = pattern == 0 ? Outcome::click : Outcome::no_click;
    const Outcome on_i1 = pattern == 0 ? Outcome::no_click : Outcome::click;
    auto first = fock::measure_detector(rho, 2, det, on_i2);
    auto second = fock::measure_detector(first.state, 1, det, on_i1);
    out.pattern[pattern] = first.probability * second.probability;
    if (pattern == 0) out.state = std::move(second.state);
  }
  out.probability = out.pattern[0] + out.pattern[1];
  const auto& l = out.state.layout();
  out.vacuum_coeff = out.state.population(0) /
                     (out.state.population(idx2(l, 1, 0)) + out.state.population(idx2(l, 0, 1)));
  return out;
}

SwapOracle swap_oracle(double c, double eta_s, const SwapOracleOptions& options) {
  EMEState s;
  s.vacuum_coeff = c;
  return swap_oracle(s, s, eta_s, options);
}

std::vector<ChainLevel> chain(const RepeaterParams& params) {
  const auto gen = generate_analytic(params);
  std::vector<ChainLevel> out;
  out.reserve(params.levels + 1);
  ChainLevel lvl;
  lvl.length = params.segment_length;
  lvl.vacuum_coeff = gen.state.vacuum_coeff;
  lvl.probability = gen.click_prob;
  lvl.fidelity_deficit = gen.state.fidelity_deficit;
  lvl.time = gen.time;
  out.push_back(lvl);
  for (std::size_t i = 1; i <= params.levels; ++i) {
    const double p = swap_success(lvl.vacuum_coeff, params.swap_efficiency);
    if (!(p >= 1e-12)) {
      throw InfeasibleError("chain stalls at level " + std::to_string(i) +
                            ": success probability " + std::to_string(p));
    }
    lvl.level = i;
    lvl.length *= 2.0;
    lvl.vacuum_coeff = swap_vacuum_coeff(lvl.vacuum_coeff, params.swap_efficiency);
    lvl.probability = p;
    lvl.fidelity_deficit =
        std::min(1.0, std::ldexp(gen.state.fidelity_deficit, static_cast<int>(i)));
    lvl.time /= p;
    out.push_back(lvl);
  }
  return out;
}

}  // namespace dlcz::repeater
