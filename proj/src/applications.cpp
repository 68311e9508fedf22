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

#include "dlcz/applications.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "dlcz/errors.hpp"
#include "dlcz/fock/ops.hpp"
#include "dlcz/repeater.hpp"

namespace dlcz::applications {

using fock::DensityOperator;
using fock::DetectorModel;
using fock::Outcome;
using std::numbers::pi;

namespace {

void check_inputs(double c_n, double eta_a) {
  if (!(c_n >= 0.0) || std::isinf(c_n)) throw std::invalid_argument("c_n must be finite and >= 0");
  if (!(eta_a > 0.0 && eta_a <= 1.0)) throw std::invalid_argument("eta_a must be in (0, 1]");
}

constexpr Outcome kClick = Outcome::click;
constexpr Outcome kSilent = Outcome::no_click;

// Modes L1, R1, L2, R2 after loss, phases and the two beamsplitters. The sum
// port of the left splitter is L2, the difference port L1; same on the right.
DensityOperator correlation_circuit(double c_n, const MeasurementSetting& s, double eta_a,
                                    const CircuitOptions& options) {
  const auto pair = repeater::eme_density(c_n, options.phase, 2);
  auto rho = fock::tensor(pair, pair);
  const double t = std::sqrt(eta_a);
  for (std::size_t m = 0; m < 4; ++m) rho = fock::apply_loss(rho, m, t);
  rho = fock::apply_phase(rho, 0, s.psi_left);
  rho = fock::apply_phase(rho, 1, s.psi_right);
  rho = fock::apply_beamsplitter(rho, 0, 2, pi / 4, 0.0);
  rho = fock::apply_beamsplitter(rho, 1, 3, pi / 4, 0.0);
  return rho;
}

// Detector modes in the order D1L, D2L, D1R, D2R.
constexpr std::size_t kCorrModes[] = {2, 0, 3, 1};

// Joint outcome for the 16 click patterns; bit k set means detector k clicked.
std::array<double, 16> pattern_distribution(const DensityOperator& rho, double dark) {
  const DetectorModel det{1.0, dark, false};
  const DetectorModel dets[] = {det, det, det, det};
  std::array<double, 16> p{};
  for (std::size_t bits = 0; bits < 16; ++bits) {
    Outcome outs[4];
    for (std::size_t k = 0; k < 4; ++k) outs[k] = (bits >> k) & 1U ? kClick : kSilent;
    p[bits] = fock::joint_outcome_probability(rho, kCorrModes, dets, outs);
  }
  return p;
}

// Pattern bits for {left Dx, right Dy}, x, y in {0: D1, 1: D2}.
constexpr std::size_t coincidence_bits(int x, int y) {
  return (std::size_t{1} << x) | (std::size_t{1} << (2 + y));
}

}  // namespace

void PolarizationQubit::validate() const {
  if (std::abs(std::norm(d0) + std::norm(d1) - 1.0) > 1e-12) {
    throw std::invalid_argument("polarization qubit must have unit norm");
  }
}

Correlation correlation(double c_n, const MeasurementSetting& setting, double eta_a,
                        const CircuitOptions& options) {
  check_inputs(c_n, eta_a);
  const auto rho = correlation_circuit(c_n, setting, eta_a, options);
  const auto dist = pattern_distribution(rho, options.dark_prob);
  Correlation out;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) out.pattern[2 * x + y] = dist[coincidence_bits(x, y)];
  out.coincidence_prob = out.pattern[0] + out.pattern[1] + out.pattern[2] + out.pattern[3];
  if (!(out.coincidence_prob > 0.0)) throw ImpossibleOutcomeError("no coincidences");
  out.value = (out.pattern[0] + out.pattern[3] - out.pattern[1] - out.pattern[2]) /
              out.coincidence_prob;
  return out;
}

double chsh_value(double c_n, double eta_a, double a, double a2, double b, double b2,
                  const CircuitOptions& options) {
  auto e = [&](double l, double r) { return correlation(c_n, {l, r}, eta_a, options).value; };
  return std::abs(e(a, b) + e(a2, b) + e(a2, b2) - e(a, b2));
}

double chsh_value(double c_n, double eta_a, const CircuitOptions& options) {
  return chsh_value(c_n, eta_a, 0.0, pi / 2, pi / 4, 3 * pi / 4, options);
}

KeyStats ekert_simulation(double c_n, double eta_a, std::uint64_t rounds, std::uint64_t seed,
                          const EkertOptions& options) {
  check_inputs(c_n, eta_a);
  if (rounds == 0) throw std::invalid_argument("rounds must be >= 1");
  if (options.streams == 0) throw std::invalid_argument("streams must be >= 1");

  // Setting index 2 * left + right, each in {0, pi/2}.
  std::vector<std::discrete_distribution<std::size_t>> outcome;
  for (int l = 0; l < 2; ++l) {
    for (int r = 0; r < 2; ++r) {
      const MeasurementSetting s{l * pi / 2, r * pi / 2};
      const auto dist =
          pattern_distribution(correlation_circuit(c_n, s, eta_a, options.circuit),
                               options.circuit.dark_prob);
      outcome.emplace_back(dist.begin(), dist.end());
    }
  }

  struct Tally {
    std::uint64_t coincidences = 0;
    std::uint64_t sifted = 0;
    std::uint64_t errors = 0;
  };
  const std::size_t streams = options.streams;
  std::vector<Tally> tally(streams);
  auto run_stream = [&](std::size_t k) {
    const std::uint64_t begin = rounds * k / streams;
    const std::uint64_t end = rounds * (k + 1) / streams;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 rng(seq);
    std::bernoulli_distribution coin(0.5);
    auto dists = outcome;
    Tally t;
    for (std::uint64_t i = begin; i < end; ++i) {
      const int l = coin(rng);
      const int r = coin(rng);
      const std::size_t bits = dists[2 * l + r](rng);
      const std::size_t left = bits & 3U;
      const std::size_t right = (bits >> 2) & 3U;
      if ((left != 1 && left != 2) || (right != 1 && right != 2)) continue;
      ++t.coincidences;
      if (l != r) continue;
      ++t.sifted;
      if (left != right) ++t.errors;
    }
    tally[k] = t;
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(options.threads, streams));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t k = w; k < streams; k += threads) run_stream(k);
    });
  }
  for (std::size_t k = 0; k < streams; k += threads) run_stream(k);
  for (auto& th : pool) th.join();

  KeyStats out;
  out.rounds = rounds;
  out.seed = seed;
  for (const auto& t : tally) {
    out.coincidences += t.coincidences;
    out.key_length += t.sifted;
    out.errors += t.errors;
  }
  out.qber = out.key_length ? double(out.errors) / double(out.key_length) : 0.0;
  out.coincidence_rate = double(out.coincidences) / double(rounds);
  out.sifted_fraction = out.coincidences ? double(out.key_length) / double(out.coincidences) : 0.0;
  return out;
}

namespace {

// Modes I1, I2, L1, R1, L2, R2.
constexpr std::size_t kI1 = 0, kI2 = 1, kL1 = 2, kL2 = 4;

DensityOperator teleport_circuit(const PolarizationQubit& q, double c_n, double eta_a,
                                 const CircuitOptions& options) {
  const fock::ModeLayout two(2, 2);
  fock::PureState in(two);
  const std::size_t one_zero[] = {1, 0};
  const std::size_t zero_one[] = {0, 1};
  in[two.index_of(one_zero)] = q.d0;
  in[two.index_of(zero_one)] = q.d1;
  const auto pair = repeater::eme_density(c_n, options.phase, 2);
  auto rho = fock::tensor(fock::tensor(DensityOperator::from_pure(in), pair), pair);
  const double t = std::sqrt(eta_a);
  for (std::size_t m : {kI1, kI2, kL1, kL2}) rho = fock::apply_loss(rho, m, t);
  rho = fock::apply_beamsplitter(rho, kI1, kL1, pi / 4, 0.0);
  rho = fock::apply_beamsplitter(rho, kI2, kL2, pi / 4, 0.0);
  return rho;
}

}  // namespace

Teleport teleport(const PolarizationQubit& q, double c_n, double eta_a,
                  const CircuitOptions& options) {
  q.validate();
  check_inputs(c_n, eta_a);
  const auto rho = teleport_circuit(q, c_n, eta_a, options);
  const DetectorModel det{1.0, options.dark_prob, false};

  // D1I = L1 port (sum), D2I = I1 port, D1L = L2 port, D2L = I2 port.
  Teleport out;
  DensityOperator accepted(fock::ModeLayout(2, 2));
  const fock::ModeLayout& rl = accepted.layout();
  const std::size_t r10[] = {1, 0};
  const std::size_t r01[] = {0, 1};
  const std::size_t one[] = {rl.index_of(r10), rl.index_of(r01)};

  for (int pi_ = 0; pi_ < 2; ++pi_) {
    for (int pl = 0; pl < 2; ++pl) {
      const int k = 2 * pi_ + pl;
      // Measure in descending mode order so earlier indices stay valid.
      const std::size_t modes[] = {kL2, kL1, kI2, kI1};
      const Outcome outs[] = {pl == 0 ? kClick : kSilent, pi_ == 0 ? kClick : kSilent,
                              pl == 1 ? kClick : kSilent, pi_ == 1 ? kClick : kSilent};
      DensityOperator cur = rho;
      double prob = 1.0;
      try {
        for (int m = 0; m < 4; ++m) {
          auto meas = fock::measure_detector(cur, modes[m], det, outs[m]);
          prob *= meas.probability;
          cur = std::move(meas.state);
        }
      } catch (const ImpossibleOutcomeError&) {
        prob = 0.0;
      }
      out.pattern[k] = prob;
      if (prob == 0.0) continue;
      if (pi_ != pl) cur = fock::apply_phase(cur, 1, pi);
      out.accepted_prob += prob;
      out.success_prob += prob * (cur.population(one[0]) + cur.population(one[1]));
      cur.scale(prob);
      for (std::size_t r = 0; r < cur.dimension(); ++r)
        for (std::size_t c = 0; c < cur.dimension(); ++c) accepted(r, c) += cur(r, c);

      // Independent route: joint detector probabilities with the right-hand
      // modes read by ideal counting detectors.
      const DetectorModel ideal{1.0, 0.0, true};
      const std::size_t jm[] = {kL1, kI1, kL2, kI2, 3, 5};
      const DetectorModel jd[] = {det, det, det, det, ideal, ideal};
      for (int right = 0; right < 2; ++right) {
        const Outcome jo[] = {outs[1], outs[3], outs[0], outs[2],
                              right == 0 ? kClick : kSilent, right == 1 ? kClick : kSilent};
        out.success_prob_joint += fock::joint_outcome_probability(rho, jm, jd, jo);
      }
    }
  }

  if (!(out.success_prob > 0.0)) throw ImpossibleOutcomeError("teleportation never succeeds");
  fock::PureState target(rl);
  target[one[0]] = q.d0;
  target[one[1]] = q.d1;
  out.output_fidelity = fock::fidelity(accepted, target) /
                        (accepted.population(one[0]) + accepted.population(one[1]));
  return out;
}

}  // namespace dlcz::applications
