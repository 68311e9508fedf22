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
#include <complex>
#include <cstddef>
#include <cstdint>

namespace dlcz::applications {

struct MeasurementSetting {
  double psi_left = 0.0;
  double psi_right = 0.0;
};

/// d0 S_I1^dag + d1 S_I2^dag acting on vacuum.
struct PolarizationQubit {
  std::complex<double> d0{1.0, 0.0};
  std::complex<double> d1{0.0, 0.0};

  void validate() const;
};

/// Shared options of the application circuits. eta_a is applied as a loss
/// sqrt(eta_a) on every retrieved mode, so a two-photon coincidence carries
/// eta_a overall.
struct CircuitOptions {
  double phase = 0.0;      ///< phi of every EME pair
  double dark_prob = 0.0;  ///< per detector; off by default
};

struct Correlation {
  double value = 0.0;             ///< E = (P11 + P22 - P12 - P21) / P_coinc
  double coincidence_prob = 0.0;  ///< one click on each side
  std::array<double, 4> pattern{};  ///< P11, P12, P21, P22; index = 2 (left D2) + (right D2)
};

/// Two EME pairs (L1, R1), (L2, R2). Phase psi_left on L1 and psi_right on R1,
/// then 50/50 beamsplitters on (L1, L2) and (R1, R2); D1 is the sum port and
/// D2 the difference port on each side.
Correlation correlation(double c_n, const MeasurementSetting& setting, double eta_a,
                        const CircuitOptions& options = {});

/// |E(0,pi/4) + E(pi/2,pi/4) + E(pi/2,3pi/4) - E(0,3pi/4)|
double chsh_value(double c_n, double eta_a, const CircuitOptions& options = {});

/// |E(a,b) + E(a',b) + E(a',b') - E(a,b')|
double chsh_value(double c_n, double eta_a, double a, double a2, double b, double b2,
                  const CircuitOptions& options = {});

struct KeyStats {
  std::uint64_t rounds = 0;
  std::uint64_t coincidences = 0;
  std::uint64_t key_length = 0;  ///< sifted: coincident with matching settings
  std::uint64_t errors = 0;
  double qber = 0.0;
  double coincidence_rate = 0.0;
  double sifted_fraction = 0.0;  ///< key_length / coincidences
  std::uint64_t seed = 0;
};

struct EkertOptions {
  CircuitOptions circuit;
  std::size_t streams = 16;  ///< fixed partition of rounds; independent of threads
  std::size_t threads = 1;
};

/// Random settings in {0, pi/2} per side and per round, outcomes drawn from the
/// exact circuit distribution.
KeyStats ekert_simulation(double c_n, double eta_a, std::uint64_t rounds, std::uint64_t seed,
                          const EkertOptions& options = {});

struct Teleport {
  double success_prob = 0.0;       ///< accepted pattern and an excitation on the right
  double success_prob_joint = 0.0;  ///< same quantity from joint detector probabilities
  double accepted_prob = 0.0;      ///< accepted pattern alone
  double output_fidelity = 0.0;    ///< post-selected, after the pi correction
  std::array<double, 4> pattern{};  ///< {D1I,D1L}, {D1I,D2L}, {D2I,D1L}, {D2I,D2L}
};

/// Modes I1, I2, L1, R1, L2, R2. Beamsplitters mix (I1, L1) and (I2, L2); D1 is
/// the sum port and D2 the difference port of each. Accepts one click on each
/// splitter and applies a pi phase to R2 on {D1I,D2L} and {D2I,D1L}.
Teleport teleport(const PolarizationQubit& q, double c_n, double eta_a,
                  const CircuitOptions& options = {});

}  // namespace dlcz::applications
