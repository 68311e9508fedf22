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

#include <stdexcept>
#include <string>

namespace dlcz {

// Invalid arguments are reported with std::invalid_argument; the types below
// carry failure classes the CLI maps onto distinct exit codes.

/// A layout would exceed the configured Hilbert-space dimension bound.
class DimensionError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// An operation would move weight outside the photon-number cutoff.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conditioning on a measurement outcome whose probability is numerically zero.
class ImpossibleOutcomeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integration failure, stalled chain, runaway sampling.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters are individually valid but admit no solution (e.g. p_c >= 1).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dlcz
