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

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "dlcz/fock/layout.hpp"

namespace dlcz::fock {

using cplx = std::complex<double>;

/// Unit-norm state vector over a truncated multimode Fock basis.
class PureState {
 public:
  explicit PureState(ModeLayout layout);
  PureState(ModeLayout layout, std::vector<cplx> amplitudes);

  /// Number state |n_0, n_1, ...>.
  static PureState basis(const ModeLayout& layout, std::span<const std::size_t> occupations);

  const ModeLayout& layout() const { return layout_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const cplx> amplitudes() const { return amps_; }
  std::span<cplx> amplitudes() { return amps_; }
  cplx& operator[](std::size_t i) { return amps_[i]; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;
  /// Rescales to unit norm; throws if the norm is zero.
  void normalize();

 private:
  ModeLayout layout_;
  std::vector<cplx> amps_;
};

/// Dense density matrix over a truncated multimode Fock basis, row-major.
///
/// Operations keep the matrix Hermitian; channels that are trace preserving
/// keep the trace. A DensityOperator may carry trace < 1 only where a caller
/// explicitly asks for an unnormalized result.
class DensityOperator {
 public:
  static constexpr double kHermitianTolerance = 1e-12;

  /// Zero matrix.
  explicit DensityOperator(ModeLayout layout);

  static DensityOperator from_pure(const PureState& psi);

  const ModeLayout& layout() const { return layout_; }
  std::size_t dimension() const { return dim_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  std::span<cplx> row(std::size_t r) { return {data_.data() + r * dim_, dim_}; }
  std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * dim_, dim_}; }
  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  cplx trace() const;
  /// Tr(rho^2); uses the Hermitian identity Tr(rho^2) = sum |rho_ij|^2.
  double purity() const;
  /// max_ij |rho_ij - conj(rho_ji)|
  double hermiticity_error() const;
  double population(std::size_t index) const { return (*this)(index, index).real(); }

  /// Largest |rho_ij| over entries whose row or column index satisfies pred.
  template <class Pred>
  double max_abs_where(Pred pred) const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
      const bool row_hit = pred(r);
      for (std::size_t c = 0; c < dim_; ++c) {
        if (row_hit || pred(c)) worst = std::max(worst, std::abs((*this)(r, c)));
      }
    }
    return worst;
  }

  void scale(double factor);
  /// Divides by the (real part of the) trace.
  void normalize();

 private:
  ModeLayout layout_;
  std::size_t dim_;
  std::vector<cplx> data_;
};

}  // namespace dlcz::fock
