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

#include "dlcz/fock/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dlcz/kernels.hpp"

namespace dlcz::fock {

PureState::PureState(ModeLayout layout) : layout_(layout), amps_(layout.dimension()) {}

PureState::PureState(ModeLayout layout, std::vector<cplx> amplitudes)
    : layout_(layout), amps_(std::move(amplitudes)) {
  if (amps_.size() != layout_.dimension()) {
    throw std::invalid_argument("PureState: amplitude count " + std::to_string(amps_.size()) +
                                " does not match dimension " +
                                std::to_string(layout_.dimension()));
  }
}

PureState PureState::basis(const ModeLayout& layout, std::span<const std::size_t> occupations) {
  PureState psi(layout);
  psi.amps_[layout.index_of(occupations)] = 1.0;
  return psi;
}

double PureState::norm() const { return std::sqrt(kernels::sum_abs2(amps_.data(), amps_.size())); }

void PureState::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("PureState::normalize: zero vector");
  kernels::scale(1.0 / n, amps_.data(), amps_.size());
}

DensityOperator::DensityOperator(ModeLayout layout)
    : layout_(layout), dim_(layout.dimension()), data_(dim_ * dim_) {}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
  DensityOperator rho(psi.layout());
  const auto amps = psi.amplitudes();
  for (std::size_t r = 0; r < rho.dim_; ++r) {
    if (amps[r] == cplx{}) continue;
    // row r = psi_r * conj(psi)
    auto row = rho.row(r);
    for (std::size_t c = 0; c < rho.dim_; ++c) row[c] = amps[r] * std::conj(amps[c]);
  }
  return rho;
}

cplx DensityOperator::trace() const {
  cplx t{};
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double DensityOperator::purity() const { return kernels::sum_abs2(data_.data(), data_.size()); }

double DensityOperator::hermiticity_error() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r; c < dim_; ++c) {
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    }
  }
  return worst;
}

void DensityOperator::scale(double factor) { kernels::scale(factor, data_.data(), data_.size()); }

void DensityOperator::normalize() {
  const double t = trace().real();
  if (!(t > 0.0)) throw std::invalid_argument("DensityOperator::normalize: non-positive trace");
  scale(1.0 / t);
}

}  // namespace dlcz::fock
