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

#include "dlcz/fock/layout.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "dlcz/errors.hpp"

namespace dlcz::fock {

ModeLayout::ModeLayout(std::size_t mode_count, std::size_t cutoff, std::size_t dimension_bound)
    : mode_count_(mode_count), cutoff_(cutoff), bound_(dimension_bound), dimension_(1) {
  if (mode_count == 0) throw std::invalid_argument("ModeLayout: mode_count must be positive");
  if (cutoff == 0) throw std::invalid_argument("ModeLayout: cutoff must be positive");
  const std::size_t d = cutoff + 1;
  for (std::size_t m = 0; m < mode_count; ++m) {
    if (dimension_ > bound_ / d) {
      throw DimensionError("ModeLayout: dimension (" + std::to_string(d) + ")^" +
                           std::to_string(mode_count) + " exceeds bound " +
                           std::to_string(bound_));
    }
    dimension_ *= d;
  }
  strides_.resize(mode_count);
  std::size_t s = 1;
  for (std::size_t m = mode_count; m-- > 0;) {
    strides_[m] = s;
    s *= d;
  }
}

std::size_t ModeLayout::total_photons(std::size_t index) const {
  std::size_t total = 0;
  for (std::size_t m = 0; m < mode_count_; ++m) total += occupation(index, m);
  return total;
}

std::size_t ModeLayout::index_of(std::span<const std::size_t> occupations) const {
  if (occupations.size() != mode_count_) {
    throw std::invalid_argument("ModeLayout::index_of: expected " + std::to_string(mode_count_) +
                                " occupations, got " + std::to_string(occupations.size()));
  }
  std::size_t index = 0;
  for (std::size_t m = 0; m < mode_count_; ++m) {
    if (occupations[m] > cutoff_) {
      throw TruncationError("ModeLayout::index_of: occupation " +
                            std::to_string(occupations[m]) + " exceeds cutoff " +
                            std::to_string(cutoff_));
    }
    index += occupations[m] * strides_[m];
  }
  return index;
}

std::vector<std::size_t> ModeLayout::occupations(std::size_t index) const {
  std::vector<std::size_t> occ(mode_count_);
  for (std::size_t m = 0; m < mode_count_; ++m) occ[m] = occupation(index, m);
  return occ;
}

ModeLayout ModeLayout::without(std::span<const std::size_t> modes) const {
  for (auto m : modes) check_mode(m);
  std::vector<std::size_t> unique(modes.begin(), modes.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  if (unique.size() >= mode_count_) {
    throw std::invalid_argument("ModeLayout::without: no modes would remain");
  }
  return ModeLayout(mode_count_ - unique.size(), cutoff_, bound_);
}

void ModeLayout::check_mode(std::size_t mode) const {
  if (mode >= mode_count_) {
    throw std::invalid_argument("mode index " + std::to_string(mode) + " out of range for " +
                                std::to_string(mode_count_) + " modes");
  }
}

}  // namespace dlcz::fock
