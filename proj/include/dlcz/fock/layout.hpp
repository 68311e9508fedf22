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

namespace dlcz::fock {

/// Tensor-product number basis over mode_count modes, each truncated at
/// cutoff photons. Mode 0 is the most significant digit of a basis index.
class ModeLayout {
 public:
  static constexpr std::size_t kDefaultDimensionBound = 1'000'000;

  ModeLayout(std::size_t mode_count, std::size_t cutoff,
             std::size_t dimension_bound = kDefaultDimensionBound);

  std::size_t mode_count() const { return mode_count_; }
  std::size_t cutoff() const { return cutoff_; }
  std::size_t levels() const { return cutoff_ + 1; }
  std::size_t dimension() const { return dimension_; }
  std::size_t dimension_bound() const { return bound_; }

  std::size_t stride(std::size_t mode) const { return strides_[mode]; }
  std::size_t occupation(std::size_t index, std::size_t mode) const {
    return (index / strides_[mode]) % levels();
  }
  std::size_t total_photons(std::size_t index) const;

  std::size_t index_of(std::span<const std::size_t> occupations) const;
  std::vector<std::size_t> occupations(std::size_t index) const;

  /// Layout with the listed modes removed (order of the rest is kept).
  ModeLayout without(std::span<const std::size_t> modes) const;

  void check_mode(std::size_t mode) const;

  bool operator==(const ModeLayout& other) const {
    return mode_count_ == other.mode_count_ && cutoff_ == other.cutoff_;
  }

 private:
  std::size_t mode_count_;
  std::size_t cutoff_;
  std::size_t bound_;
  std::size_t dimension_;
  std::vector<std::size_t> strides_;
};

}  // namespace dlcz::fock
