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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "dlcz/kernels.hpp"

namespace dlcz::kernels {

namespace {

struct Table {
  void (*axpy)(cplx, const cplx*, cplx*, std::size_t);
  void (*scale)(cplx, cplx*, std::size_t);
  double (*sum_abs2)(const cplx*, std::size_t);
  cplx (*dot)(const cplx*, const cplx*, std::size_t);
};

constexpr Table kScalar{scalar::axpy, scalar::scale, scalar::sum_abs2, scalar::dot};
#if defined(__x86_64__) || defined(_M_X64)
constexpr Table kAvx2{avx2::axpy, avx2::scale, avx2::sum_abs2, avx2::dot};
#endif
#if defined(__aarch64__)
constexpr Table kNeon{neon::axpy, neon::scale, neon::sum_abs2, neon::dot};
#endif

const Table& table_for(Isa isa) {
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::avx2:
      return kAvx2;
#endif
#if defined(__aarch64__)
    case Isa::neon:
      return kNeon;
#endif
    default:
      return kScalar;
  }
}

Isa initial_isa() {
  const char* force = std::getenv("DLCZ_FORCE_SCALAR");
  if (force != nullptr && std::string(force) != "0" && std::string(force).size() > 0) {
    return Isa::scalar;
  }
  return detected_isa();
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

const Table& active() { return table_for(current().load(std::memory_order_relaxed)); }

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() {
  if (isa_available(Isa::avx2)) return Isa::avx2;
  if (isa_available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("kernel ISA '" + std::string(isa_name(isa)) +
                                "' is not available on this machine");
  }
  current().store(isa, std::memory_order_relaxed);
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) { active().axpy(alpha, x, y, n); }
void scale(cplx alpha, cplx* y, std::size_t n) { active().scale(alpha, y, n); }
double sum_abs2(const cplx* x, std::size_t n) { return active().sum_abs2(x, n); }
cplx dot(const cplx* x, const cplx* y, std::size_t n) { return active().dot(x, y, n); }

}  // namespace dlcz::kernels
