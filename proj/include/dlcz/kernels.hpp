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

#include <complex>
#include <cstddef>
#include <string_view>

// Data-parallel complex kernels used by the Fock-space engine. Each kernel has
// a portable scalar reference implementation plus SIMD variants (AVX2+FMA on
// x86-64, NEON on aarch64). The variant is chosen once at startup from the
// CPU feature flags; DLCZ_FORCE_SCALAR=1 in the environment pins the scalar
// path.

namespace dlcz::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

/// ISA currently used by the dispatching entry points below.
Isa active_isa();

/// Best ISA supported by this CPU and build.
Isa detected_isa();

/// Overrides the dispatch target. Throws std::invalid_argument if the
/// requested ISA is not available on this machine.
void set_active_isa(Isa isa);

bool isa_available(Isa isa);

/// y[k] += alpha * x[k]
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);

/// y[k] *= alpha
void scale(cplx alpha, cplx* y, std::size_t n);

/// sum_k |x[k]|^2
double sum_abs2(const cplx* x, std::size_t n);

/// sum_k conj(x[k]) * y[k]
cplx dot(const cplx* x, const cplx* y, std::size_t n);

// Fixed-ISA entry points, used by the equivalence tests.
namespace scalar {
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
void scale(cplx alpha, cplx* y, std::size_t n);
double sum_abs2(const cplx* x, std::size_t n);
cplx dot(const cplx* x, const cplx* y, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
void scale(cplx alpha, cplx* y, std::size_t n);
double sum_abs2(const cplx* x, std::size_t n);
cplx dot(const cplx* x, const cplx* y, std::size_t n);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
void scale(cplx alpha, cplx* y, std::size_t n);
double sum_abs2(const cplx* x, std::size_t n);
cplx dot(const cplx* x, const cplx* y, std::size_t n);
}  // namespace neon
#endif

}  // namespace dlcz::kernels
