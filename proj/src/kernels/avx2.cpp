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

#include "dlcz/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#define DLCZ_AVX2 __attribute__((target("avx2,fma")))

namespace dlcz::kernels::avx2 {

namespace {

// Horizontal sum of the four lanes.
DLCZ_AVX2 inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Lanes hold (re0, im0, re1, im1). Returns alpha * v for two complex numbers.
DLCZ_AVX2 inline __m256d cmul(__m256d ar, __m256d ai, __m256d v) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, swapped));
}

}  // namespace

DLCZ_AVX2 void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  auto* xd = reinterpret_cast<const double*>(x);
  auto* yd = reinterpret_cast<double*>(y);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d x0 = _mm256_loadu_pd(xd + 2 * k);
    const __m256d x1 = _mm256_loadu_pd(xd + 2 * k + 4);
    const __m256d y0 = _mm256_loadu_pd(yd + 2 * k);
    const __m256d y1 = _mm256_loadu_pd(yd + 2 * k + 4);
    _mm256_storeu_pd(yd + 2 * k, _mm256_add_pd(y0, cmul(ar, ai, x0)));
    _mm256_storeu_pd(yd + 2 * k + 4, _mm256_add_pd(y1, cmul(ar, ai, x1)));
  }
  for (; k + 2 <= n; k += 2) {
    const __m256d x0 = _mm256_loadu_pd(xd + 2 * k);
    const __m256d y0 = _mm256_loadu_pd(yd + 2 * k);
    _mm256_storeu_pd(yd + 2 * k, _mm256_add_pd(y0, cmul(ar, ai, x0)));
  }
  if (k < n) scalar::axpy(alpha, x + k, y + k, n - k);
}

DLCZ_AVX2 void scale(cplx alpha, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  auto* yd = reinterpret_cast<double*>(y);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d y0 = _mm256_loadu_pd(yd + 2 * k);
    _mm256_storeu_pd(yd + 2 * k, cmul(ar, ai, y0));
  }
  if (k < n) scalar::scale(alpha, y + k, n - k);
}

DLCZ_AVX2 double sum_abs2(const cplx* x, std::size_t n) {
  auto* xd = reinterpret_cast<const double*>(x);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d x0 = _mm256_loadu_pd(xd + 2 * k);
    const __m256d x1 = _mm256_loadu_pd(xd + 2 * k + 4);
    acc0 = _mm256_fmadd_pd(x0, x0, acc0);
    acc1 = _mm256_fmadd_pd(x1, x1, acc1);
  }
  double total = hsum(_mm256_add_pd(acc0, acc1));
  if (k < n) total += scalar::sum_abs2(x + k, n - k);
  return total;
}

DLCZ_AVX2 cplx dot(const cplx* x, const cplx* y, std::size_t n) {
  auto* xd = reinterpret_cast<const double*>(x);
  auto* yd = reinterpret_cast<const double*>(y);
  // re accumulates (xr*yr, xi*yi); im accumulates (xr*yi, xi*yr).
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * k);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * k);
    re = _mm256_fmadd_pd(xv, yv, re);
    im = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), im);
  }
  alignas(32) double r[4];
  alignas(32) double i[4];
  _mm256_store_pd(r, re);
  _mm256_store_pd(i, im);
  cplx total((r[0] + r[1]) + (r[2] + r[3]), (i[0] - i[1]) + (i[2] - i[3]));
  if (k < n) total += scalar::dot(x + k, y + k, n - k);
  return total;
}

}  // namespace dlcz::kernels::avx2

#endif
