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

#if defined(__aarch64__)

#include <arm_neon.h>

namespace dlcz::kernels::neon {

// One float64x2_t holds a single complex number (re, im).

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const float64x2_t ar = vdupq_n_f64(alpha.real());
  // (-ai, +ai) so that ai * swap(x) lands with the right signs.
  const float64x2_t ai = {-alpha.imag(), alpha.imag()};
  auto* xd = reinterpret_cast<const double*>(x);
  auto* yd = reinterpret_cast<double*>(y);
  for (std::size_t k = 0; k < n; ++k) {
    const float64x2_t xv = vld1q_f64(xd + 2 * k);
    float64x2_t yv = vld1q_f64(yd + 2 * k);
    yv = vfmaq_f64(yv, ar, xv);
    yv = vfmaq_f64(yv, ai, vextq_f64(xv, xv, 1));
    vst1q_f64(yd + 2 * k, yv);
  }
}

void scale(cplx alpha, cplx* y, std::size_t n) {
  const float64x2_t ar = vdupq_n_f64(alpha.real());
  const float64x2_t ai = {-alpha.imag(), alpha.imag()};
  auto* yd = reinterpret_cast<double*>(y);
  for (std::size_t k = 0; k < n; ++k) {
    const float64x2_t yv = vld1q_f64(yd + 2 * k);
    const float64x2_t out = vfmaq_f64(vmulq_f64(ar, yv), ai, vextq_f64(yv, yv, 1));
    vst1q_f64(yd + 2 * k, out);
  }
}

double sum_abs2(const cplx* x, std::size_t n) {
  auto* xd = reinterpret_cast<const double*>(x);
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const float64x2_t xv = vld1q_f64(xd + 2 * k);
    acc = vfmaq_f64(acc, xv, xv);
  }
  return vaddvq_f64(acc);
}

cplx dot(const cplx* x, const cplx* y, std::size_t n) {
  auto* xd = reinterpret_cast<const double*>(x);
  auto* yd = reinterpret_cast<const double*>(y);
  float64x2_t re = vdupq_n_f64(0.0);
  float64x2_t im = vdupq_n_f64(0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const float64x2_t xv = vld1q_f64(xd + 2 * k);
    const float64x2_t yv = vld1q_f64(yd + 2 * k);
    re = vfmaq_f64(re, xv, yv);
    im = vfmaq_f64(im, xv, vextq_f64(yv, yv, 1));
  }
  return {vgetq_lane_f64(re, 0) + vgetq_lane_f64(re, 1),
          vgetq_lane_f64(im, 0) - vgetq_lane_f64(im, 1)};
}

}  // namespace dlcz::kernels::neon

#endif
