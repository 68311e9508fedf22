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

namespace dlcz::kernels::scalar {

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  for (std::size_t k = 0; k < n; ++k) {
    const double xr = x[k].real();
    const double xi = x[k].imag();
    y[k] = cplx(y[k].real() + (ar * xr - ai * xi), y[k].imag() + (ar * xi + ai * xr));
  }
}

void scale(cplx alpha, cplx* y, std::size_t n) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  for (std::size_t k = 0; k < n; ++k) {
    const double yr = y[k].real();
    const double yi = y[k].imag();
    y[k] = cplx(ar * yr - ai * yi, ar * yi + ai * yr);
  }
}

double sum_abs2(const cplx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += x[k].real() * x[k].real() + x[k].imag() * x[k].imag();
  }
  return acc;
}

cplx dot(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    re += x[k].real() * y[k].real() + x[k].imag() * y[k].imag();
    im += x[k].real() * y[k].imag() - x[k].imag() * y[k].real();
  }
  return {re, im};
}

}  // namespace dlcz::kernels::scalar
