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

#include "dlcz/fock/ops.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dlcz/errors.hpp"
#include "dlcz/kernels.hpp"

namespace dlcz::fock {

namespace {

constexpr double kSupportTolerance = 1e-14;
constexpr double kImpossibleOutcome = 1e-15;

void require_distinct(const ModeLayout& layout, std::size_t i, std::size_t j) {
  layout.check_mode(i);
  layout.check_mode(j);
  if (i == j) throw std::invalid_argument("two-mode operation needs distinct modes");
}

// sqrt(a! / (a - k)!)
double falling_sqrt(std::size_t a, std::size_t k) {
  double v = 1.0;
  for (std::size_t t = a - k + 1; t <= a; ++t) v *= std::sqrt(static_cast<double>(t));
  return v;
}

double binomial(std::size_t n, std::size_t k) {
  double v = 1.0;
  for (std::size_t t = 1; t <= k; ++t) v = v * static_cast<double>(n - k + t) / static_cast<double>(t);
  return v;
}

cplx ipow(cplx base, std::size_t e) {
  cplx v = 1.0;
  for (std::size_t t = 0; t < e; ++t) v *= base;
  return v;
}

double factorial(std::size_t n) {
  double v = 1.0;
  for (std::size_t t = 2; t <= n; ++t) v *= static_cast<double>(t);
  return v;
}

// Full-layout indices of every reduced basis state, with the removed modes
// at occupation zero.
std::vector<std::size_t> embedding(const ModeLayout& full, std::span<const std::size_t> removed) {
  std::vector<bool> gone(full.mode_count(), false);
  for (auto m : removed) gone[m] = true;
  std::vector<std::size_t> kept;
  for (std::size_t m = 0; m < full.mode_count(); ++m) {
    if (!gone[m]) kept.push_back(m);
  }
  std::size_t reduced_dim = 1;
  for (std::size_t k = 0; k < kept.size(); ++k) reduced_dim *= full.levels();
  std::vector<std::size_t> emb(reduced_dim);
  for (std::size_t r = 0; r < reduced_dim; ++r) {
    std::size_t rest = r;
    std::size_t idx = 0;
    for (std::size_t k = kept.size(); k-- > 0;) {
      idx += (rest % full.levels()) * full.stride(kept[k]);
      rest /= full.levels();
    }
    emb[r] = idx;
  }
  return emb;
}

std::vector<std::size_t> local_offsets(const ModeLayout& layout, std::span<const std::size_t> modes) {
  std::size_t local_dim = 1;
  for (std::size_t k = 0; k < modes.size(); ++k) local_dim *= layout.levels();
  std::vector<std::size_t> off(local_dim);
  for (std::size_t a = 0; a < local_dim; ++a) {
    std::size_t rest = a;
    std::size_t idx = 0;
    for (std::size_t k = modes.size(); k-- > 0;) {
      idx += (rest % layout.levels()) * layout.stride(modes[k]);
      rest /= layout.levels();
    }
    off[a] = idx;
  }
  return off;
}

void check_pair_support(const DensityOperator& rho, std::size_t i, std::size_t j,
                        const char* what) {
  const auto& layout = rho.layout();
  const double leak = rho.max_abs_where([&](std::size_t idx) {
    return layout.occupation(idx, i) + layout.occupation(idx, j) > layout.cutoff();
  });
  if (leak > kSupportTolerance) {
    throw TruncationError(std::string(what) + ": state has weight with n_i + n_j above cutoff " +
                          std::to_string(layout.cutoff()) + " (|rho| up to " +
                          std::to_string(leak) + ")");
  }
}

}  // namespace

void DetectorModel::validate() const {
  if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
    throw std::invalid_argument("detector efficiency must lie in [0,1], got " +
                                std::to_string(efficiency));
  }
  if (!(dark_count_prob >= 0.0 && dark_count_prob <= 1.0)) {
    throw std::invalid_argument("detector dark-count probability must lie in [0,1], got " +
                                std::to_string(dark_count_prob));
  }
}

double outcome_weight(const DetectorModel& det, Outcome outcome, std::size_t photons) {
  const double miss = std::pow(1.0 - det.efficiency, static_cast<double>(photons));
  const double none = (1.0 - det.dark_count_prob) * miss;
  if (!det.resolving) {
    switch (outcome) {
      case Outcome::no_click:
        return none;
      case Outcome::click: {
        const double seen =
            photons == 0 ? 0.0
                         : -std::expm1(static_cast<double>(photons) * std::log1p(-det.efficiency));
        return det.dark_count_prob + (1.0 - det.dark_count_prob) * seen;
      }
      case Outcome::multi_click:
        throw std::invalid_argument("multi_click requires a photon-number-resolving detector");
    }
  }
  double single = det.dark_count_prob * miss;
  if (photons > 0) {
    single += (1.0 - det.dark_count_prob) * static_cast<double>(photons) * det.efficiency *
              std::pow(1.0 - det.efficiency, static_cast<double>(photons - 1));
  }
  switch (outcome) {
    case Outcome::no_click:
      return none;
    case Outcome::click:
      return single;
    case Outcome::multi_click:
      return std::max(0.0, 1.0 - none - single);
  }
  return 0.0;
}

namespace detail {

void left_apply(const ModeLayout& layout, const LocalOperator& op, std::span<const cplx> in,
                std::span<cplx> out) {
  const std::size_t dim = layout.dimension();
  const auto offsets = local_offsets(layout, op.modes);
  std::fill(out.begin(), out.end(), cplx{});
  for (std::size_t base = 0; base < dim; ++base) {
    bool is_base = true;
    for (auto m : op.modes) {
      if (layout.occupation(base, m) != 0) {
        is_base = false;
        break;
      }
    }
    if (!is_base) continue;
    for (std::size_t a = 0; a < op.local_dim; ++a) {
      cplx* dst = out.data() + (base + offsets[a]) * dim;
      for (std::size_t b = 0; b < op.local_dim; ++b) {
        const cplx coef = op.matrix[a * op.local_dim + b];
        if (coef == cplx{}) continue;
        kernels::axpy(coef, in.data() + (base + offsets[b]) * dim, dst, dim);
      }
    }
  }
}

void accumulate_sandwich(const DensityOperator& rho, const LocalOperator& op,
                         DensityOperator& out) {
  const auto& layout = rho.layout();
  const std::size_t dim = layout.dimension();
  std::vector<cplx> x(dim * dim);
  left_apply(layout, op, rho.data(), x);
  // op rho op^dag = op (op rho)^dag for Hermitian rho.
  std::vector<cplx> xh(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) xh[c * dim + r] = std::conj(x[r * dim + c]);
  }
  left_apply(layout, op, xh, x);
  kernels::axpy(1.0, x.data(), out.data().data(), x.size());
}

LocalOperator beamsplitter_operator(std::size_t levels, std::size_t i, std::size_t j,
                                    double angle, double phase) {
  LocalOperator op{{i, j}, levels * levels, std::vector<cplx>(levels * levels * levels * levels)};
  const std::size_t cutoff = levels - 1;
  const double c = std::cos(angle);
  const cplx s_fwd = std::polar(std::sin(angle), phase);     // e^{i phase} sin
  const cplx s_back = -std::polar(std::sin(angle), -phase);  // -e^{-i phase} sin
  for (std::size_t n = 0; n <= cutoff; ++n) {
    for (std::size_t m = 0; n + m <= cutoff; ++m) {
      const std::size_t total = n + m;
      const double norm = 1.0 / std::sqrt(factorial(n) * factorial(m));
      for (std::size_t p = 0; p <= n; ++p) {
        for (std::size_t q = 0; q <= m; ++q) {
          const std::size_t k = p + q;
          const cplx coef = binomial(n, p) * binomial(m, q) * std::pow(c, double(p)) *
                            ipow(s_fwd, n - p) * ipow(s_back, q) *
                            std::pow(c, double(m - q)) *
                            std::sqrt(factorial(k) * factorial(total - k)) * norm;
          const std::size_t out_idx = k * levels + (total - k);
          const std::size_t in_idx = n * levels + m;
          op.matrix[out_idx * op.local_dim + in_idx] += coef;
        }
      }
    }
  }
  return op;
}

LocalOperator squeeze_operator(std::size_t levels, std::size_t i, std::size_t j, double r) {
  // Disentangled form exp(t K+) cosh(r)^(-2 K0) exp(-t K-), t = tanh r,
  // K+ = a^dag b^dag, K- = a b, K0 = (n_a + n_b + 1)/2.
  LocalOperator op{{i, j}, levels * levels, std::vector<cplx>(levels * levels * levels * levels)};
  const std::size_t cutoff = levels - 1;
  const double t = std::tanh(r);
  const double ch = std::cosh(r);
  for (std::size_t n = 0; n <= cutoff; ++n) {
    for (std::size_t m = 0; m <= cutoff; ++m) {
      const std::size_t in_idx = n * levels + m;
      for (std::size_t jj = 0; jj <= std::min(n, m); ++jj) {
        const double lower = std::pow(-t, double(jj)) / factorial(jj) * falling_sqrt(n, jj) *
                             falling_sqrt(m, jj) * std::pow(ch, -double(n + m - 2 * jj + 1));
        const std::size_t a = n - jj;
        const std::size_t b = m - jj;
        for (std::size_t l = 0; a + l <= cutoff && b + l <= cutoff; ++l) {
          const double raise = std::pow(t, double(l)) / factorial(l) * falling_sqrt(a + l, l) *
                               falling_sqrt(b + l, l);
          const std::size_t out_idx = (a + l) * levels + (b + l);
          op.matrix[out_idx * op.local_dim + in_idx] += lower * raise;
        }
      }
    }
  }
  return op;
}

}  // namespace detail

DensityOperator vacuum(const ModeLayout& layout) {
  DensityOperator rho(layout);
  rho(0, 0) = 1.0;
  return rho;
}

DensityOperator apply_beamsplitter(const DensityOperator& rho, std::size_t i, std::size_t j,
                                   double angle, double phase) {
  const auto& layout = rho.layout();
  require_distinct(layout, i, j);
  check_pair_support(rho, i, j, "apply_beamsplitter");
  DensityOperator out(layout);
  detail::accumulate_sandwich(rho, detail::beamsplitter_operator(layout.levels(), i, j, angle, phase),
                              out);
  return out;
}

DensityOperator apply_phase(const DensityOperator& rho, std::size_t i, double psi) {
  const auto& layout = rho.layout();
  layout.check_mode(i);
  std::vector<cplx> phases(layout.levels());
  for (std::size_t n = 0; n < layout.levels(); ++n) phases[n] = std::polar(1.0, psi * double(n));
  DensityOperator out = rho;
  const std::size_t dim = layout.dimension();
  for (std::size_t r = 0; r < dim; ++r) {
    const cplx pr = phases[layout.occupation(r, i)];
    for (std::size_t c = 0; c < dim; ++c) {
      out(r, c) *= pr * std::conj(phases[layout.occupation(c, i)]);
    }
  }
  return out;
}

DensityOperator apply_two_mode_squeeze(const DensityOperator& rho, std::size_t i, std::size_t j,
                                       double r, double truncation_tolerance) {
  const auto& layout = rho.layout();
  require_distinct(layout, i, j);
  const double tail = std::pow(std::tanh(std::abs(r)), 2.0 * double(layout.cutoff() + 1));
  if (!(tail < truncation_tolerance) && r != 0.0) {
    throw TruncationError("apply_two_mode_squeeze: tanh(r)^(2(cutoff+1)) = " +
                          std::to_string(tail) + " is not below tolerance " +
                          std::to_string(truncation_tolerance) + "; raise the cutoff");
  }
  if (r == 0.0) return rho;
  DensityOperator out(layout);
  detail::accumulate_sandwich(rho, detail::squeeze_operator(layout.levels(), i, j, r), out);
  return out;
}

DensityOperator apply_loss(const DensityOperator& rho, std::size_t i, double eta) {
  const auto& layout = rho.layout();
  layout.check_mode(i);
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("apply_loss: transmissivity must lie in [0,1], got " +
                                std::to_string(eta));
  }
  if (eta == 1.0) return rho;
  const std::size_t levels = layout.levels();
  DensityOperator out(layout);
  for (std::size_t k = 0; k < levels; ++k) {
    detail::LocalOperator kraus{{i}, levels, std::vector<cplx>(levels * levels)};
    bool nonzero = false;
    for (std::size_t n = k; n < levels; ++n) {
      const double amp = std::sqrt(binomial(n, k) * std::pow(1.0 - eta, double(k)) *
                                   std::pow(eta, double(n - k)));
      kraus.matrix[(n - k) * levels + n] = amp;
      nonzero = nonzero || amp != 0.0;
    }
    if (nonzero) detail::accumulate_sandwich(rho, kraus, out);
  }
  return out;
}

double outcome_probability(const DensityOperator& rho, std::size_t i, const DetectorModel& det,
                           Outcome outcome) {
  const std::size_t modes[] = {i};
  const DetectorModel dets[] = {det};
  const Outcome outs[] = {outcome};
  return joint_outcome_probability(rho, modes, dets, outs);
}

Measurement measure_detector(const DensityOperator& rho, std::size_t i, const DetectorModel& det,
                             Outcome outcome) {
  const auto& layout = rho.layout();
  layout.check_mode(i);
  det.validate();
  const std::size_t removed[] = {i};
  const ModeLayout reduced = layout.without(removed);
  const auto emb = embedding(layout, removed);
  std::vector<double> weight(layout.levels());
  for (std::size_t n = 0; n < layout.levels(); ++n) weight[n] = outcome_weight(det, outcome, n);

  DensityOperator post(reduced);
  const std::size_t dim = reduced.dimension();
  for (std::size_t n = 0; n < layout.levels(); ++n) {
    if (weight[n] == 0.0) continue;
    const std::size_t shift = n * layout.stride(i);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        post(r, c) += weight[n] * rho(emb[r] + shift, emb[c] + shift);
      }
    }
  }
  const double p = post.trace().real();
  if (!(p >= kImpossibleOutcome)) {
    throw ImpossibleOutcomeError("impossible-outcome conditioning: probability " +
                                 std::to_string(p) + " on mode " + std::to_string(i));
  }
  post.scale(1.0 / p);
  return {p, std::move(post)};
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::size_t> modes) {
  const auto& layout = rho.layout();
  const ModeLayout reduced = layout.without(modes);
  const auto emb = embedding(layout, modes);
  std::vector<std::size_t> traced(modes.begin(), modes.end());
  std::sort(traced.begin(), traced.end());
  traced.erase(std::unique(traced.begin(), traced.end()), traced.end());
  const auto shifts = local_offsets(layout, traced);
  DensityOperator out(reduced);
  const std::size_t dim = reduced.dimension();
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      cplx acc{};
      for (auto s : shifts) acc += rho(emb[r] + s, emb[c] + s);
      out(r, c) = acc;
    }
  }
  return out;
}

double fidelity(const DensityOperator& rho, const PureState& psi) {
  if (!(rho.layout() == psi.layout())) {
    throw std::invalid_argument("fidelity: layout mismatch");
  }
  const std::size_t dim = rho.dimension();
  std::vector<cplx> conj_psi(dim);
  for (std::size_t k = 0; k < dim; ++k) conj_psi[k] = std::conj(psi[k]);
  cplx acc{};
  for (std::size_t r = 0; r < dim; ++r) {
    if (psi[r] == cplx{}) continue;
    // (rho psi)_r = conj(sum_c conj(rho_rc) conj(psi_c))
    const cplx rho_psi = std::conj(kernels::dot(rho.row(r).data(), conj_psi.data(), dim));
    acc += std::conj(psi[r]) * rho_psi;
  }
  return acc.real();
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  if (a.layout().cutoff() != b.layout().cutoff()) {
    throw std::invalid_argument("tensor: cutoffs differ");
  }
  const ModeLayout layout(a.layout().mode_count() + b.layout().mode_count(), a.layout().cutoff(),
                          std::max(a.layout().dimension_bound(), b.layout().dimension_bound()));
  DensityOperator out(layout);
  const std::size_t da = a.dimension();
  const std::size_t db = b.dimension();
  for (std::size_t ra = 0; ra < da; ++ra) {
    for (std::size_t ca = 0; ca < da; ++ca) {
      const cplx va = a(ra, ca);
      if (va == cplx{}) continue;
      for (std::size_t rb = 0; rb < db; ++rb) {
        kernels::axpy(va, b.row(rb).data(), &out(ra * db + rb, ca * db), db);
      }
    }
  }
  return out;
}

double mean_photon_number(const DensityOperator& rho, std::size_t mode) {
  const auto& layout = rho.layout();
  layout.check_mode(mode);
  double acc = 0.0;
  for (std::size_t r = 0; r < rho.dimension(); ++r) {
    acc += double(layout.occupation(r, mode)) * rho.population(r);
  }
  return acc;
}

double joint_outcome_probability(const DensityOperator& rho, std::span<const std::size_t> modes,
                                 std::span<const DetectorModel> detectors,
                                 std::span<const Outcome> outcomes) {
  if (modes.size() != detectors.size() || modes.size() != outcomes.size()) {
    throw std::invalid_argument("joint_outcome_probability: argument lengths differ");
  }
  const auto& layout = rho.layout();
  for (auto m : modes) layout.check_mode(m);
  for (const auto& d : detectors) d.validate();
  std::vector<std::vector<double>> weights(modes.size(), std::vector<double>(layout.levels()));
  for (std::size_t k = 0; k < modes.size(); ++k) {
    for (std::size_t n = 0; n < layout.levels(); ++n) {
      weights[k][n] = outcome_weight(detectors[k], outcomes[k], n);
    }
  }
  double p = 0.0;
  for (std::size_t r = 0; r < rho.dimension(); ++r) {
    double w = rho.population(r);
    for (std::size_t k = 0; k < modes.size() && w != 0.0; ++k) {
      w *= weights[k][layout.occupation(r, modes[k])];
    }
    p += w;
  }
  return p;
}

}  // namespace dlcz::fock
