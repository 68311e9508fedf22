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

#include "dlcz/scaling.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "dlcz/errors.hpp"

namespace dlcz::scaling {

FidelityBudget fidelity_budget(double segments, double per_connection_dark, double asym,
                               double target) {
  if (!(segments >= 0.0) || !(per_connection_dark >= 0.0) || !(asym >= 0.0) ||
      !(target >= 0.0)) {
    throw std::invalid_argument("fidelity budget inputs must be >= 0");
  }
  FidelityBudget b;
  b.target = target;
  b.dark = segments * per_connection_dark;
  b.asym = std::sqrt(segments) * asym;
  b.dark_negligible = b.dark < 0.1 * target || b.dark == 0.0;
  b.asym_negligible = b.asym < 0.1 * target || b.asym == 0.0;
  return b;
}

ScalingReport total_time(const repeater::RepeaterParams& params, double target_infidelity,
                         double per_connection_dark, double asym) {
  if (!(target_infidelity > 0.0 && target_infidelity <= 1.0)) {
    throw std::invalid_argument("target infidelity must be in (0, 1]");
  }
  repeater::RepeaterParams p = params;
  const double segments = std::ldexp(1.0, static_cast<int>(p.levels));
  p.excitation_prob = target_infidelity / segments;
  if (!(p.excitation_prob < 1.0)) {
    throw InfeasibleError("fidelity budget infeasible: p_c = dF_T L_0 / L >= 1");
  }

  ScalingReport r;
  r.excitation_prob = p.excitation_prob;
  r.eta_p = p.eta_p();
  r.chain = repeater::chain(p);
  const auto& last = r.chain.back();
  double prod = 1.0;
  for (std::size_t i = 1; i < r.chain.size(); ++i) prod *= r.chain[i].probability;
  const double cn = last.vacuum_coeff;
  r.app_success = p.app_efficiency / (2.0 * (cn + 1.0) * (cn + 1.0));
  r.t0 = r.chain.front().time;
  r.t_n = last.time;
  r.t_tot = r.t_n / r.app_success;
  r.t_con = 2.0 * p.pulse_time / (p.local_efficiency * p.app_efficiency * target_infidelity);
  r.ratio = r.t_tot / r.t_con;
  const double law_time = 2.0 * segments * segments * p.pulse_time /
                     (r.eta_p * r.app_success * target_infidelity * prod);
  r.ratio_scaling_law = law_time / r.t_con;
  r.baseline_direct_ratio = std::exp(p.total_length() / p.attenuation_length);
  r.advantage = r.baseline_direct_ratio / r.ratio;
  r.budget = fidelity_budget(segments, per_connection_dark, asym, target_infidelity);
  if (!std::isfinite(r.ratio)) throw NumericError("scaling ratio overflow");
  return r;
}

double closed_form_ratio(double length, double segment, double attenuation, double eta_s,
                         ClosedForm form) {
  if (!(segment > 0.0) || !(attenuation > 0.0) || !(length > segment)) {
    throw std::invalid_argument("closed form needs L > L_0 > 0 and L_att > 0");
  }
  const double x = length / segment;
  const double decay = std::exp(segment / attenuation);
  if (form == ClosedForm::high_eta) return x * x * decay;
  if (!(eta_s > 0.0 && eta_s < 1.0)) {
    throw std::invalid_argument("general closed form needs eta_s in (0, 1); use high_eta");
  }
  const double m = (std::log2(x) + 1.0) / 2.0 + std::log2(1.0 / eta_s - 1.0) + 2.0;
  return std::pow(x, m) * decay;
}

double closed_form_time(const repeater::RepeaterParams& params, ClosedForm form) {
  return closed_form_ratio(params.total_length(), params.segment_length,
                           params.attenuation_length, params.swap_efficiency, form);
}

namespace {

// Brent on log of the objective over L_0 in (lo, hi).
template <class F>
std::pair<double, double> brent(F log_objective, double lo, double hi) {
  auto [x, fx] = boost::math::tools::brent_find_minima(log_objective, lo, hi, 52);
  // Brent stalls near sqrt(eps) in x; Newton on central differences of the
  // derivative gets much closer to the stationary point.
  for (int it = 0; it < 3; ++it) {
    const double h = 1e-5 * x;
    const double fp = log_objective(x + h);
    const double fm = log_objective(x - h);
    const double d1 = (fp - fm) / (2.0 * h);
    const double d2 = (fp - 2.0 * log_objective(x) + fm) / (h * h);
    if (!(d2 > 0.0)) break;
    const double step = d1 / d2;
    if (!(std::abs(step) < h) || !(x - step > lo) || !(x - step < hi)) break;
    x -= step;
  }
  fx = log_objective(x);
  return {x, std::exp(fx)};
}

}  // namespace

Optimum optimize_segment(const repeater::RepeaterParams& base, double length,
                         const OptimizeOptions& options) {
  const double latt = base.attenuation_length;
  if (!(length > latt)) throw std::invalid_argument("optimize_segment needs L > L_att");
  Optimum best;

  switch (options.objective) {
    case Objective::power_law: {
      const double m = options.exponent;
      if (!(m > 0.0)) throw std::invalid_argument("power-law exponent must be positive");
      auto f = [&](double l0) { return m * std::log(length / l0) + l0 / latt; };
      std::tie(best.segment, best.ratio) = brent(f, 1e-6 * latt, length);
      return best;
    }
    case Objective::closed_form: {
      auto f = [&](double l0) {
        return std::log(closed_form_ratio(length, l0, latt, base.swap_efficiency,
                                          base.swap_efficiency < 1.0 ? ClosedForm::general
                                                                     : ClosedForm::high_eta));
      };
      // Below L_0 = L/2 the general form is defined; keep one level at least.
      std::tie(best.segment, best.ratio) = brent(f, length * 1e-6, length / 2.0);
      return best;
    }
    case Objective::compositional:
      break;
  }

  best.ratio = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n <= options.max_levels; ++n) {
    repeater::RepeaterParams p = base;
    p.levels = n;
    p.segment_length = std::ldexp(length, -static_cast<int>(n));
    ScanPoint pt{n, p.segment_length, 0.0, false};
    try {
      pt.ratio = total_time(p, options.target_infidelity).ratio;
      pt.feasible = true;
    } catch (const InfeasibleError&) {
    } catch (const NumericError&) {
    }
    if (pt.feasible && pt.ratio < best.ratio) {
      best.ratio = pt.ratio;
      best.levels = n;
      best.segment = pt.segment;
    }
    best.scan.push_back(pt);
  }
  if (!std::isfinite(best.ratio)) throw InfeasibleError("no feasible segment length");
  return best;
}

}  // namespace dlcz::scaling
