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
#include <vector>

#include "dlcz/repeater.hpp"

namespace dlcz::scaling {

struct FidelityBudget {
  double target = 0.0;  ///< dF_T
  double dark = 0.0;    ///< (L_n / L_0) per-connection dark infidelity
  double asym = 0.0;    ///< sqrt(L_n / L_0) asymmetry infidelity
  bool dark_negligible = true;  ///< dark < target / 10
  bool asym_negligible = true;
};

FidelityBudget fidelity_budget(double segments, double per_connection_dark, double asym,
                               double target);

/// Times in seconds. The level count and L_0 come from the parameters.
struct ScalingReport {
  double excitation_prob = 0.0;  ///< p_c = dF_T L_0 / L
  double eta_p = 0.0;
  double app_success = 0.0;      ///< p_a = eta_a / (2 (c_n + 1)^2)
  double t0 = 0.0;
  double t_n = 0.0;
  double t_tot = 0.0;
  double t_con = 0.0;            ///< 2 t_Delta / (eta_p' eta_a dF_T)
  double ratio = 0.0;            ///< t_tot / t_con
  double ratio_scaling_law = 0.0;        ///< 2 (L/L_0)^2 t_Delta / (eta_p p_a dF_T prod p_i) / t_con
  double baseline_direct_ratio = 0.0;  ///< e^{L / L_att}
  double advantage = 0.0;        ///< baseline / ratio
  std::vector<repeater::ChainLevel> chain;
  FidelityBudget budget;
};

/// params.excitation_prob is replaced by the budget allocation dF_T L_0 / L.
/// Throws InfeasibleError when that allocation is >= 1 or the chain stalls.
ScalingReport total_time(const repeater::RepeaterParams& params, double target_infidelity,
                         double per_connection_dark = 0.0, double asym = 0.0);

enum class ClosedForm { high_eta, general };

/// T_tot / T_con from the limiting forms:
///   high_eta: (L/L_0)^2 e^{L_0/L_att}
///   general:  (L/L_0)^{[log2(L/L_0) + 1]/2 + log2(1/eta_s - 1) + 2} e^{L_0/L_att}
double closed_form_ratio(double length, double segment, double attenuation, double eta_s,
                         ClosedForm form);
double closed_form_time(const repeater::RepeaterParams& params, ClosedForm form);

enum class Objective { compositional, closed_form, power_law };

struct ScanPoint {
  std::size_t levels = 0;
  double segment = 0.0;
  double ratio = 0.0;
  bool feasible = false;
};

struct Optimum {
  double segment = 0.0;  ///< L_0*, same unit as L
  std::size_t levels = 0;  ///< n*; 0 for continuous objectives
  double ratio = 0.0;    ///< T_tot / T_con at the optimum
  std::vector<ScanPoint> scan;  ///< integer-n scan, compositional only
};

struct OptimizeOptions {
  Objective objective = Objective::compositional;
  double target_infidelity = 0.01;
  double exponent = 2.0;   ///< m of the power-law surrogate
  std::size_t max_levels = 30;
};

/// Compositional: scan n with L_0 = L / 2^n. closed_form (general case) and
/// power_law (L/L_0)^m e^{L_0/L_att}: Brent minimization over continuous L_0.
Optimum optimize_segment(const repeater::RepeaterParams& base, double length,
                         const OptimizeOptions& options = {});

}  // namespace dlcz::scaling
