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

// Acceptance checks 1-9. Prints one PASS/FAIL line per criterion, with the
// measured quantities and the wall time against the runtime budget.

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dlcz/applications.hpp"
#include "dlcz/ensemble.hpp"
#include "dlcz/fock/ops.hpp"
#include "dlcz/monte_carlo.hpp"
#include "dlcz/repeater.hpp"
#include "dlcz/scaling.hpp"

namespace {

using namespace dlcz;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome recursion_identity() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> c_dist(0.0, 1.0);
  std::uniform_real_distribution<double> eta_dist(0.2, 1.0);
  std::uniform_int_distribution<int> level_dist(0, 20);
  double max_abs = 0.0;
  double max_rel = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double c0 = c_dist(rng);
    const double eta = eta_dist(rng);
    const int i = level_dist(rng);
    double c = c0;
    for (int l = 0; l < i; ++l) c = repeater::swap_vacuum_coeff(c, eta);
    const double closed = std::ldexp(c0, i) + (std::ldexp(1.0, i) - 1.0) * (1.0 - eta);
    const double lib = repeater::vacuum_coeff_closed_form(static_cast<std::size_t>(i), eta, c0);
    const double err = std::max(std::abs(c - closed), std::abs(lib - closed));
    max_abs = std::max(max_abs, err);
    max_rel = std::max(max_rel, err / std::max(1.0, closed));
  }
  bool exact = true;
  for (double eta : {0.4, 2.0 / 3.0, 0.9, 1.0}) {
    for (std::size_t i = 0; i <= 20; ++i) {
      const double paper = (std::ldexp(1.0, static_cast<int>(i)) - 1.0) * (1.0 - eta);
      exact = exact && repeater::vacuum_coeff_closed_form(i, eta, 0.0) == paper;
    }
  }
  // Relative tolerance: absolute 1e-12 is below one ulp once c exceeds ~4e3.
  return {max_rel <= 1e-12 && exact,
          fmt("max |err| %.2e, max rel err %.2e (tol 1e-12), c0=0 exact: %s", max_abs, max_rel,
              exact ? "yes" : "no")};
}

Outcome swap_equivalence() {
  double worst_p = 0.0;
  double worst_c = 0.0;
  for (double c : {0.0, 1.0 / 3.0, 1.0, 3.0}) {
    for (double eta : {0.4, 2.0 / 3.0, 0.9}) {
      const auto o = repeater::swap_oracle(c, eta);
      worst_p = std::max(worst_p, std::abs(o.probability - repeater::swap_success(c, eta)));
      worst_c = std::max(worst_c, std::abs(o.vacuum_coeff - repeater::swap_vacuum_coeff(c, eta)));
    }
  }
  return {worst_p <= 1e-9 && worst_c <= 1e-9,
          fmt("max |dp| %.2e, max |dc| %.2e (tol 1e-9)", worst_p, worst_c)};
}

Outcome generation_oracle() {
  const double pc = 0.005;
  const double eta_p = 0.2;
  const double pdc = 1e-5;
  repeater::RepeaterParams p;
  p.excitation_prob = pc;
  p.local_efficiency = 1.0;
  p.attenuation_length = 1.0;
  p.segment_length = -std::log(eta_p);
  p.dark_prob = pdc;
  const auto o = repeater::generate_oracle(p);
  const double c0 = pdc / (eta_p * pc);
  const double c_rel = std::abs(o.vacuum_coeff / c0 - 1.0);
  const double df_ratio = o.fidelity_deficit / pc;
  const bool c_ok = c_rel <= 2.0 * pc;
  const bool df_ok = df_ratio >= 0.5 && df_ratio <= 2.0;
  return {c_ok && df_ok,
          fmt("c0 %.7f vs %.7f (rel %.2e, tol %.0e): %s; dF0 %.5f = %.3f p_c (band [0.5, 2]): %s",
              o.vacuum_coeff, c0, c_rel, 2.0 * pc, c_ok ? "ok" : "FAIL", o.fidelity_deficit,
              df_ratio, df_ok ? "ok" : "FAIL")};
}

Outcome chsh() {
  using std::numbers::pi;
  const double tsirelson = 2.0 * std::numbers::sqrt2;
  double worst_value = 0.0;
  double worst_spread = 0.0;
  double worst_surface = 0.0;
  const double reference = applications::chsh_value(0.0, 1.0);
  for (double phi : {0.0, 1.0, pi}) {
    for (double c : {0.0, 1.0, 5.0}) {
      for (double eta : {0.3, 1.0}) {
        applications::CircuitOptions opt;
        opt.phase = phi;
        const double v = applications::chsh_value(c, eta, opt);
        worst_value = std::max(worst_value, std::abs(v - tsirelson));
        worst_spread = std::max(worst_spread, std::abs(v - reference));
        for (int i = 0; i < 8; ++i) {
          for (int j = 0; j < 8; ++j) {
            const applications::MeasurementSetting s{i * pi / 4, j * pi / 4};
            const double e = applications::correlation(c, s, eta, opt).value;
            worst_surface = std::max(worst_surface, std::abs(e - std::cos(s.psi_left - s.psi_right)));
          }
        }
      }
    }
  }
  return {worst_value <= 1e-9 && worst_spread <= 1e-10 && worst_surface <= 1e-9,
          fmt("S = %.10f, max |S-2sqrt2| %.2e, spread %.2e, max |E-cos| %.2e over 18 configs",
              reference, worst_value, worst_spread, worst_surface)};
}

Outcome teleportation() {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> g;
  double worst_f = 0.0;
  double worst_joint = 0.0;
  double worst_form = 0.0;
  for (int k = 0; k < 20; ++k) {
    std::complex<double> a{g(rng), g(rng)};
    std::complex<double> b{g(rng), g(rng)};
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    const applications::PolarizationQubit q{a / n, b / n};
    for (double c : {0.0, 1.0}) {
      for (double eta : {0.4, 1.0}) {
        const auto t = applications::teleport(q, c, eta);
        const double form = 0.5 * eta / (2.0 * (c + 1.0) * (c + 1.0));
        worst_f = std::max(worst_f, std::abs(t.output_fidelity - 1.0));
        worst_joint = std::max(worst_joint, std::abs(t.success_prob - t.success_prob_joint));
        worst_form = std::max(worst_form, std::abs(t.success_prob - form));
      }
    }
  }
  return {worst_f <= 1e-9 && worst_joint <= 1e-9 && worst_form <= 1e-9,
          fmt("max |F-1| %.2e, max |P - pattern sum| %.2e, max |P - eta_a/[4(c+1)^2]| %.2e", worst_f,
              worst_joint, worst_form)};
}

Outcome scaling_headline() {
  const double length = 100.0;
  repeater::RepeaterParams base;
  base.attenuation_length = 1.0;
  base.swap_efficiency = 2.0 / 3.0;
  scaling::OptimizeOptions opt;
  opt.objective = scaling::Objective::compositional;
  opt.max_levels = 20;
  const auto best = scaling::optimize_segment(base, length, opt);
  const double direct = std::exp(length);
  const double direct_rel = std::abs(direct / 2.6881171418161356e43 - 1.0);
  const double advantage = direct / best.ratio;
  const bool ratio_ok = best.ratio >= 1e5 && best.ratio <= 3e7;
  const bool l0_ok = best.segment >= 4.0 && best.segment <= 8.0;
  const bool direct_ok = direct_rel <= 1e-6;
  const bool adv_ok = advantage >= 1e30;
  return {ratio_ok && l0_ok && direct_ok && adv_ok,
          fmt("min ratio %.4g at n=%zu (band [1e5, 3e7]): %s; L0 %.4g (band [4, 8]): %s; "
              "direct %.4g: %s; advantage %.3g: %s",
              best.ratio, best.levels, ratio_ok ? "ok" : "FAIL", best.segment, l0_ok ? "ok" : "FAIL",
              direct, direct_ok ? "ok" : "FAIL", advantage, adv_ok ? "ok" : "FAIL")};
}

Outcome collective_enhancement() {
  double worst_rel = 0.0;
  double worst_trace = 0.0;
  std::string snrs;
  for (double spont : {4.0, 1.0, 0.2}) {
    ensemble::EnsembleParams p;
    p.spont_rate = spont;
    const auto r = ensemble::effective_rates(p);
    snrs += fmt("%s%g", snrs.empty() ? "" : ",", r.snr);
    std::vector<double> grid;
    for (int k = 0; k <= 50; ++k) grid.push_back(0.05 / r.kappa_prime * k / 50.0);
    const auto pops = ensemble::integrate_master_equation(r, 4, 2, grid);
    const double expected = (r.kappa_prime + r.gamma_prime) / r.gamma_prime;
    for (std::size_t k = 1; k < grid.size(); ++k) {
      const double ratio = pops.collective[k] / pops.per_noise_mode[k];
      worst_rel = std::max(worst_rel, std::abs(ratio / expected - 1.0));
    }
    for (double t : pops.trace) worst_trace = std::max(worst_trace, std::abs(t - 1.0));
  }
  return {worst_rel <= 0.05 && worst_trace <= 1e-9,
          fmt("R_sn {%s}: max rel dev of rate ratio %.2e (tol 0.05), max trace err %.2e", snrs.c_str(),
              worst_rel, worst_trace)};
}

Outcome squeezing_solution() {
  ensemble::EnsembleParams p;
  const double kp = ensemble::effective_rates(p).kappa_prime;
  double worst_drift = 0.0;
  for (int k = 0; k <= 60; ++k) {
    const double kt = 3.0 * k / 60.0;
    worst_drift =
        std::max(worst_drift, std::abs(ensemble::langevin_mean_numeric(p, kt / kp) - std::exp(kt / 2)));
  }
  double worst_p = 0.0;
  double worst_mean = 0.0;
  for (double kt : {0.05, 0.2, 0.5}) {
    p.interaction_time = kt / kp;
    const auto r = ensemble::effective_rates(p);
    const std::size_t cutoff = 28;
    const auto rho = ensemble::squeezed_joint_state(r, cutoff);
    const double th2 = std::pow(std::tanh(r.squeeze), 2);
    const double ch2 = std::pow(std::cosh(r.squeeze), 2);
    for (std::size_t n = 0; n <= cutoff; ++n) {
      const std::size_t nn[] = {n, n};
      const double expected = std::pow(th2, double(n)) / ch2;
      worst_p = std::max(worst_p, std::abs(rho.population(rho.layout().index_of(nn)) - expected));
    }
    const double sh2 = std::pow(std::sinh(r.squeeze), 2);
    for (std::size_t mode : {0, 1}) {
      worst_mean = std::max(worst_mean, std::abs(fock::mean_photon_number(rho, mode) - sh2));
    }
  }
  return {worst_drift <= 1e-8 && worst_p <= 1e-8 && worst_mean <= 1e-8,
          fmt("drift max err %.2e, max |P(n,n) err| %.2e, max |<n> - sinh^2 r| %.2e (tol 1e-8)",
              worst_drift, worst_p, worst_mean)};
}

Outcome monte_carlo_consistency() {
  repeater::RepeaterParams p;
  p.excitation_prob = 0.01;
  p.dark_prob = 1e-4;
  p.swap_efficiency = 0.9;
  monte_carlo::TrialConfig cfg;
  cfg.n_trials = 100000;
  cfg.seed = 2024;
  const auto gen = monte_carlo::estimate(p, 0, cfg);
  const double expected = p.pulse_time / (p.eta_p() * p.excitation_prob + p.dark_prob);
  const double sigma = gen.stddev / std::sqrt(double(gen.n_trials));
  const double z = (gen.mean - expected) / sigma;
  const bool gen_ok = std::abs(z) <= 3.0;

  cfg.n_trials = 20000;
  const auto two = monte_carlo::estimate(p, 2, cfg);
  const bool chain_ok = two.ratio >= 1.0 && two.ratio <= 4.0;

  cfg.keep_samples = true;
  cfg.threads = 1;
  const auto a = monte_carlo::estimate(p, 2, cfg);
  cfg.threads = 8;
  const auto b = monte_carlo::estimate(p, 2, cfg);
  const bool same = a.samples == b.samples && a.mean == b.mean && a.stddev == b.stddev;
  return {gen_ok && chain_ok && same,
          fmt("generation z = %.2f (|z| <= 3); T2 sampled/analytic %.3f (band [1, 4]); "
              "1 vs 8 threads bit-identical: %s",
              z, two.ratio, same ? "yes" : "no")};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "recursion identity", 1.0, recursion_identity},
      {2, "swap oracle vs analytic", 10.0, swap_equivalence},
      {3, "generation oracle", 10.0, generation_oracle},
      {4, "CHSH", 30.0, chsh},
      {5, "teleportation", 30.0, teleportation},
      {6, "scaling headline", 5.0, scaling_headline},
      {7, "collective enhancement", 60.0, collective_enhancement},
      {8, "squeezing solution", 5.0, squeezing_solution},
      {9, "Monte Carlo consistency", 60.0, monte_carlo_consistency},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s %d %s: %s [%.2f s / %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
