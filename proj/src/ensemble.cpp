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

#include "dlcz/ensemble.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dlcz/errors.hpp"
#include "dlcz/fock/ops.hpp"

namespace dlcz::ensemble {

namespace odeint = boost::numeric::odeint;

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be finite");
}

}  // namespace

void EnsembleParams::validate() const {
  if (atom_count == 0) throw std::invalid_argument("atom_count must be positive");
  require_finite(rabi, "rabi");
  require_finite(detuning, "detuning");
  require_finite(coupling, "coupling");
  require_finite(cavity_decay, "cavity_decay");
  require_finite(spont_rate, "spont_rate");
  require_finite(interaction_time, "interaction_time");
  if (detuning == 0.0) throw std::invalid_argument("detuning must be nonzero");
  if (!(cavity_decay > 0.0)) throw std::invalid_argument("cavity_decay must be positive");
  if (spont_rate < 0.0) throw std::invalid_argument("spont_rate must be non-negative");
  if (interaction_time < 0.0) throw std::invalid_argument("interaction_time must be non-negative");
}

EffectiveRates effective_rates(const EnsembleParams& p) {
  p.validate();
  const double na = static_cast<double>(p.atom_count);
  const double d2 = p.detuning * p.detuning;
  const double og = std::abs(p.rabi * p.coupling);

  EffectiveRates out;
  out.kappa_prime = 4.0 * na * og * og / (d2 * p.cavity_decay);
  out.gamma_prime = p.rabi * p.rabi / d2 * p.spont_rate;
  if (p.spont_rate > 0.0) {
    out.snr = 4.0 * na * p.coupling * p.coupling / (p.cavity_decay * p.spont_rate);
  } else {
    out.snr = std::numeric_limits<double>::infinity();
  }
  // cosh r = e^{x/2} gives tanh^2 r = 1 - e^{-x}.
  const double x = out.kappa_prime * p.interaction_time;
  out.squeeze = std::acosh(std::exp(0.5 * x));
  out.excitation_prob = -std::expm1(-x);
  const double collective = std::sqrt(na) * og / std::abs(p.detuning);
  out.bad_cavity_ratio =
      collective > 0.0 ? p.cavity_decay / collective : std::numeric_limits<double>::infinity();
  out.bad_cavity_warning = out.bad_cavity_ratio < 10.0;
  if (!std::isfinite(out.kappa_prime) || !std::isfinite(out.squeeze)) {
    throw NumericError("effective rates overflow");
  }
  return out;
}

double langevin_mean_solution(const EnsembleParams& params, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("t must be non-negative");
  return std::exp(0.5 * effective_rates(params).kappa_prime * t);
}

double langevin_mean_numeric(const EnsembleParams& params, double t, double rtol, double atol) {
  if (!(t >= 0.0)) throw std::invalid_argument("t must be non-negative");
  const double k = effective_rates(params).kappa_prime;
  double x = 1.0;
  if (t == 0.0) return x;
  auto rhs = [k](const double& s, double& ds, double) { ds = 0.5 * k * s; };
  odeint::integrate_adaptive(odeint::make_controlled<odeint::runge_kutta_dopri5<double>>(atol, rtol),
                             rhs, x, 0.0, t, t / 100.0);
  return x;
}

fock::DensityOperator squeezed_joint_state(const EffectiveRates& rates, std::size_t cutoff,
                                           double truncation_tolerance) {
  const fock::ModeLayout layout(2, cutoff);
  return fock::apply_two_mode_squeeze(fock::vacuum(layout), 0, 1, rates.squeeze,
                                      truncation_tolerance);
}

namespace {

using State = std::vector<fock::cplx>;

// Gain Lindbladian sum_m g_m (a_m^dag rho a_m - {a_m a_m^dag, rho}/2) with
// a^dag truncated at the cutoff, which keeps the trace exactly.
class GainGenerator {
 public:
  GainGenerator(const fock::ModeLayout& layout, std::vector<double> rates)
      : layout_(layout), rates_(std::move(rates)), dim_(layout.dimension()) {
    occ_.resize(rates_.size() * dim_);
    for (std::size_t m = 0; m < rates_.size(); ++m)
      for (std::size_t i = 0; i < dim_; ++i) occ_[m * dim_ + i] = layout.occupation(i, m);
  }

  void operator()(const State& rho, State& drho, double) const {
    std::fill(drho.begin(), drho.end(), fock::cplx{});
    const std::size_t cutoff = layout_.cutoff();
    for (std::size_t m = 0; m < rates_.size(); ++m) {
      const double g = rates_[m];
      if (g == 0.0) continue;
      const std::size_t s = layout_.stride(m);
      const std::size_t* n = occ_.data() + m * dim_;
      for (std::size_t r = 0; r < dim_; ++r) {
        const double nr = static_cast<double>(n[r]);
        const double ar = n[r] < cutoff ? nr + 1.0 : 0.0;
        for (std::size_t c = 0; c < dim_; ++c) {
          const double ac = n[c] < cutoff ? static_cast<double>(n[c]) + 1.0 : 0.0;
          fock::cplx v = -0.5 * (ar + ac) * rho[r * dim_ + c];
          if (n[r] > 0 && n[c] > 0) {
            v += std::sqrt(nr * static_cast<double>(n[c])) * rho[(r - s) * dim_ + (c - s)];
          }
          drho[r * dim_ + c] += g * v;
        }
      }
    }
  }

 private:
  const fock::ModeLayout& layout_;
  std::vector<double> rates_;
  std::size_t dim_;
  std::vector<std::size_t> occ_;
};

}  // namespace

ModePopulations integrate_gain_dynamics(const std::vector<double>& mode_rates,
                                        std::size_t cutoff, const std::vector<double>& t_grid,
                                        const MasterOptions& options) {
  if (mode_rates.size() < 2) throw std::invalid_argument("need at least two modes");
  for (double g : mode_rates) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw std::invalid_argument("rates must be >= 0");
  }
  if (t_grid.empty()) throw std::invalid_argument("empty time grid");
  if (!(t_grid.front() >= 0.0) || !std::is_sorted(t_grid.begin(), t_grid.end())) {
    throw std::invalid_argument("time grid must be non-negative and non-decreasing");
  }

  const fock::ModeLayout layout(mode_rates.size(), cutoff);
  const std::size_t dim = layout.dimension();
  GainGenerator gen(layout, mode_rates);
  State rho(dim * dim);
  rho[0] = 1.0;

  ModePopulations out;
  out.min_population = 1.0;
  auto observe = [&](const State& x, double t) {
    fock::DensityOperator d(layout);
    std::copy(x.begin(), x.end(), d.data().begin());
    out.time_grid.push_back(t);
    out.collective.push_back(fock::mean_photon_number(d, 0));
    double noise = 0.0;
    for (std::size_t m = 1; m < mode_rates.size(); ++m) noise += fock::mean_photon_number(d, m);
    out.per_noise_mode.push_back(noise / static_cast<double>(mode_rates.size() - 1));
    out.trace.push_back(d.trace().real());
    for (std::size_t i = 0; i < dim; ++i)
      out.min_population = std::min(out.min_population, x[i * dim + i].real());
  };

  double dt = 1e-3;
  const double span = t_grid.back() - t_grid.front();
  if (span > 0.0) dt = span / 1000.0;
  try {
    if (t_grid.front() > 0.0) {
      odeint::integrate_adaptive(
          odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(options.atol, options.rtol),
          gen, rho, 0.0, t_grid.front(), t_grid.front() / 100.0);
    }
    if (t_grid.size() == 1 || span == 0.0) {
      for (double t : t_grid) observe(rho, t);
    } else {
      odeint::integrate_times(
          odeint::make_dense_output(options.atol, options.rtol,
                                    odeint::runge_kutta_dopri5<State>()),
          gen, rho, t_grid.begin(), t_grid.end(), dt, observe);
    }
  } catch (const odeint::step_adjustment_error& e) {
    throw NumericError(std::string("master equation step-size failure: ") + e.what());
  } catch (const odeint::no_progress_error& e) {
    throw NumericError(std::string("master equation step-size failure: ") + e.what());
  }
  return out;
}

ModePopulations integrate_master_equation(const EffectiveRates& rates, std::size_t n_modes,
                                          std::size_t cutoff, const std::vector<double>& t_grid,
                                          const MasterOptions& options) {
  if (n_modes < 2) throw std::invalid_argument("n_modes must be at least 2");
  std::vector<double> g(n_modes, rates.gamma_prime);
  g[0] = rates.kappa_prime + rates.gamma_prime;
  return integrate_gain_dynamics(g, cutoff, t_grid, options);
}

FreeSpaceSnr free_space_snr(double density, double length, double wavenumber) {
  if (!(density > 0.0) || !(length > 0.0) || !(wavenumber > 0.0)) {
    throw std::invalid_argument("free_space_snr inputs must be positive");
  }
  FreeSpaceSnr out;
  out.optical_depth = 3.0 * density * length / (wavenumber * wavenumber);
  out.snr = out.optical_depth;
  out.dilute_violated = wavenumber / std::cbrt(density) < 1.0;
  return out;
}

}  // namespace dlcz::ensemble
