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

#include "dlcz/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "dlcz/applications.hpp"
#include "dlcz/errors.hpp"

namespace dlcz::cli {

namespace {

using Scalars = std::vector<std::pair<std::string, Value>>;

Value num(double v) { return v; }
Value integer(std::uint64_t v) { return static_cast<std::int64_t>(v); }

Report rates(const Config& cfg) {
  const auto r = ensemble::effective_rates(cfg.ensemble);
  const auto fs = ensemble::free_space_snr(cfg.free_space.density, cfg.free_space.length,
                                           cfg.free_space.wavenumber);
  Report rep{"rates", {}, {}, {}};
  rep.scalars = {{"kappa_prime", num(r.kappa_prime)},
                 {"gamma_prime", num(r.gamma_prime)},
                 {"snr", num(r.snr)},
                 {"squeeze", num(r.squeeze)},
                 {"excitation_prob", num(r.excitation_prob)},
                 {"bad_cavity_ratio", num(r.bad_cavity_ratio)},
                 {"bad_cavity_warning", r.bad_cavity_warning},
                 {"optical_depth", num(fs.optical_depth)},
                 {"dilute_violated", fs.dilute_violated}};
  if (r.bad_cavity_warning) {
    rep.summary.push_back("warning: bad-cavity ratio " + format_number(r.bad_cavity_ratio, 4) +
                          " < 10, adiabatic elimination is marginal");
  }
  return rep;
}

Report dynamics(const Config& cfg) {
  const auto r = ensemble::effective_rates(cfg.ensemble);
  const double scale = r.kappa_prime > 0.0   ? r.kappa_prime
                       : r.gamma_prime > 0.0 ? r.gamma_prime
                                             : 1.0;
  const double t_end = cfg.dynamics.kappa_t_end / scale;
  std::vector<double> grid;
  for (std::size_t k = 0; k <= cfg.dynamics.steps; ++k) {
    grid.push_back(t_end * static_cast<double>(k) / static_cast<double>(cfg.dynamics.steps));
  }
  const auto pops =
      ensemble::integrate_master_equation(r, cfg.dynamics.noise_modes + 1, cfg.dynamics.cutoff, grid);

  Report rep{"dynamics", {}, {}, {}};
  Table t{"time_series", {"t", "pop_collective", "pop_noise_mode", "ratio"}, {}};
  double trace_err = 0.0;
  for (std::size_t k = 0; k < pops.time_grid.size(); ++k) {
    const double noise = pops.per_noise_mode[k];
    const double ratio = noise > 0.0 ? pops.collective[k] / noise : HUGE_VAL;
    t.rows.push_back({num(pops.time_grid[k]), num(pops.collective[k]), num(noise),
                      k == 0 ? num(std::nan("")) : num(ratio)});
    trace_err = std::max(trace_err, std::abs(pops.trace[k] - 1.0));
  }
  const double first = pops.per_noise_mode.size() > 1 && pops.per_noise_mode[1] > 0.0
                           ? pops.collective[1] / pops.per_noise_mode[1]
                           : HUGE_VAL;
  const double analytic =
      r.gamma_prime > 0.0 ? (r.kappa_prime + r.gamma_prime) / r.gamma_prime : HUGE_VAL;
  rep.scalars = {{"kappa_prime", num(r.kappa_prime)},
                 {"gamma_prime", num(r.gamma_prime)},
                 {"rate_ratio", num(first)},
                 {"analytic_ratio", num(analytic)},
                 {"relative_error", num(std::isfinite(analytic) ? first / analytic - 1.0 : 0.0)},
                 {"max_trace_error", num(trace_err)},
                 {"min_population", num(pops.min_population)}};
  rep.tables.push_back(std::move(t));
  rep.summary.push_back("collective/noise rate ratio " + format_number(first, 6) +
                        " vs (kappa'+gamma')/gamma' " + format_number(analytic, 6));
  return rep;
}

Table chain_table(const std::vector<repeater::ChainLevel>& levels) {
  Table t{"chain", {"i", "L_i", "c_i", "p_i", "dF_i", "T_i"}, {}};
  for (const auto& l : levels) {
    t.rows.push_back({integer(l.level), num(l.length), num(l.vacuum_coeff), num(l.probability),
                      num(l.fidelity_deficit), num(l.time)});
  }
  return t;
}

Report chain(const Config& cfg) {
  const auto gen = repeater::generate_analytic(cfg.repeater);
  const auto levels = repeater::chain(cfg.repeater);
  Report rep{"chain", {}, {}, {}};
  rep.scalars = {{"eta_p", num(cfg.repeater.eta_p())},
                 {"click_prob", num(gen.click_prob)},
                 {"c0", num(gen.state.vacuum_coeff)},
                 {"T0_s", num(gen.time)},
                 {"Tn_s", num(levels.back().time)},
                 {"total_length", num(cfg.repeater.total_length())}};
  rep.tables.push_back(chain_table(levels));
  return rep;
}

Report scaling_cmd(const Config& cfg) {
  const double L = cfg.scaling.length;
  const double latt = cfg.repeater.attenuation_length;
  const double eta_s = cfg.repeater.swap_efficiency;
  const auto form = eta_s < 1.0 ? scaling::ClosedForm::general : scaling::ClosedForm::high_eta;
  Report rep{"scaling", {}, {}, {}};
  Table t{"scaling",
          {"L_over_Latt", "L0_over_Latt", "n", "ratio_compositional", "ratio_closed_form",
           "ratio_direct"},
          {}};
  const double direct = std::exp(L / latt);
  double best = HUGE_VAL;
  std::size_t best_n = 0;
  scaling::ScalingReport best_report;
  for (std::size_t n = 1; n <= cfg.scaling.max_levels; ++n) {
    repeater::RepeaterParams p = cfg.repeater;
    p.levels = n;
    p.segment_length = std::ldexp(L, -static_cast<int>(n));
    double comp = std::nan("");
    try {
      const auto r = scaling::total_time(p, cfg.scaling.target_infidelity,
                                         cfg.scaling.per_connection_dark, cfg.scaling.asym);
      comp = r.ratio;
      if (comp < best) {
        best = comp;
        best_n = n;
        best_report = r;
      }
    } catch (const InfeasibleError&) {
    }
    const double closed = scaling::closed_form_ratio(L, p.segment_length, latt, eta_s, form);
    t.rows.push_back({num(L / latt), num(p.segment_length / latt), integer(n), num(comp),
                      num(closed), num(direct)});
  }
  if (best_n == 0) throw InfeasibleError("no feasible level count for the scaling table");
  rep.scalars = {{"L_over_Latt", num(L / latt)},
                 {"target_infidelity", num(cfg.scaling.target_infidelity)},
                 {"best_n", integer(best_n)},
                 {"best_L0_over_Latt", num(std::ldexp(L, -static_cast<int>(best_n)) / latt)},
                 {"best_ratio", num(best)},
                 {"best_ratio_scaling_law", num(best_report.ratio_scaling_law)},
                 {"T_tot_s", num(best_report.t_tot)},
                 {"T_con_s", num(best_report.t_con)},
                 {"ratio_direct", num(direct)},
                 {"advantage", num(direct / best)},
                 {"dF_dark", num(best_report.budget.dark)},
                 {"dF_asym", num(best_report.budget.asym)}};
  rep.tables.push_back(std::move(t));
  return rep;
}

const char* objective_name(scaling::Objective o) {
  switch (o) {
    case scaling::Objective::compositional:
      return "compositional";
    case scaling::Objective::closed_form:
      return "closed_form";
    case scaling::Objective::power_law:
      return "power_law";
  }
  return "?";
}

Report optimize(const Config& cfg) {
  scaling::OptimizeOptions opt;
  opt.objective = cfg.scaling.objective;
  opt.target_infidelity = cfg.scaling.target_infidelity;
  opt.exponent = cfg.scaling.exponent;
  opt.max_levels = cfg.scaling.max_levels;
  const auto best = scaling::optimize_segment(cfg.repeater, cfg.scaling.length, opt);
  const double latt = cfg.repeater.attenuation_length;
  Report rep{"optimize", {}, {}, {}};
  rep.scalars = {{"objective", std::string(objective_name(opt.objective))},
                 {"L_over_Latt", num(cfg.scaling.length / latt)},
                 {"L0_star", num(best.segment / latt)},
                 {"n_star", integer(best.levels)},
                 {"ratio_star", num(best.ratio)}};
  if (!best.scan.empty()) {
    Table t{"scan", {"n", "L0_over_Latt", "ratio", "feasible"}, {}};
    for (const auto& pt : best.scan) {
      t.rows.push_back({integer(pt.levels), num(pt.segment / latt),
                        num(pt.feasible ? pt.ratio : std::nan("")), pt.feasible});
    }
    rep.tables.push_back(std::move(t));
  }
  return rep;
}

applications::CircuitOptions circuit(const Config& cfg) {
  applications::CircuitOptions o;
  o.phase = cfg.application.phase;
  o.dark_prob = cfg.application.dark_prob;
  return o;
}

Report chsh(const Config& cfg) {
  using std::numbers::pi;
  const auto& a = cfg.application;
  const auto opt = circuit(cfg);
  Report rep{"chsh", {}, {}, {}};
  Table t{"E_matrix", {"psi_left", "psi_right", "E", "coincidence_prob"}, {}};
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const applications::MeasurementSetting s{i * pi / 4, j * pi / 4};
      const auto c = applications::correlation(a.vacuum_coeff, s, a.app_efficiency, opt);
      t.rows.push_back({num(s.psi_left), num(s.psi_right), num(c.value), num(c.coincidence_prob)});
    }
  }
  const auto c0 = applications::correlation(a.vacuum_coeff, {0.0, 0.0}, a.app_efficiency, opt);
  rep.scalars = {{"chsh", num(applications::chsh_value(a.vacuum_coeff, a.app_efficiency, opt))},
                 {"tsirelson", num(2.0 * std::numbers::sqrt2)},
                 {"coincidence_prob", num(c0.coincidence_prob)},
                 {"c_n", num(a.vacuum_coeff)},
                 {"eta_a", num(a.app_efficiency)},
                 {"phase", num(a.phase)}};
  rep.tables.push_back(std::move(t));
  return rep;
}

Report teleport(const Config& cfg) {
  const auto& a = cfg.application;
  const applications::PolarizationQubit q{{a.d0_re, a.d0_im}, {a.d1_re, a.d1_im}};
  const auto r = applications::teleport(q, a.vacuum_coeff, a.app_efficiency, circuit(cfg));
  Report rep{"teleport", {}, {}, {}};
  rep.scalars = {{"success_prob", num(r.success_prob)},
                 {"success_prob_joint", num(r.success_prob_joint)},
                 {"accepted_prob", num(r.accepted_prob)},
                 {"output_fidelity", num(r.output_fidelity)},
                 {"pattern_D1I_D1L", num(r.pattern[0])},
                 {"pattern_D1I_D2L", num(r.pattern[1])},
                 {"pattern_D2I_D1L", num(r.pattern[2])},
                 {"pattern_D2I_D2L", num(r.pattern[3])},
                 {"c_n", num(a.vacuum_coeff)},
                 {"eta_a", num(a.app_efficiency)}};
  return rep;
}

Report ekert(const Config& cfg) {
  const auto& a = cfg.application;
  applications::EkertOptions opt;
  opt.circuit = circuit(cfg);
  opt.threads = cfg.trials.trial.threads;
  const auto k = applications::ekert_simulation(a.vacuum_coeff, a.app_efficiency, a.rounds,
                                                cfg.trials.trial.seed, opt);
  Report rep{"ekert", {}, {}, {}};
  rep.scalars = {{"key_length", integer(k.key_length)},
                 {"qber", num(k.qber)},
                 {"seed", integer(k.seed)},
                 {"rounds", integer(k.rounds)},
                 {"coincidences", integer(k.coincidences)},
                 {"errors", integer(k.errors)},
                 {"coincidence_rate", num(k.coincidence_rate)},
                 {"sifted_fraction", num(k.sifted_fraction)}};
  return rep;
}

Report montecarlo(const Config& cfg) {
  auto trial = cfg.trials.trial;
  trial.keep_samples = !cfg.trials.samples_path.empty();
  const auto e = monte_carlo::estimate(cfg.repeater, cfg.trials.level, trial);
  const auto& p = cfg.repeater;
  Report rep{"montecarlo", {}, {}, {}};
  rep.scalars = {
      {"params.excitation_prob", num(p.excitation_prob)},
      {"params.pulse_time", num(p.pulse_time)},
      {"params.local_efficiency", num(p.local_efficiency)},
      {"params.swap_efficiency", num(p.swap_efficiency)},
      {"params.dark_prob", num(p.dark_prob)},
      {"params.segment_length", num(p.segment_length)},
      {"params.attenuation_length", num(p.attenuation_length)},
      {"level", integer(cfg.trials.level)},
      {"policy", std::string(trial.policy == monte_carlo::Policy::parallel_max ? "parallel_max"
                                                                                : "serial_redo")},
      {"n_trials", integer(e.n_trials)},
      {"seed", integer(e.seed)},
      {"mean_s", num(e.mean)},
      {"stddev_s", num(e.stddev)},
      {"ci95_s", num(e.ci95)},
      {"analytic_Tn_s", num(e.analytic)},
      {"ratio", num(e.ratio)}};
  if (trial.keep_samples) {
    const std::string path = resolve_output_path(cfg.trials.samples_path);
    std::ofstream out(path);
    if (!out) throw ConfigError("trials.samples_path: cannot write '" + path + "'");
    Report samples{"montecarlo_samples", {}, {Table{"samples", {"trial", "time_s"}, {}}}, {}};
    for (std::size_t i = 0; i < e.samples.size(); ++i) {
      samples.tables[0].rows.push_back({integer(i), num(e.samples[i])});
    }
    write_report(samples, Format::csv, cfg.output.precision, out);
  }
  return rep;
}

using Command = Report (*)(const Config&);

const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table = {
      {"rates", rates},       {"dynamics", dynamics}, {"chain", chain},
      {"scaling", scaling_cmd}, {"optimize", optimize}, {"chsh", chsh},
      {"teleport", teleport}, {"ekert", ekert},       {"montecarlo", montecarlo}};
  return table;
}

std::string value_text(const Value& v, int precision) {
  return std::visit(
      [precision](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_number(x, precision);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return x;
        } else {
          return std::to_string(x);
        }
      },
      v);
}

nlohmann::json value_json(const Value& v, int precision) {
  return std::visit(
      [precision](const auto& x) -> nlohmann::json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(x)) return nullptr;
          return std::strtod(format_number(x, precision).c_str(), nullptr);
        } else {
          return x;
        }
      },
      v);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"rates",    "dynamics", "chain",
                                                 "scaling",  "optimize", "chsh",
                                                 "teleport", "ekert",    "montecarlo"};
  return names;
}

Report run_command(const std::string& name, const Config& config) {
  const auto it = commands().find(name);
  if (it == commands().end()) throw ConfigError("command: unknown subcommand '" + name + "'");
  return it->second(config);
}

Report run_sweep(const std::string& name, const Config& config, const std::string& sweep) {
  const auto eq = sweep.find('=');
  const auto c1 = sweep.find(':', eq == std::string::npos ? 0 : eq);
  const auto c2 = c1 == std::string::npos ? std::string::npos : sweep.find(':', c1 + 1);
  if (eq == std::string::npos || c1 == std::string::npos || c2 == std::string::npos) {
    throw ConfigError("sweep: expected key=a:b:steps, got '" + sweep + "'");
  }
  const std::string key = sweep.substr(0, eq);
  Config probe = config;
  probe.set(key, sweep.substr(eq + 1, c1 - eq - 1));
  probe.set(key, sweep.substr(c1 + 1, c2 - c1 - 1));
  double a = 0.0;
  double b = 0.0;
  long steps = 0;
  try {
    a = std::stod(sweep.substr(eq + 1, c1 - eq - 1));
    b = std::stod(sweep.substr(c1 + 1, c2 - c1 - 1));
    std::size_t used = 0;
    const std::string st = sweep.substr(c2 + 1);
    steps = std::stol(st, &used);
    if (used != st.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw ConfigError("sweep: malformed bounds in '" + sweep + "'");
  }
  if (steps < 1) throw ConfigError("sweep: steps must be >= 1");

  Report rep{name, {{"sweep_key", key}}, {}, {}};
  Table t{"sweep", {key}, {}};
  for (long k = 0; k < steps; ++k) {
    const double v = steps == 1 ? a : a + (b - a) * static_cast<double>(k) / double(steps - 1);
    Config c = config;
    c.set(key, format_number(v, 17));
    c.validate();
    const Report r = run_command(name, c);
    std::vector<Value> row{num(v)};
    for (const auto& [col, val] : r.scalars) {
      if (std::holds_alternative<std::string>(val)) continue;
      if (k == 0) t.columns.push_back(col);
      row.push_back(val);
    }
    t.rows.push_back(std::move(row));
  }
  rep.tables.push_back(std::move(t));
  return rep;
}

std::string format_number(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

void write_report(const Report& report, Format format, int precision, std::ostream& out) {
  if (format == Format::json) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = report.command;
    j["units"] = "lengths: L_att; times: s; rates: 1/s";
    for (const auto& [k, v] : report.scalars) j[k] = value_json(v, precision);
    for (const auto& t : report.tables) {
      auto rows = nlohmann::ordered_json::array();
      for (const auto& row : t.rows) {
        nlohmann::ordered_json o;
        for (std::size_t c = 0; c < t.columns.size(); ++c) o[t.columns[c]] = value_json(row[c], precision);
        rows.push_back(std::move(o));
      }
      j[t.name] = std::move(rows);
    }
    out << j.dump(2) << '\n';
    return;
  }

  out << "# schema_version=" << kSchemaVersion << " command=" << report.command
      << " units=lengths:L_att;times:s;rates:1/s\n";
  if (report.tables.empty()) {
    for (std::size_t i = 0; i < report.scalars.size(); ++i) {
      out << (i ? "," : "") << csv_field(report.scalars[i].first);
    }
    out << '\n';
    for (std::size_t i = 0; i < report.scalars.size(); ++i) {
      out << (i ? "," : "") << csv_field(value_text(report.scalars[i].second, precision));
    }
    out << '\n';
    return;
  }
  for (const auto& [k, v] : report.scalars) out << "# " << k << '=' << value_text(v, precision) << '\n';
  for (std::size_t ti = 0; ti < report.tables.size(); ++ti) {
    const auto& t = report.tables[ti];
    if (report.tables.size() > 1) out << (ti ? "\n" : "") << "# table=" << t.name << '\n';
    for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << csv_field(t.columns[c]);
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out << (c ? "," : "") << csv_field(value_text(row[c], precision));
      }
      out << '\n';
    }
  }
}

std::string resolve_output_path(const std::string& path) {
  if (path.empty()) return path;
  const char* dir = std::getenv("DLCZ_OUTPUT_DIR");
  const std::filesystem::path p(path);
  if (dir == nullptr || *dir == '\0' || p.is_absolute()) return path;
  return (std::filesystem::path(dir) / p).string();
}

int exit_code_for(const std::exception_ptr& error) {
  try {
    std::rethrow_exception(error);
  } catch (const ConfigError&) {
    return kConfig;
  } catch (const InfeasibleError&) {
    return kInfeasible;
  } catch (const NumericError&) {
    return kNumeric;
  } catch (const TruncationError&) {
    return kNumeric;
  } catch (const DimensionError&) {
    return kNumeric;
  } catch (const ImpossibleOutcomeError&) {
    return kNumeric;
  } catch (const std::invalid_argument&) {
    return kConfig;
  } catch (...) {
    return 1;
  }
}

}  // namespace dlcz::cli
