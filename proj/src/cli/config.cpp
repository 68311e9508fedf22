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

#include "dlcz/cli/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace dlcz::cli {

namespace {

using Setter = std::function<void(Config&, std::string_view)>;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_real(std::string_view text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
    throw std::invalid_argument("expected a finite number, got '" + s + "'");
  }
  return v;
}

std::uint64_t parse_count(std::string_view text) {
  const std::string s = trim(text);
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("expected a non-negative integer, got '" + s + "'");
  }
  return v;
}

struct Range {
  double lo;
  double hi;
  bool lo_open;
  bool hi_open;
};

constexpr double kInf = HUGE_VAL;
constexpr Range kAny{-kInf, kInf, false, false};
constexpr Range kPositive{0.0, kInf, true, false};
constexpr Range kNonNegative{0.0, kInf, false, false};
constexpr Range kUnitOpen{0.0, 1.0, true, true};
constexpr Range kUnitHalfOpen{0.0, 1.0, true, false};  // (0, 1]
constexpr Range kUnitClosedLow{0.0, 1.0, false, true};  // [0, 1)

void check(double v, Range r) {
  const bool lo_ok = r.lo_open ? v > r.lo : v >= r.lo;
  const bool hi_ok = r.hi_open ? v < r.hi : v <= r.hi;
  if (!lo_ok || !hi_ok) {
    std::ostringstream os;
    os << "value " << v << " outside " << (r.lo_open ? "(" : "[") << r.lo << ", " << r.hi
       << (r.hi_open ? ")" : "]");
    throw std::invalid_argument(os.str());
  }
}

template <class M>
Setter real(M member, Range r) {
  return [member, r](Config& c, std::string_view s) {
    const double v = parse_real(s);
    check(v, r);
    member(c) = v;
  };
}

template <class M>
Setter count(M member, std::uint64_t lo, std::uint64_t hi) {
  return [member, lo, hi](Config& c, std::string_view s) {
    const auto v = parse_count(s);
    if (v < lo || v > hi) {
      throw std::invalid_argument("integer " + std::to_string(v) + " outside [" +
                                  std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    using T = std::remove_reference_t<decltype(member(c))>;
    member(c) = static_cast<T>(v);
  };
}

#define FIELD(expr) [](Config& c) -> auto& { return c.expr; }

const std::map<std::string, Setter>& registry() {
  static const std::map<std::string, Setter> fields = [] {
    std::map<std::string, Setter> f;
    constexpr std::uint64_t kMaxCount = 1'000'000'000'000ULL;
    f["ensemble.atom_count"] = count(FIELD(ensemble.atom_count), 1, kMaxCount);
    f["ensemble.rabi"] = real(FIELD(ensemble.rabi), kAny);
    f["ensemble.detuning"] = [](Config& c, std::string_view s) {
      const double v = parse_real(s);
      if (v == 0.0) throw std::invalid_argument("must be nonzero");
      c.ensemble.detuning = v;
    };
    f["ensemble.coupling"] = real(FIELD(ensemble.coupling), kAny);
    f["ensemble.cavity_decay"] = real(FIELD(ensemble.cavity_decay), kPositive);
    f["ensemble.spont_rate"] = real(FIELD(ensemble.spont_rate), kNonNegative);
    f["ensemble.interaction_time"] = real(FIELD(ensemble.interaction_time), kNonNegative);

    f["free_space.density"] = real(FIELD(free_space.density), kPositive);
    f["free_space.length"] = real(FIELD(free_space.length), kPositive);
    f["free_space.wavenumber"] = real(FIELD(free_space.wavenumber), kPositive);

    f["dynamics.noise_modes"] = count(FIELD(dynamics.noise_modes), 1, 8);
    f["dynamics.cutoff"] = count(FIELD(dynamics.cutoff), 1, 10);
    f["dynamics.kappa_t_end"] = real(FIELD(dynamics.kappa_t_end), kPositive);
    f["dynamics.steps"] = count(FIELD(dynamics.steps), 1, 1'000'000);

    f["repeater.excitation_prob"] = real(FIELD(repeater.excitation_prob), kUnitOpen);
    f["repeater.pulse_time"] = real(FIELD(repeater.pulse_time), kPositive);
    f["repeater.local_efficiency"] = real(FIELD(repeater.local_efficiency), kUnitHalfOpen);
    f["repeater.swap_efficiency"] = real(FIELD(repeater.swap_efficiency), kUnitHalfOpen);
    f["repeater.app_efficiency"] = real(FIELD(repeater.app_efficiency), kUnitHalfOpen);
    f["repeater.dark_prob"] = real(FIELD(repeater.dark_prob), kUnitClosedLow);
    f["repeater.attenuation_length"] = real(FIELD(repeater.attenuation_length), kPositive);
    f["repeater.segment_length"] = real(FIELD(repeater.segment_length), kPositive);
    f["repeater.levels"] = count(FIELD(repeater.levels), 0, 60);
    f["repeater.channel_phase"] = real(FIELD(repeater.channel_phase), kAny);

    f["scaling.length"] = real(FIELD(scaling.length), kPositive);
    f["scaling.target_infidelity"] = real(FIELD(scaling.target_infidelity), kUnitHalfOpen);
    f["scaling.per_connection_dark"] = real(FIELD(scaling.per_connection_dark), kNonNegative);
    f["scaling.asym"] = real(FIELD(scaling.asym), kNonNegative);
    f["scaling.max_levels"] = count(FIELD(scaling.max_levels), 0, 60);
    f["scaling.exponent"] = real(FIELD(scaling.exponent), kPositive);
    f["scaling.objective"] = [](Config& c, std::string_view s) {
      const std::string v = trim(s);
      if (v == "compositional") {
        c.scaling.objective = scaling::Objective::compositional;
      } else if (v == "closed_form") {
        c.scaling.objective = scaling::Objective::closed_form;
      } else if (v == "power_law") {
        c.scaling.objective = scaling::Objective::power_law;
      } else {
        throw std::invalid_argument("expected compositional|closed_form|power_law, got '" + v +
                                    "'");
      }
    };

    f["application.vacuum_coeff"] = real(FIELD(application.vacuum_coeff), kNonNegative);
    f["application.app_efficiency"] = real(FIELD(application.app_efficiency), kUnitHalfOpen);
    f["application.phase"] = real(FIELD(application.phase), kAny);
    f["application.dark_prob"] = real(FIELD(application.dark_prob), kUnitClosedLow);
    f["application.rounds"] = count(FIELD(application.rounds), 1, kMaxCount);
    f["application.d0_re"] = real(FIELD(application.d0_re), kAny);
    f["application.d0_im"] = real(FIELD(application.d0_im), kAny);
    f["application.d1_re"] = real(FIELD(application.d1_re), kAny);
    f["application.d1_im"] = real(FIELD(application.d1_im), kAny);

    f["trials.seed"] = count(FIELD(trials.trial.seed), 0, ~std::uint64_t{0});
    f["trials.n_trials"] = count(FIELD(trials.trial.n_trials), 1, kMaxCount);
    f["trials.threads"] = count(FIELD(trials.trial.threads), 1, 1024);
    f["trials.level"] = count(FIELD(trials.level), 0, 20);
    f["trials.samples_path"] = [](Config& c, std::string_view s) {
      c.trials.samples_path = trim(s);
    };
    f["trials.policy"] = [](Config& c, std::string_view s) {
      const std::string v = trim(s);
      if (v == "parallel_max") {
        c.trials.trial.policy = monte_carlo::Policy::parallel_max;
      } else if (v == "serial_redo") {
        c.trials.trial.policy = monte_carlo::Policy::serial_redo;
      } else {
        throw std::invalid_argument("expected parallel_max|serial_redo, got '" + v + "'");
      }
    };

    f["output.format"] = [](Config& c, std::string_view s) {
      const std::string v = trim(s);
      if (v == "csv") {
        c.output.format = Format::csv;
      } else if (v == "json") {
        c.output.format = Format::json;
      } else {
        throw std::invalid_argument("expected csv|json, got '" + v + "'");
      }
    };
    f["output.path"] = [](Config& c, std::string_view s) { c.output.path = trim(s); };
    f["output.precision"] = count(FIELD(output.precision), 1, 17);
    return f;
  }();
  return fields;
}

#undef FIELD

template <class F>
void with_path(const std::string& path, F&& f) {
  try {
    f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace

void Config::set(std::string_view path, std::string_view value) {
  const auto& reg = registry();
  const auto it = reg.find(std::string(path));
  if (it == reg.end()) throw ConfigError(std::string(path) + ": unknown key");
  with_path(it->first, [&] { it->second(*this, value); });
}

void Config::validate() const {
  with_path("ensemble", [&] { ensemble.validate(); });
  with_path("repeater", [&] { repeater.validate(); });
  with_path("trials", [&] { trials.trial.validate(); });
  const double norm = application.d0_re * application.d0_re + application.d0_im * application.d0_im +
                      application.d1_re * application.d1_re + application.d1_im * application.d1_im;
  if (std::abs(norm - 1.0) > 1e-9) {
    throw ConfigError("application.d0_re: qubit amplitudes must have unit norm");
  }
  if (scaling.length <= repeater.attenuation_length) {
    throw ConfigError("scaling.length: must exceed repeater.attenuation_length");
  }
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, v] : registry()) keys.push_back(k);
  return keys;
}

Config parse_config(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  static const char* const kSections[] = {"ensemble", "free_space", "dynamics", "repeater",
                                          "scaling",  "application", "trials", "output"};
  Config cfg;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(section + ": key outside of any section");
    }
    if (std::find(std::begin(kSections), std::end(kSections), section) == std::end(kSections)) {
      throw ConfigError(section + ": unknown section");
    }
    for (const auto& [key, value] : body) {
      if (!value.empty()) throw ConfigError(section + "." + key + ": nested keys not allowed");
      cfg.set(section + "." + key, value.data());
    }
  }
  cfg.validate();
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace dlcz::cli
