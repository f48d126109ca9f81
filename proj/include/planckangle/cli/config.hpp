// Copyright 2026 The planckangle Authors
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

// Experiment configuration files.
//
// Grammar (see docs/config.md):
//
//   file     := { line }
//   line     := blank | comment | header | entry
//   comment  := '#' any-text
//   header   := '[' experiment-name ']'
//   entry    := key '=' value
//
// Entries before the header are run-level keys (seed, output_path,
// output_format). Exactly one header selects the experiment; entries after it
// are that experiment's parameters. Lists are comma-separated.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

namespace planckangle::cli {

enum class Experiment { kBound, kDistinguish, kLattice, kCircle, kHolography };
enum class OutputFormat { kCsv, kJsonLines };

inline constexpr std::string_view kExperimentNames[] = {"bound", "distinguish", "lattice", "circle", "holography"};

inline std::string_view experiment_name(Experiment e) { return kExperimentNames[static_cast<int>(e)]; }

inline std::optional<Experiment> parse_experiment(std::string_view s) {
  for (int i = 0; i < 5; ++i) {
    if (kExperimentNames[i] == s) return static_cast<Experiment>(i);
  }
  return std::nullopt;
}

inline std::string_view format_name(OutputFormat f) { return f == OutputFormat::kCsv ? "csv" : "json-lines"; }

inline std::optional<OutputFormat> parse_format(std::string_view s) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json-lines") return OutputFormat::kJsonLines;
  return std::nullopt;
}

using IntList = std::vector<std::int64_t>;
using Value = std::variant<double, std::int64_t, IntList, std::string>;

struct ExperimentConfig {
  Experiment experiment = Experiment::kBound;
  std::map<std::string, Value> parameters;  // every schema key, defaults filled
  std::uint64_t seed = 42;
  std::string output_path;
  OutputFormat output_format = OutputFormat::kCsv;

  double real(const std::string& k) const { return std::get<double>(parameters.at(k)); }
  std::int64_t integer(const std::string& k) const { return std::get<std::int64_t>(parameters.at(k)); }
  const IntList& list(const std::string& k) const { return std::get<IntList>(parameters.at(k)); }
  const std::string& text(const std::string& k) const { return std::get<std::string>(parameters.at(k)); }
};

struct ParseOutcome {
  std::optional<ExperimentConfig> config;
  std::vector<std::string> errors;

  bool ok() const { return config.has_value(); }
};

namespace detail {

enum class Kind { kReal, kInteger, kIntList, kChoice };

struct ParamSpec {
  std::string name;
  Kind kind;
  std::optional<Value> fallback;  // nullopt: required
  // Returns an empty string when the value is admissible, else the admissible range.
  std::function<std::string(const Value&)> check;
  std::vector<std::string> choices;
};

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::optional<double> to_real(std::string_view s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

inline std::optional<std::int64_t> to_int(std::string_view s) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::function<std::string(const Value&)> real_range(double lo, double hi, bool lo_open, bool hi_open,
                                                            std::string text) {
  return [=](const Value& v) -> std::string {
    const double x = std::get<double>(v);
    const bool ok = (lo_open ? x > lo : x >= lo) && (hi_open ? x < hi : x <= hi);
    return ok ? std::string() : text;
  };
}

inline std::function<std::string(const Value&)> int_range(std::int64_t lo, std::int64_t hi, std::string text) {
  return [=](const Value& v) -> std::string {
    const auto x = std::get<std::int64_t>(v);
    return (x >= lo && x <= hi) ? std::string() : text;
  };
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline std::vector<ParamSpec> schema(Experiment e) {
  using std::nullopt;
  const double pi = std::numbers::pi;
  switch (e) {
    case Experiment::kBound:
      return {
          {"r", Kind::kReal, nullopt, real_range(0, 1e300, true, false, "r > 0"), {}},
          {"m_grid", Kind::kInteger, Value{std::int64_t{256}}, int_range(16, 8192, "16 <= m_grid <= 8192"), {}},
          {"t_grid", Kind::kInteger, Value{std::int64_t{256}}, int_range(16, 8192, "16 <= t_grid <= 8192"), {}},
          {"m_max_factor", Kind::kReal, Value{10.0}, real_range(0, 1e6, true, false, "0 < m_max_factor <= 1e6"), {}},
          {"t_max_factor", Kind::kReal, Value{10.0}, real_range(1, 1e6, false, false, "1 <= t_max_factor <= 1e6"), {}},
          {"hoop_coefficient", Kind::kReal, Value{1.0}, real_range(0, 1e6, true, false, "0 < hoop_coefficient <= 1e6"), {}},
          {"causality_coefficient", Kind::kReal, Value{1.0},
           real_range(0, 1e6, true, false, "0 < causality_coefficient <= 1e6"), {}},
          {"refinements", Kind::kInteger, Value{std::int64_t{3}}, int_range(1, 6, "1 <= refinements <= 6"), {}},
      };
    case Experiment::kDistinguish:
      return {
          {"grid_epsilon", Kind::kReal, Value{0.1}, real_range(0.01, pi, false, false, "0.01 <= grid_epsilon <= pi"), {}},
          {"r", Kind::kReal, Value{0.0}, real_range(0, 1e300, false, false, "r >= 0 (0 disables)"), {}},
          {"angle_coefficient", Kind::kReal, Value{1.0},
           real_range(0, 1e6, true, false, "0 < angle_coefficient <= 1e6"), {}},
          {"mesh", Kind::kInteger, Value{std::int64_t{256}}, int_range(8, 2048, "8 <= mesh <= 2048"), {}},
          {"angle_steps", Kind::kInteger, Value{std::int64_t{16}}, int_range(2, 10000, "2 <= angle_steps <= 10000"), {}},
          {"rotation_angle", Kind::kReal, Value{0.001}, real_range(0, pi, true, false, "0 < rotation_angle <= pi"), {}},
          {"demo_states", Kind::kInteger, Value{std::int64_t{1000}},
           int_range(1, 1000000, "1 <= demo_states <= 1000000"), {}},
      };
    case Experiment::kLattice:
      return {
          {"n_sites", Kind::kInteger, Value{std::int64_t{1024}},
           [](const Value& v) -> std::string {
             const auto n = std::get<std::int64_t>(v);
             return (n >= 64 && n <= 16384 && n % 2 == 0) ? "" : "even n_sites with 64 <= n_sites <= 16384";
           },
           {}},
          {"length", Kind::kReal, Value{100.0}, real_range(0, 1e12, true, false, "0 < length <= 1e12"), {}},
          {"sigma", Kind::kReal, Value{5.0}, real_range(0, kInf, true, true, "sigma > 0"), {}},
          {"mass", Kind::kReal, Value{1.0}, real_range(0, 1e12, true, false, "0 < mass <= 1e12"), {}},
          {"t_max", Kind::kReal, Value{50.0}, real_range(0, 1e12, false, false, "0 <= t_max <= 1e12"), {}},
          {"t_steps", Kind::kInteger, Value{std::int64_t{8}}, int_range(1, 10000, "1 <= t_steps <= 10000"), {}},
          {"random_states", Kind::kInteger, Value{std::int64_t{1000}},
           int_range(0, 100000, "0 <= random_states <= 100000"), {}},
      };
    case Experiment::kCircle:
      return {
          {"n_sites", Kind::kInteger, Value{std::int64_t{512}},
           [](const Value& v) -> std::string {
             const auto n = std::get<std::int64_t>(v);
             return (n >= 16 && n <= 16384 && n % 2 == 0) ? "" : "even n_sites with 16 <= n_sites <= 16384";
           },
           {}},
          {"mass", Kind::kReal, Value{100.0}, real_range(0, 1e12, true, false, "0 < mass <= 1e12"), {}},
          {"radius", Kind::kReal, Value{1.0}, real_range(0, 1e12, true, false, "0 < radius <= 1e12"), {}},
          {"sigma_angle", Kind::kReal, Value{0.1}, real_range(0, 0.4, true, false, "0 < sigma_angle <= 0.4"), {}},
          {"center_angle", Kind::kReal, Value{0.0}, real_range(-pi, pi, false, false, "-pi <= center_angle <= pi"), {}},
          {"p_phi", Kind::kReal, Value{0.0}, real_range(-1e12, 1e12, false, false, "|p_phi| <= 1e12"), {}},
          {"t_min", Kind::kReal, Value{0.25}, real_range(0, 1e12, true, false, "0 < t_min <= 1e12"), {}},
          {"t_max", Kind::kReal, Value{1.0}, real_range(0, 1e12, true, false, "0 < t_max <= 1e12"), {}},
          {"t_steps", Kind::kInteger, Value{std::int64_t{3}}, int_range(3, 1000, "3 <= t_steps <= 1000"), {}},
      };
    case Experiment::kHolography:
      return {
          {"epsilon", Kind::kReal, Value{0.01}, real_range(0, 1, true, true, "0 < epsilon < 1"), {}},
          {"n_values", Kind::kIntList, Value{IntList{10, 30, 100, 300, 1000}},
           [](const Value& v) -> std::string {
             for (auto n : std::get<IntList>(v)) {
               if (n < 1 || n > 10000000) return "every n in n_values within [1, 1e7]";
             }
             return "";
           },
           {}},
          {"trials", Kind::kInteger, Value{std::int64_t{10000}}, int_range(100, 10000000, "100 <= trials <= 1e7"), {}},
          {"mode", Kind::kChoice, Value{std::string("fixed")}, nullptr, {"fixed", "gaussian"}},
          {"phase", Kind::kChoice, Value{std::string("phase-free")}, nullptr, {"phase-free", "random-phase"}},
          {"saturation_n", Kind::kInteger, Value{std::int64_t{0}},
           int_range(0, 10000000, "0 <= saturation_n <= 1e7 (0 disables)"), {}},
          {"saturation_trials", Kind::kInteger, Value{std::int64_t{100}},
           int_range(100, 1000000, "100 <= saturation_trials <= 1e6"), {}},
          {"r", Kind::kReal, Value{0.0},
           [](const Value& v) -> std::string {
             const double r = std::get<double>(v);
             return (r == 0.0 || (r >= 1.0 && r <= 1e9)) ? "" : "r = 0 (disabled) or 1 <= r <= 1e9";
           },
           {}},
          {"epsilon_coefficient", Kind::kReal, Value{1.0},
           real_range(0, 1e6, true, false, "0 < epsilon_coefficient <= 1e6"), {}},
          {"threshold", Kind::kReal, Value{1.0}, real_range(0, 2, true, false, "0 < threshold <= 2"), {}},
      };
  }
  return {};
}

/// Constraints that involve more than one parameter; they mirror the runtime
/// preconditions of the operations each experiment calls.
inline void cross_check(const ExperimentConfig& c, std::vector<std::string>& errors) {
  switch (c.experiment) {
    case Experiment::kBound: {
      // Lowest scanned mass is min(m_max_factor, 1) * r / 10; it must clear the hoop constraint.
      if (!(c.real("hoop_coefficient") * std::min(c.real("m_max_factor"), 1.0) < 10.0)) {
        errors.push_back("bound: hoop_coefficient * min(m_max_factor, 1) must be < 10 (otherwise no feasible mass)");
      }
      if (!(c.real("t_max_factor") >= c.real("causality_coefficient"))) {
        errors.push_back("bound: t_max_factor must be >= causality_coefficient (otherwise no causal duration)");
      }
      const auto top = std::max(c.integer("m_grid"), c.integer("t_grid")) << (c.integer("refinements") - 1);
      if (top > 16384) errors.push_back("bound: grid * 2^(refinements-1) must be <= 16384");
      break;
    }
    case Experiment::kDistinguish: {
      if (c.real("r") > 0.0) {
        const double eps = c.real("angle_coefficient") / (std::numbers::sqrt2 * c.real("r"));
        if (!(eps >= 0.01 && eps <= std::numbers::pi)) {
          errors.push_back("distinguish: angle_coefficient / (sqrt(2) r) must lie in [0.01, pi]");
        }
      }
      break;
    }
    case Experiment::kLattice: {
      const double dx = c.real("length") / static_cast<double>(c.integer("n_sites"));
      const double s = c.real("sigma");
      if (!(s >= 4.0 * dx && s <= c.real("length") / 8.0)) {
        errors.push_back("lattice: sigma must lie in [4*length/n_sites, length/8] = [" + std::to_string(4.0 * dx) +
                         ", " + std::to_string(c.real("length") / 8.0) + "]");
      }
      break;
    }
    case Experiment::kCircle: {
      const double pi = std::numbers::pi;
      const double sigma = c.real("sigma_angle");
      const auto n = static_cast<double>(c.integer("n_sites"));
      if (!(sigma >= 4.0 * 2.0 * pi / n)) {
        errors.push_back("circle: sigma_angle must be >= 8*pi/n_sites = " + std::to_string(8.0 * pi / n));
      }
      if (!(c.real("t_max") > c.real("t_min"))) errors.push_back("circle: t_max must be > t_min");
      const double inertia = c.real("mass") * c.real("radius") * c.real("radius");
      const double spread = std::hypot(sigma, c.real("t_max") / (2.0 * sigma * inertia));
      if (!(spread <= 0.5)) {
        errors.push_back("circle: packet spread at t_max must stay <= 0.5 rad (got " + std::to_string(spread) + ")");
      }
      if (!(std::abs(c.real("p_phi")) * c.real("t_max") / inertia <= 1.0)) {
        errors.push_back("circle: drift |p_phi| t_max / (m r^2) must be <= 1 rad");
      }
      break;
    }
    case Experiment::kHolography: {
      const auto& ns = c.list("n_values");
      const double eps = c.real("epsilon");
      if (ns.size() < 4) errors.push_back("holography: n_values needs at least 4 entries");
      if (!ns.empty()) {
        const auto [lo, hi] = std::minmax_element(ns.begin(), ns.end());
        if (*hi < 10 * *lo) errors.push_back("holography: n_values must span at least a decade");
        if (static_cast<double>(*hi) * eps * eps > 0.1) {
          errors.push_back("holography: max(n_values) * epsilon^2 must be <= 0.1");
        }
        for (std::size_t i = 0; i < ns.size(); ++i) {
          for (std::size_t j = i + 1; j < ns.size(); ++j) {
            if (ns[i] == ns[j]) errors.push_back("holography: n_values must be distinct");
          }
        }
      }
      if (c.real("r") > 0.0) {
        const double k = c.real("epsilon_coefficient");
        if (!(c.real("threshold") * c.real("r") * c.real("r") / (k * k) < 0x1p63)) {
          errors.push_back("holography: capacity for r exceeds 2^63");
        }
      }
      break;
    }
  }
}

inline std::string join(std::span<const std::string_view> names) {
  std::string s;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) s += ", ";
    s += names[i];
  }
  return s;
}

}  // namespace detail

/// Validates a configuration document, reporting every failure found.
inline ParseOutcome parse_config(std::string_view text) {
  ParseOutcome out;
  auto& errors = out.errors;
  std::map<std::string, std::pair<std::string, int>> run_keys;
  std::map<std::string, std::pair<std::string, int>> params;
  std::optional<std::string> section;
  int sections = 0;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back(where + "malformed section header");
        continue;
      }
      ++sections;
      section = detail::trim(std::string_view(line).substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back(where + "expected 'key = value'");
      continue;
    }
    const std::string key = detail::trim(std::string_view(line).substr(0, eq));
    const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
    auto& target = section ? params : run_keys;
    if (target.count(key)) {
      errors.push_back(where + "duplicate key '" + key + "'");
      continue;
    }
    target[key] = {value, lineno};
  }

  ExperimentConfig cfg;
  bool have_experiment = false;
  if (sections == 0) {
    errors.push_back("missing experiment section header; expected one of [" + detail::join(kExperimentNames) + "]");
  } else if (sections > 1) {
    errors.push_back("exactly one experiment section is allowed, found " + std::to_string(sections));
  } else if (auto e = parse_experiment(*section)) {
    cfg.experiment = *e;
    have_experiment = true;
  } else {
    errors.push_back("unknown experiment '" + *section + "'; valid experiments are: " +
                     detail::join(kExperimentNames));
  }

  for (const auto& [key, vl] : run_keys) {
    const auto& [value, ln] = vl;
    const std::string where = "line " + std::to_string(ln) + ": ";
    if (key == "seed") {
      std::uint64_t s = 0;
      auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
      if (ec != std::errc() || p != value.data() + value.size()) {
        errors.push_back(where + "seed must be an unsigned 64-bit integer");
      } else {
        cfg.seed = s;
      }
    } else if (key == "output_path") {
      if (value.empty()) errors.push_back(where + "output_path must not be empty");
      cfg.output_path = value;
    } else if (key == "output_format") {
      if (auto f = parse_format(value)) {
        cfg.output_format = *f;
      } else {
        errors.push_back(where + "output_format must be csv or json-lines");
      }
    } else {
      errors.push_back(where + "unknown key '" + key + "' (run-level keys: seed, output_path, output_format)");
    }
  }

  if (have_experiment) {
    const auto fields = detail::schema(cfg.experiment);
    const std::string exp(experiment_name(cfg.experiment));
    for (const auto& [key, vl] : params) {
      bool known = false;
      for (const auto& p : fields) known = known || p.name == key;
      if (!known) {
        errors.push_back("line " + std::to_string(vl.second) + ": unknown key '" + key + "' for experiment " + exp);
      }
    }
    bool all_present = true;
    for (const auto& p : fields) {
      auto it = params.find(p.name);
      if (it == params.end()) {
        if (p.fallback) {
          cfg.parameters[p.name] = *p.fallback;
        } else {
          errors.push_back(exp + ": missing required parameter '" + p.name + "'");
          all_present = false;
        }
        continue;
      }
      const std::string& s = it->second.first;
      const std::string where = "line " + std::to_string(it->second.second) + ": ";
      std::optional<Value> v;
      switch (p.kind) {
        case detail::Kind::kReal:
          if (auto x = detail::to_real(s)) v = *x;
          else errors.push_back(where + p.name + " must be a finite real number");
          break;
        case detail::Kind::kInteger:
          if (auto x = detail::to_int(s)) v = *x;
          else errors.push_back(where + p.name + " must be an integer");
          break;
        case detail::Kind::kIntList: {
          IntList list;
          bool ok = true;
          std::string item;
          std::istringstream ls(s);
          while (std::getline(ls, item, ',')) {
            if (auto x = detail::to_int(detail::trim(item))) list.push_back(*x);
            else ok = false;
          }
          if (ok && !list.empty()) v = list;
          else errors.push_back(where + p.name + " must be a comma-separated list of integers");
          break;
        }
        case detail::Kind::kChoice: {
          bool ok = false;
          for (const auto& c : p.choices) ok = ok || c == s;
          if (ok) {
            v = s;
          } else {
            std::string opts;
            for (const auto& c : p.choices) opts += (opts.empty() ? "" : ", ") + c;
            errors.push_back(where + p.name + " must be one of: " + opts);
          }
          break;
        }
      }
      if (!v) {
        all_present = false;
        continue;
      }
      if (p.check) {
        const std::string range = p.check(*v);
        if (!range.empty()) {
          errors.push_back(where + p.name + " out of range; requires " + range);
          all_present = false;
          continue;
        }
      }
      cfg.parameters[p.name] = *v;
    }
    if (all_present) detail::cross_check(cfg, errors);
  }

  if (cfg.output_path.empty() && have_experiment) {
    cfg.output_path = std::string(experiment_name(cfg.experiment)) +
                      (cfg.output_format == OutputFormat::kCsv ? ".csv" : ".jsonl");
  }
  if (errors.empty()) out.config = std::move(cfg);
  return out;
}

/// Canonical text of a parsed config: run keys, header, then every parameter
/// (defaults included) in name order. parse_config(echo(c)) reproduces c.
inline std::string echo(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "seed = " << c.seed << "\n";
  o << "output_path = " << c.output_path << "\n";
  o << "output_format = " << format_name(c.output_format) << "\n";
  o << "[" << experiment_name(c.experiment) << "]\n";
  for (const auto& [k, v] : c.parameters) {
    o << k << " = ";
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, double>) {
            char buf[64];
            auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
            o << std::string_view(buf, static_cast<std::size_t>(p - buf));
          } else if constexpr (std::is_same_v<T, IntList>) {
            for (std::size_t i = 0; i < x.size(); ++i) o << (i ? "," : "") << x[i];
          } else {
            o << x;
          }
        },
        v);
    o << "\n";
  }
  return o.str();
}

}  // namespace planckangle::cli
