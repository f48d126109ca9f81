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

// Experiment dispatch and report emission.

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "planckangle/bloch.hpp"
#include "planckangle/cli/config.hpp"
#include "planckangle/constants.hpp"
#include "planckangle/gedanken.hpp"
#include "planckangle/holography.hpp"
#include "planckangle/lattice.hpp"
#include "planckangle/sphere_grid.hpp"
#include "planckangle/version.hpp"

namespace planckangle::cli {

using Cell = std::variant<double, std::int64_t, std::uint64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct RunReport {
  ExperimentConfig config;
  Table table;
  std::vector<std::pair<std::string, Cell>> summary;
  double wall_time_s = 0.0;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) return holography::format_double(x);
        else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::string>) return x;
        else return std::to_string(x);
      },
      c);
}

inline nlohmann::ordered_json json_cell(const Cell& c) {
  return std::visit([](const auto& x) { return nlohmann::ordered_json(x); }, c);
}

// ---------------------------------------------------------------------------

inline void run_bound(const ExperimentConfig& c, RunReport& rep) {
  const double r = c.real("r");
  const gedanken::Constraints cons{c.real("hoop_coefficient"), c.real("causality_coefficient")};
  const gedanken::AngleBound analytic = gedanken::min_angle(r, cons);
  rep.table.columns = {"r", "m_grid", "t_grid", "analytic_delta_phi", "scan_delta_phi", "argmin_m", "argmin_t",
                       "relative_gap"};
  for (std::int64_t k = 0; k < c.integer("refinements"); ++k) {
    const auto mg = c.integer("m_grid") << k;
    const auto tg = c.integer("t_grid") << k;
    const auto scan = gedanken::min_angle_scan(r, static_cast<int>(mg), static_cast<int>(tg), c.real("m_max_factor"),
                                               c.real("t_max_factor"), cons);
    rep.table.rows.push_back({r, mg, tg, analytic.delta_phi, scan.delta_phi, scan.argmin_m, scan.argmin_t,
                              scan.delta_phi / analytic.delta_phi - 1.0});
  }
  rep.summary = {{"analytic_delta_phi", analytic.delta_phi},
                 {"analytic_argmin_m", analytic.argmin_m},
                 {"analytic_argmin_t", analytic.argmin_t},
                 {"r_si_m", gedanken::to_si(r, gedanken::UnitKind::kLength)}};
}

inline void run_distinguish(const ExperimentConfig& c, RunReport& rep) {
  using namespace bloch;
  const double eps =
      c.real("r") > 0.0 ? c.real("angle_coefficient") / (std::numbers::sqrt2 * c.real("r")) : c.real("grid_epsilon");
  const int mesh = static_cast<int>(c.integer("mesh"));
  const auto steps = c.integer("angle_steps");

  rep.table.columns = {"bloch_angle", "hilbert_distance", "trace_distance", "helstrom", "brute_force", "abs_diff"};
  const PureQubit north = from_angles(0.0, 0.0);
  double max_diff = 0.0;
  for (std::int64_t k = 0; k <= steps; ++k) {
    const double delta = kPi * static_cast<double>(k) / static_cast<double>(steps);
    const PureQubit q = from_angles(delta / 2.0, 0.0);
    const double h = helstrom_success(north, q);
    const double b = brute_force_distinguish(north, q, mesh);
    max_diff = std::max(max_diff, std::abs(h - b));
    rep.table.rows.push_back({delta, hilbert_distance(north, q), trace_distance(north, q), h, b, std::abs(h - b)});
  }

  const SphereGrid grid = build_grid(eps);
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
  std::uniform_real_distribution<double> turn(0.0, kTwoPi);
  const double angle = c.real("rotation_angle");
  std::int64_t unchanged = 0;
  for (std::int64_t s = 0; s < c.integer("demo_states"); ++s) {
    const PureQubit q = from_bloch(grid.point(pick(rng)));
    // Axis perpendicular to q: the displacement equals the rotation angle.
    const BlochVector b = bloch_vector(q);
    const BlochVector axis = rotate(orthogonal_axis(b), b, turn(rng));
    if (snapped_rotate(grid, q, axis, angle) == q) ++unchanged;
  }
  rep.summary = {{"grid_epsilon", eps},
                 {"grid_points", static_cast<std::uint64_t>(grid.size())},
                 {"mesh_diameter", grid.mesh_diameter()},
                 {"rotation_angle", angle},
                 {"demo_states", c.integer("demo_states")},
                 {"demo_unchanged_fraction",
                  static_cast<double>(unchanged) / static_cast<double>(c.integer("demo_states"))},
                 {"max_abs_diff", max_diff}};
}

inline void run_lattice(const ExperimentConfig& c, RunReport& rep) {
  using namespace lattice;
  const Lattice lat = make_lattice(static_cast<int>(c.integer("n_sites")), c.real("length"), Topology::kLinePeriodic);
  const double sigma = c.real("sigma");
  const double m = c.real("mass");
  const LatticeState psi0 = gaussian_packet(lat, 0.0, 0.0, sigma);

  rep.table.columns = {"t", "delta_x", "delta_p", "product", "analytic_delta_x", "wraparound"};
  const auto steps = c.integer("t_steps");
  for (std::int64_t k = 0; k <= steps; ++k) {
    const double t = c.real("t_max") * static_cast<double>(k) / static_cast<double>(steps);
    const Spreads s = spreads(lat, evolve_free(lat, psi0, m, t));
    const double analytic = std::sqrt(sigma * sigma + t * t / (4.0 * sigma * sigma * m * m));
    rep.table.rows.push_back({t, s.delta_x, s.delta_p, s.delta_x * s.delta_p, analytic, s.wraparound_warning});
  }

  std::mt19937_64 rng(c.seed);
  double min_product = std::numeric_limits<double>::infinity();
  for (std::int64_t k = 0; k < c.integer("random_states"); ++k) {
    min_product = std::min(min_product, uncertainty_product(lat, random_smooth_state(lat, rng)));
  }

  const auto [x, p] = build_xp(lat);
  const Complex interior = commutator_expectation(x, p, psi0);
  rep.summary = {{"random_states", c.integer("random_states")},
                 {"random_min_product", c.integer("random_states") > 0 ? min_product : 0.0},
                 {"gaussian_commutator_re", interior.real()},
                 {"gaussian_commutator_im", interior.imag()}};
  for (int n : {8, 64, 256}) {
    const Lattice small = make_lattice(n, static_cast<double>(n), Topology::kLinePeriodic);
    const auto [sx, sp] = build_xp(small);
    rep.summary.emplace_back("trace_abs_n" + std::to_string(n), std::abs(commutator_trace(sx, sp)));
    rep.summary.emplace_back("canonical_trace_im_n" + std::to_string(n), canonical_trace_reference(n).imag());
  }
}

/// Ordinary least squares y = a + b x, returning (b, R^2).
inline std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double b = sxy / sxx;
  const double r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return {b, r2};
}

inline void run_circle(const ExperimentConfig& c, RunReport& rep) {
  using namespace lattice;
  const double radius = c.real("radius");
  const double mass = c.real("mass");
  const ClassicalCircle circ = make_circle(mass, radius, c.real("p_phi"));
  const Lattice lat = make_lattice(static_cast<int>(c.integer("n_sites")), kTwoPi * radius, Topology::kCircle);
  const LatticeState psi = gaussian_packet(lat, c.real("center_angle") * radius, c.real("p_phi") / radius,
                                           c.real("sigma_angle") * radius);
  const double slope_expected = 1.0 / (mass * radius * radius);

  rep.table.columns = {"t", "commutator_re", "commutator_im", "expected_im", "relative_error"};
  std::vector<double> ts, ims;
  const auto steps = c.integer("t_steps");
  for (std::int64_t k = 0; k < steps; ++k) {
    const double t = c.real("t_min") + (c.real("t_max") - c.real("t_min")) * static_cast<double>(k) /
                                           static_cast<double>(steps - 1);
    const Complex v = circle_commutator_check(circ, lat, t, psi);
    const double expected = t * slope_expected;
    ts.push_back(t);
    ims.push_back(v.imag());
    rep.table.rows.push_back({t, v.real(), v.imag(), expected, std::abs(v.imag() - expected) / expected});
  }
  const auto [slope, r2] = linear_fit(ts, ims);
  rep.summary = {{"expected_slope", slope_expected},
                 {"fitted_slope", slope},
                 {"slope_relative_error", std::abs(slope - slope_expected) / slope_expected},
                 {"r_squared", r2}};
}

inline void run_holography(const ExperimentConfig& c, RunReport& rep) {
  using namespace holography;
  PerturbationModel model;
  model.epsilon = c.real("epsilon");
  model.mode = c.text("mode") == "gaussian" ? Magnitude::kGaussian : Magnitude::kFixed;
  model.phase = c.text("phase") == "random-phase" ? PhaseConvention::kRandomPhase : PhaseConvention::kPhaseFree;

  IntList ns = c.list("n_values");
  std::sort(ns.begin(), ns.end());
  std::vector<McResult> linear;
  for (auto n : ns) {
    linear.push_back(mc_expected_distance(static_cast<std::uint64_t>(n), model,
                                          static_cast<std::uint64_t>(c.integer("trials")), c.seed));
  }
  const double slope = slope_fit(linear);

  std::vector<McResult> all = linear;
  if (c.integer("saturation_n") > 0) {
    all.push_back(mc_expected_distance(static_cast<std::uint64_t>(c.integer("saturation_n")), model,
                                       static_cast<std::uint64_t>(c.integer("saturation_trials")), c.seed));
    std::stable_sort(all.begin(), all.end(),
                     [](const McResult& a, const McResult& b) { return a.n_qubits < b.n_qubits; });
  }
  rep.table.columns = {"n", "epsilon", "trials", "mean_dist_sq", "std_error", "seed"};
  for (const auto& r : all) {
    rep.table.rows.push_back({r.n_qubits, r.epsilon, r.trials, r.mean_dist_sq, r.std_error, r.seed});
  }
  rep.summary = {{"slope", slope}, {"slope_over_eps2", slope / (model.epsilon * model.epsilon)}};
  if (c.real("r") > 0.0) {
    const CapacityOptions opt{c.real("epsilon_coefficient"), c.real("threshold")};
    const auto cap = holographic_capacity(c.real("r"), opt);
    rep.summary.emplace_back("capacity", cap);
    rep.summary.emplace_back("required_epsilon", required_epsilon(cap, opt));
  }
}

inline void write_atomically(const std::filesystem::path& path, const std::string& bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << bytes;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move report into place at " + path.string());
  }
}

}  // namespace detail

/// Runs a validated configuration. Module errors propagate as exceptions.
inline RunReport run(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunReport rep;
  rep.config = config;
  switch (config.experiment) {
    case Experiment::kBound: detail::run_bound(config, rep); break;
    case Experiment::kDistinguish: detail::run_distinguish(config, rep); break;
    case Experiment::kLattice: detail::run_lattice(config, rep); break;
    case Experiment::kCircle: detail::run_circle(config, rep); break;
    case Experiment::kHolography: detail::run_holography(config, rep); break;
  }
  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

/// The results table alone; deterministic for a given config.
inline std::string render_table(const Table& t, OutputFormat format) {
  std::ostringstream o;
  if (format == OutputFormat::kCsv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) o << (i ? "," : "") << t.columns[i];
    o << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) o << (i ? "," : "") << detail::csv_cell(row[i]);
      o << "\n";
    }
  } else {
    for (const auto& row : t.rows) {
      nlohmann::ordered_json j;
      for (std::size_t i = 0; i < row.size(); ++i) j[t.columns[i]] = detail::json_cell(row[i]);
      o << j.dump() << "\n";
    }
  }
  return o.str();
}

/// Reproducibility block: config echo, versions, constants hash, summary, timing.
inline nlohmann::ordered_json metadata(const RunReport& rep, OutputFormat format) {
  nlohmann::ordered_json m;
  m["tool"] = "planckangle";
  m["tool_version"] = std::string(kToolVersion);
  m["constants_version"] = constants().version;
  m["constants_hash"] = constants_hash();
  m["experiment"] = std::string(experiment_name(rep.config.experiment));
  m["seed"] = rep.config.seed;
  m["output_format"] = std::string(format_name(format));
  m["config"] = echo(rep.config);
  nlohmann::ordered_json s = nlohmann::ordered_json::object();
  for (const auto& [k, v] : rep.summary) s[k] = detail::json_cell(v);
  m["summary"] = s;
  m["wall_time_s"] = rep.wall_time_s;
  return m;
}

/// Writes <path> (results table) and <path>.meta.json, each via temp file + rename.
inline void write_report(const RunReport& rep, const std::filesystem::path& path, OutputFormat format) {
  detail::write_atomically(path, render_table(rep.table, format));
  std::filesystem::path meta = path;
  meta += ".meta.json";
  detail::write_atomically(meta, metadata(rep, format).dump(2) + "\n");
}

}  // namespace planckangle::cli
