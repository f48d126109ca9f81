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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "planckangle/bloch.hpp"
#include "planckangle/cli/experiments.hpp"
#include "planckangle/gedanken.hpp"
#include "planckangle/holography.hpp"
#include "planckangle/lattice.hpp"
#include "planckangle/sphere_grid.hpp"

using namespace planckangle;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Outcome minimal_angle() {
  Outcome o;
  for (double r : {1.0, 10.0, 100.0}) {
    const double a = gedanken::min_angle(r).delta_phi;
    const double s1 = gedanken::min_angle_scan(r, 256, 256, 10, 10).delta_phi;
    const double s2 = gedanken::min_angle_scan(r, 512, 512, 10, 10).delta_phi;
    o.require(std::abs(s1 / a - 1.0) <= 0.01, "r=" + fmt(r) + " gap " + fmt(s1 / a - 1.0));
    o.require(s1 >= a && s2 >= a, "scan below analytic at r=" + fmt(r));
    o.require(s2 - a <= 0.5 * (s1 - a), "refinement ratio " + fmt((s2 - a) / (s1 - a)) + " at r=" + fmt(r));
  }
  return o;
}

Outcome bound_is_bound() {
  Outcome o;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double r : {1.0, 10.0, 100.0, 1e35 / 1.6}) {
    const double floor = gedanken::min_angle(r).delta_phi;
    int violations = 0;
    for (int i = 0; i < 100000; ++i) {
      // m log-uniform over six decades below r, t log-uniform over six decades above r.
      const double m = r * std::pow(10.0, -6.0 * u(rng)) * (1.0 - 1e-12);
      const double t = r * std::pow(10.0, 6.0 * u(rng));
      const gedanken::DeviceConfig cfg(m, r, t);
      if (!gedanken::check_feasible(cfg).feasible) continue;
      if (gedanken::uncertainty_floor(cfg) < floor - 1e-12) ++violations;
    }
    o.require(violations == 0, std::to_string(violations) + " violations at r=" + fmt(r));
  }
  return o;
}

Outcome trace_obstruction() {
  Outcome o;
  for (int n : {8, 64, 256}) {
    const auto [x, p] = lattice::build_xp(lattice::make_lattice(n, static_cast<double>(n), lattice::Topology::kLinePeriodic));
    const double tr = std::abs(lattice::commutator_trace(x, p));
    o.require(tr < 1e-8, "|trace| " + fmt(tr) + " at N=" + std::to_string(n));
    o.require(lattice::canonical_trace_reference(n) == lattice::Complex(0.0, n), "reference at N=" + std::to_string(n));
  }
  return o;
}

Outcome uncertainty_persistence() {
  Outcome o;
  const auto lat = lattice::make_lattice(1024, 100.0, lattice::Topology::kLinePeriodic);
  const double g = lattice::uncertainty_product(lat, lattice::gaussian_packet(lat, 0.0, 0.0, 5.0));
  o.require(std::abs(g - 0.5) <= 0.005, "gaussian product " + fmt(g));
  std::mt19937_64 rng(4);
  double lo = 1e300;
  for (int i = 0; i < 1000; ++i) lo = std::min(lo, lattice::uncertainty_product(lat, lattice::random_smooth_state(lat, rng)));
  o.require(lo >= 0.49, "sweep minimum " + fmt(lo));
  if (o.ok) o.detail = "gaussian " + fmt(g) + ", sweep min " + fmt(lo);
  return o;
}

Outcome interior_canonicality() {
  Outcome o;
  const auto lat = lattice::make_lattice(1024, 100.0, lattice::Topology::kLinePeriodic);
  const auto [x, p] = lattice::build_xp(lat);
  double worst = 0.0;
  for (double sigma : {0.5, 2.0, 5.0, 6.25})  // |x0| + 6 sigma <= L/2
    for (double x0 : {-12.5, 0.0, 12.5})
      for (double p0 : {0.0, 2.0}) {
        const auto c = lattice::commutator_expectation(x, p, lattice::gaussian_packet(lat, x0, p0, sigma));
        worst = std::max(worst, std::abs(c - lattice::Complex(0.0, 1.0)));
      }
  o.require(worst < 0.01, "interior deviation " + fmt(worst));

  const double pi = std::numbers::pi;
  const auto circ = lattice::make_circle(100.0, 1.0);
  const auto ring = lattice::make_lattice(512, 2 * pi, lattice::Topology::kCircle);
  const auto psi = lattice::gaussian_packet(ring, 0.0, 0.0, 0.1);
  const std::vector<double> ts{0.25, 0.625, 1.0};
  std::vector<double> ys;
  for (double t : ts) {
    const double im = lattice::circle_commutator_check(circ, ring, t, psi).imag();
    const double expected = t / 100.0;
    o.require(std::abs(im / expected - 1.0) <= 0.02, "circle at t=" + fmt(t) + ": " + fmt(im));
    ys.push_back(im);
  }
  double mx = 0, my = 0, sxy = 0, sxx = 0, syy = 0;
  for (int i = 0; i < 3; ++i) mx += ts[i] / 3, my += ys[i] / 3;
  for (int i = 0; i < 3; ++i) {
    sxy += (ts[i] - mx) * (ys[i] - my);
    sxx += (ts[i] - mx) * (ts[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double r2 = sxy * sxy / (sxx * syy);
  o.require(r2 > 0.999, "R^2 " + fmt(r2));
  if (o.ok) o.detail = "interior max dev " + fmt(worst) + ", circle R^2 " + fmt(r2);
  return o;
}

Outcome composite_scaling() {
  Outcome o;
  const holography::PerturbationModel model{0.01, holography::Magnitude::kFixed, holography::PhaseConvention::kPhaseFree};
  std::vector<holography::McResult> rs;
  for (std::uint64_t n : {10, 30, 100, 300, 1000}) rs.push_back(holography::mc_expected_distance(n, model, 10000, 42));
  const double s = holography::slope_fit(rs) / (0.01 * 0.01);
  o.require(s >= 0.95 && s <= 1.05, "slope/eps^2 " + fmt(s));
  const auto sat = holography::mc_expected_distance(1000000, model, 100, 42);
  o.require(sat.mean_dist_sq >= 1.96 && sat.mean_dist_sq <= 2.04, "saturation mean " + fmt(sat.mean_dist_sq));
  if (o.ok) o.detail = "slope/eps^2 " + fmt(s) + ", saturation " + fmt(sat.mean_dist_sq);
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto a = bloch::random_qubit(rng), b = bloch::random_qubit(rng);
    worst = std::max(worst, std::abs(bloch::brute_force_distinguish(a, b, 256) - bloch::helstrom_success(a, b)));
  }
  o.require(worst <= 1e-3, "brute force deviation " + fmt(worst));
  const holography::PerturbationModel model{0.2, holography::Magnitude::kFixed, holography::PhaseConvention::kRandomPhase};
  double worst_t = 0.0;
  for (int n = 1; n <= 12; ++n) {
    std::vector<bloch::Spinor> a, b;
    for (int k = 0; k < n; ++k) {
      const auto q = bloch::random_qubit(rng);
      a.push_back(bloch::spinor(q));
      b.push_back(holography::perturb_spinor(q, model, rng));
    }
    const double fast = holography::composite_distance_sq(std::span<const bloch::Spinor>(a), std::span<const bloch::Spinor>(b));
    const double dense = testing::norm_distance_sq(testing::tensor_product(a), testing::tensor_product(b));
    worst_t = std::max(worst_t, std::abs(fast - dense));
  }
  o.require(worst_t <= 1e-10, "tensor deviation " + fmt(worst_t));
  if (o.ok) o.detail = "helstrom dev " + fmt(worst) + ", tensor dev " + fmt(worst_t);
  return o;
}

Outcome indistinguishability_demo() {
  Outcome o;
  const bloch::SphereGrid grid = bloch::build_grid(0.1);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
  std::uniform_real_distribution<double> turn(0.0, 2 * std::numbers::pi);
  int unchanged = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto q = bloch::from_bloch(grid.point(pick(rng)));
    const auto v = bloch::bloch_vector(q);
    const auto axis = bloch::rotate(bloch::orthogonal_axis(v), v, turn(rng));
    if (bloch::snapped_rotate(grid, q, axis, 0.001) == q) ++unchanged;
  }
  o.require(unchanged >= 990, std::to_string(unchanged) + "/1000 unchanged");
  if (o.ok) o.detail = std::to_string(unchanged) + "/1000 unchanged";
  return o;
}

Outcome determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "planckangle_acceptance";
  std::filesystem::create_directories(dir);
  const char* configs[] = {
      "seed = 11\n[bound]\nr = 10\n",
      "seed = 11\n[distinguish]\nmesh = 64\n",
      "seed = 11\n[lattice]\nrandom_states = 100\n",
      "seed = 11\n[circle]\n",
      "seed = 11\noutput_format = json-lines\n[holography]\ntrials = 1000\n",
  };
  for (const char* text : configs) {
    const auto parsed = cli::parse_config(text);
    if (!parsed.ok()) {
      o.require(false, parsed.errors.front());
      continue;
    }
    const auto& c = *parsed.config;
    std::string bytes[2];
    for (int k = 0; k < 2; ++k) {
      const auto path = dir / ("run" + std::to_string(k));
      cli::write_report(cli::run(c), path, c.output_format);
      std::ifstream in(path, std::ios::binary);
      std::ostringstream s;
      s << in.rdbuf();
      bytes[k] = s.str();
    }
    o.require(!bytes[0].empty() && bytes[0] == bytes[1], std::string(cli::experiment_name(c.experiment)) + " differs");
  }
  std::filesystem::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: no timing limit
    std::function<Outcome()> check;
  };
  const Criterion criteria[] = {
      {1, "minimal-angle reproduction", 1, minimal_angle},
      {2, "bound is a lower bound", 5, bound_is_bound},
      {3, "trace obstruction", 5, trace_obstruction},
      {4, "uncertainty persistence", 30, uncertainty_persistence},
      {5, "interior canonicality", 60, interior_canonicality},
      {6, "composite scaling", 120, composite_scaling},
      {7, "oracle equivalence", 60, oracle_equivalence},
      {8, "indistinguishability demo", 10, indistinguishability_demo},
      {9, "end-to-end determinism", 0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs > c.limit_s) o.require(false, "runtime over " + fmt(c.limit_s) + " s");
    if (!o.ok) ++failures;
    std::printf("criterion %d %-28s %s  %.2fs%s%s%s\n", c.id, c.name, o.ok ? "PASS" : "FAIL", secs,
                c.limit_s > 0 ? (" (limit " + fmt(c.limit_s) + "s)").c_str() : "", o.detail.empty() ? "" : "  ",
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
