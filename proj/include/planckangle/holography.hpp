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

// Accumulated uncertainty of product states psi_1 x ... x psi_n.
//
// Each qubit is displaced by Hilbert-norm distance ~eps. The squared distance
// between the two product states is 2(1 - Re prod <psi_i|psi'_i>), which for
// small eps grows like n eps^2. Requiring it below a threshold of order one
// caps n at ~eps^-2; with eps ~ 1/r this is n ~ r^2.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <system_error>
#include <thread>
#include <vector>

#include "planckangle/bloch.hpp"

namespace planckangle::holography {

using bloch::Complex;
using bloch::PureQubit;
using bloch::Spinor;

enum class Magnitude { kFixed, kGaussian };
enum class PhaseConvention { kPhaseFree, kRandomPhase };

/// Per-qubit displacement law.
///
/// A displaced state is cos(a) psi + sin(a) u, with u a unit tangent vector to
/// the state sphere at psi and chordal distance 2 sin(a/2) equal to the drawn
/// magnitude. kPhaseFree keeps u orthogonal to i*psi, so the overlap is real
/// and the displacement is pure Bloch motion; kRandomPhase draws u uniformly
/// from the full three-dimensional tangent space, which includes global phase.
/// kFixed uses magnitude eps; kGaussian draws an isotropic Gaussian tangent
/// vector with E|v|^2 = eps^2.
struct PerturbationModel {
  double epsilon = 0.01;
  Magnitude mode = Magnitude::kFixed;
  PhaseConvention phase = PhaseConvention::kPhaseFree;

  void validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::domain_error("PerturbationModel: epsilon must lie in (0, 1)");
  }
};

/// Displaced spinor with global phase retained.
template <class Urbg>
Spinor perturb_spinor(const PureQubit& q, const PerturbationModel& model, Urbg& rng) {
  const Spinor psi = bloch::spinor(q);
  const Complex i{0.0, 1.0};
  const Spinor perp{-std::conj(psi[1]), std::conj(psi[0])};
  // Real-orthonormal tangent basis: i*psi (phase), perp and i*perp (Bloch motion).
  const Spinor t_phase{i * psi[0], i * psi[1]};
  const Spinor t_1 = perp;
  const Spinor t_2{i * perp[0], i * perp[1]};

  const int dims = model.phase == PhaseConvention::kPhaseFree ? 2 : 3;
  double c[3] = {0.0, 0.0, 0.0};  // components along t_1, t_2, t_phase
  double magnitude = model.epsilon;
  if (model.mode == Magnitude::kGaussian) {
    std::normal_distribution<double> g(0.0, model.epsilon / std::sqrt(static_cast<double>(dims)));
    double norm2 = 0.0;
    for (int k = 0; k < dims; ++k) {
      c[k] = g(rng);
      norm2 += c[k] * c[k];
    }
    magnitude = std::sqrt(norm2);
    if (magnitude == 0.0) return psi;
    for (int k = 0; k < dims; ++k) c[k] /= magnitude;
  } else if (dims == 2) {
    std::uniform_real_distribution<double> u(0.0, bloch::kTwoPi);
    const double beta = u(rng);
    c[0] = std::cos(beta);
    c[1] = std::sin(beta);
  } else {
    std::uniform_real_distribution<double> uz(-1.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, bloch::kTwoPi);
    const double z = uz(rng);
    const double beta = u(rng);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    c[0] = rho * std::cos(beta);
    c[1] = rho * std::sin(beta);
    c[2] = z;
  }
  const double alpha = 2.0 * std::asin(std::min(magnitude, 2.0) / 2.0);
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  Spinor out;
  for (int k = 0; k < 2; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    out[uk] = ca * psi[uk] + sa * (c[0] * t_1[uk] + c[1] * t_2[uk] + c[2] * t_phase[uk]);
  }
  return out;
}

/// Displaced state as a ray. In kFixed/kPhaseFree mode hilbert_distance(q, result) = eps.
template <class Urbg>
PureQubit perturb(const PureQubit& q, const PerturbationModel& model, Urbg& rng) {
  return bloch::from_spinor(perturb_spinor(q, model, rng));
}

// ---------------------------------------------------------------------------
// Composite distance

/// 2(1 - Re prod overlaps), with the product accumulated in log space so it
/// neither underflows nor loses the small-distance digits.
inline double composite_distance_sq_from_overlaps(std::span<const Complex> overlaps) {
  double log_mag = 0.0;
  double phase = 0.0;
  for (const Complex& o : overlaps) {
    const double m = std::abs(o);
    if (m == 0.0) return 2.0;
    log_mag += std::log(m);
    phase += std::arg(o);
  }
  const double s = std::sin(phase / 2.0);
  const double one_minus_re = -std::expm1(log_mag) + std::exp(log_mag) * 2.0 * s * s;
  return std::clamp(2.0 * one_minus_re, 0.0, 4.0);
}

/// |Psi - Psi'|^2 for product states given qubit by qubit, global phases kept.
inline double composite_distance_sq(std::span<const Spinor> a, std::span<const Spinor> b) {
  if (a.size() != b.size() || a.empty()) {
    throw std::domain_error("composite_distance_sq: lists must be non-empty and of equal length");
  }
  std::vector<Complex> o(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) o[i] = bloch::inner(a[i], b[i]);
  return composite_distance_sq_from_overlaps(o);
}

/// Same, for canonical representatives (no phase minimization).
inline double composite_distance_sq(std::span<const PureQubit> a, std::span<const PureQubit> b) {
  if (a.size() != b.size() || a.empty()) {
    throw std::domain_error("composite_distance_sq: lists must be non-empty and of equal length");
  }
  std::vector<Complex> o(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) o[i] = bloch::overlap(a[i], b[i]);
  return composite_distance_sq_from_overlaps(o);
}

/// Exact E|Psi - Psi'|^2 = 2(1 - (1 - eps^2/2)^n) for independent qubits whose
/// overlaps have mean 1 - eps^2/2 (every model above); ~ n eps^2 for n eps^2 << 1.
inline double expected_distance_sq(std::uint64_t n, double epsilon) {
  return -2.0 * std::expm1(static_cast<double>(n) * std::log1p(-epsilon * epsilon / 2.0));
}

// ---------------------------------------------------------------------------
// Monte Carlo

struct McResult {
  std::uint64_t n_qubits = 0;
  double epsilon = 0.0;
  std::uint64_t trials = 0;
  double mean_dist_sq = 0.0;
  double std_error = 0.0;
  std::uint64_t seed = 0;
};

/// Generator for one trial, a pure function of (seed, trial).
inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

/// One composite-distance sample: n Haar-random qubits, each displaced independently.
inline double mc_trial(std::uint64_t n, const PerturbationModel& model, std::mt19937_64& rng) {
  double log_mag = 0.0;
  double phase = 0.0;
  for (std::uint64_t k = 0; k < n; ++k) {
    const PureQubit base = bloch::random_qubit(rng);
    const Spinor s = bloch::spinor(base);
    const Spinor t = perturb_spinor(base, model, rng);
    const Complex o = bloch::inner(s, t);
    const double m = std::abs(o);
    if (m == 0.0) return 2.0;
    log_mag += std::log(m);
    phase += std::arg(o);
  }
  const double sh = std::sin(phase / 2.0);
  return std::clamp(2.0 * (-std::expm1(log_mag) + std::exp(log_mag) * 2.0 * sh * sh), 0.0, 4.0);
}

/// Mean of |Psi - Psi'|^2 over `trials` independent samples. Each trial draws
/// from trial_rng(seed, trial), so the result does not depend on threading.
inline McResult mc_expected_distance(std::uint64_t n, const PerturbationModel& model, std::uint64_t trials,
                                     std::uint64_t seed, unsigned threads = 0) {
  if (n < 1) throw std::domain_error("mc_expected_distance: n must be >= 1");
  if (trials < 100) throw std::domain_error("mc_expected_distance: trials must be >= 100");
  model.validate();

  std::vector<double> values(trials);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));
  auto work = [&](unsigned worker) {
    for (std::uint64_t tr = worker; tr < trials; tr += threads) {
      auto rng = trial_rng(seed, tr);
      values[tr] = mc_trial(n, model, rng);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(trials);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(trials - 1);

  McResult r;
  r.n_qubits = n;
  r.epsilon = model.epsilon;
  r.trials = trials;
  r.mean_dist_sq = mean;
  r.std_error = std::sqrt(var / static_cast<double>(trials));
  r.seed = seed;
  return r;
}

/// Largest n*eps^2 admitted by slope_fit.
inline constexpr double kLinearRegimeLimit = 0.1;

/// Least-squares slope of mean_dist_sq against n through the origin.
/// Needs >= 4 results with a common epsilon, n spanning a decade, and every
/// n*eps^2 <= 0.1.
inline double slope_fit(std::span<const McResult> results) {
  if (results.size() < 4) throw std::domain_error("slope_fit: needs at least 4 results");
  const double eps = results.front().epsilon;
  std::uint64_t n_min = results.front().n_qubits, n_max = n_min;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& r : results) {
    if (r.epsilon != eps) throw std::domain_error("slope_fit: results must share epsilon");
    const double n = static_cast<double>(r.n_qubits);
    if (n * eps * eps > kLinearRegimeLimit) {
      throw std::domain_error("slope_fit: n*eps^2 = " + std::to_string(n * eps * eps) + " exceeds 0.1 at n = " +
                              std::to_string(r.n_qubits));
    }
    n_min = std::min(n_min, r.n_qubits);
    n_max = std::max(n_max, r.n_qubits);
    sxy += n * r.mean_dist_sq;
    sxx += n * n;
  }
  if (n_max < 10 * n_min) throw std::domain_error("slope_fit: n values must span at least a decade");
  return sxy / sxx;
}

// ---------------------------------------------------------------------------
// Capacity

/// eps = epsilon_coefficient / r, and the aggregate squared distance must stay below threshold.
struct CapacityOptions {
  double epsilon_coefficient = 1.0;
  double threshold = 1.0;
};

/// floor(threshold * r^2 / coefficient^2); with defaults floor(r^2).
inline std::uint64_t holographic_capacity(double r, const CapacityOptions& opt = {}) {
  if (!(r >= 1.0) || !std::isfinite(r)) throw std::domain_error("holographic_capacity: r must be >= 1");
  if (!(opt.epsilon_coefficient > 0.0) || !(opt.threshold > 0.0)) {
    throw std::domain_error("holographic_capacity: coefficient and threshold must be > 0");
  }
  const double n = std::floor(opt.threshold * (r / opt.epsilon_coefficient) * (r / opt.epsilon_coefficient));
  if (!(n < 0x1p63)) throw std::domain_error("holographic_capacity: capacity exceeds 2^63");
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(n));
}

/// Per-qubit eps that keeps n qubits at the threshold: sqrt(threshold / n).
inline double required_epsilon(std::uint64_t n, const CapacityOptions& opt = {}) {
  if (n < 1) throw std::domain_error("required_epsilon: n must be >= 1");
  return std::sqrt(opt.threshold / static_cast<double>(n));
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr const char* kMcCsvHeader = "n,epsilon,trials,mean_dist_sq,std_error,seed";

/// Shortest decimal that reads back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, p);
}

inline void write_mc_csv(std::ostream& out, std::span<const McResult> results) {
  out << kMcCsvHeader << "\n";
  for (const auto& r : results) {
    out << r.n_qubits << ',' << format_double(r.epsilon) << ',' << r.trials << ',' << format_double(r.mean_dist_sq)
        << ',' << format_double(r.std_error) << ',' << r.seed << "\n";
  }
}

}  // namespace planckangle::holography
