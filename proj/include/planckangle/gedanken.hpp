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

// The angular-measurement gedanken experiment in Planck units.
//
// A device of mass m and size r measures an angle twice, a time t apart. For a
// free rotor H = p^2/(2 m r^2) the two readings obey
//   |dphi(0)| |dphi(t)| >= t / (2 m r^2),
// so the larger of the two is at least sqrt(t / (2 m r^2)). Avoiding collapse
// needs r > m and causality needs t >= r; on that region the floor is minimized
// at m = r, t = r, giving 1 / (sqrt(2) r).

#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include "planckangle/constants.hpp"

namespace planckangle::gedanken {

/// Mass, size and duration in Planck units; all strictly positive and finite.
class DeviceConfig {
 public:
  DeviceConfig(double mass_m, double size_r, double duration_t)
      : mass_m_(mass_m), size_r_(size_r), duration_t_(duration_t) {
    auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!ok(mass_m) || !ok(size_r) || !ok(duration_t)) {
      throw std::domain_error("DeviceConfig: mass, size and duration must be positive and finite");
    }
  }

  double mass_m() const { return mass_m_; }
  double size_r() const { return size_r_; }
  double duration_t() const { return duration_t_; }

 private:
  double mass_m_;
  double size_r_;
  double duration_t_;
};

/// Order-one coefficients of the two constraints: r > hoop * m and t >= causality * r.
struct Constraints {
  double hoop_coefficient = 1.0;
  double causality_coefficient = 1.0;

  void validate() const {
    if (!(hoop_coefficient > 0.0) || !(causality_coefficient > 0.0) || !std::isfinite(hoop_coefficient) ||
        !std::isfinite(causality_coefficient)) {
      throw std::domain_error("Constraints: coefficients must be positive and finite");
    }
  }
};

struct FeasibilityReport {
  bool hoop_ok = false;
  bool causal_ok = false;
  bool feasible = false;
};

struct AngleBound {
  double delta_phi = 0.0;  // radians
  double argmin_m = 0.0;
  double argmin_t = 0.0;
};

/// sqrt(t / (2 m r^2)).
inline double uncertainty_floor(const DeviceConfig& cfg) {
  const double r = cfg.size_r();
  return std::sqrt(cfg.duration_t() / (2.0 * cfg.mass_m() * r * r));
}

inline FeasibilityReport check_feasible(const DeviceConfig& cfg, const Constraints& c = {}) {
  FeasibilityReport rep;
  rep.hoop_ok = cfg.size_r() > c.hoop_coefficient * cfg.mass_m();
  rep.causal_ok = cfg.duration_t() >= c.causality_coefficient * cfg.size_r();
  rep.feasible = rep.hoop_ok && rep.causal_ok;
  return rep;
}

/// Infimum of uncertainty_floor over the feasible region, reported at its
/// boundary point m = r / hoop, t = causality * r. With unit coefficients this
/// is 1 / (sqrt(2) r).
inline AngleBound min_angle(double r, const Constraints& c = {}) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::domain_error("min_angle: r must be > 0");
  c.validate();
  AngleBound b;
  b.argmin_m = r / c.hoop_coefficient;
  b.argmin_t = c.causality_coefficient * r;
  b.delta_phi = std::sqrt(b.argmin_t / (2.0 * b.argmin_m * r * r));
  return b;
}

/// The scan's mass grid starts this factor below min(M, r).
inline constexpr double kScanMassFloorRatio = 0.1;

/// Brute-force minimum of uncertainty_floor on log-spaced grids
///   m in [min(M, r) / 10, M], M = m_max_factor * r,
///   t in [r, t_max_factor * r],
/// skipping infeasible cells. Ties go to the smallest m, then the smallest t.
inline AngleBound min_angle_scan(double r, int m_grid, int t_grid, double m_max_factor,
                                 double t_max_factor, const Constraints& c = {}) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::domain_error("min_angle_scan: r must be > 0");
  if (m_grid < 16 || t_grid < 16) throw std::domain_error("min_angle_scan: grids must be >= 16");
  if (!(m_max_factor > 0.0) || !std::isfinite(m_max_factor)) {
    throw std::domain_error("min_angle_scan: m_max_factor must be > 0");
  }
  if (!(t_max_factor >= 1.0) || !std::isfinite(t_max_factor)) {
    throw std::domain_error("min_angle_scan: t_max_factor must be >= 1");
  }
  c.validate();

  const double m_top = m_max_factor * r;
  const double m_log_span = std::log(m_top / (kScanMassFloorRatio * std::min(m_top, r)));
  const double t_log_span = std::log(t_max_factor);

  AngleBound best{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  for (int i = 0; i < m_grid; ++i) {
    // i = m_grid - 1 is exactly m_top.
    const double m = m_top * std::exp(-m_log_span * (m_grid - 1 - i) / (m_grid - 1));
    for (int j = 0; j < t_grid; ++j) {
      // j = 0 is exactly r.
      const double t = r * std::exp(t_log_span * j / (t_grid - 1));
      const DeviceConfig cfg(m, r, t);
      if (!check_feasible(cfg, c).feasible) continue;
      const double v = uncertainty_floor(cfg);
      if (v < best.delta_phi) best = {v, m, t};
    }
  }
  if (!std::isfinite(best.delta_phi)) {
    throw std::domain_error("min_angle_scan: no feasible grid cell");
  }
  return best;
}

/// phi(t) = omega t + phi0, reduced to [0, 2 pi).
inline double classical_angle(double omega, double t, double phi0) {
  if (!std::isfinite(omega) || !std::isfinite(t) || !std::isfinite(phi0)) {
    throw std::domain_error("classical_angle: inputs must be finite");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(omega * t + phi0, two_pi);
  if (a < 0.0) a += two_pi;
  if (a >= two_pi) a = 0.0;
  return a;
}

// ---------------------------------------------------------------------------
// Units

enum class UnitKind { kLength, kTime, kMass, kAngle };

inline UnitKind parse_unit_kind(std::string_view name) {
  if (name == "length") return UnitKind::kLength;
  if (name == "time") return UnitKind::kTime;
  if (name == "mass") return UnitKind::kMass;
  if (name == "angle") return UnitKind::kAngle;
  throw std::domain_error("unknown unit kind '" + std::string(name) +
                          "' (expected length, time, mass or angle)");
}

/// SI size of one Planck unit of the given kind (1 for angles).
inline double planck_unit_si(UnitKind kind) {
  const auto& k = constants();
  switch (kind) {
    case UnitKind::kLength: return k.planck_length;
    case UnitKind::kTime: return k.planck_time();
    case UnitKind::kMass: return k.planck_mass();
    case UnitKind::kAngle: return 1.0;
  }
  throw std::domain_error("planck_unit_si: unknown unit kind");
}

inline double to_si(double value, UnitKind kind) {
  if (!std::isfinite(value)) throw std::domain_error("to_si: value must be finite");
  return value * planck_unit_si(kind);
}

inline double from_si(double value, UnitKind kind) {
  if (!std::isfinite(value)) throw std::domain_error("from_si: value must be finite");
  return value / planck_unit_si(kind);
}

}  // namespace planckangle::gedanken
