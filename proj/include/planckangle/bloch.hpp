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

// Single-qubit states in the half-angle parameterization
//   |psi> = cos(theta)|+> + e^{i phi} sin(theta)|->,
// their Bloch-sphere geometry, and operational distinguishability measures.
//
// The Bloch polar angle is 2*theta. Every "Bloch angle" in this header is a
// great-circle angle on the sphere, never the state parameter theta.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace planckangle::bloch {

using Complex = std::complex<double>;

/// Two complex amplitudes in the (|+>, |->) basis, global phase included.
using Spinor = std::array<Complex, 2>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

class PureQubit;
PureQubit from_angles(double theta, double phi);

/// Canonical (theta, phi) pair: theta in [0, pi/2], phi in [0, 2pi), phi = 0 at theta = 0.
class PureQubit {
 public:
  /// The |+> state.
  PureQubit() = default;

  double theta() const { return theta_; }
  double phi() const { return phi_; }

  bool operator==(const PureQubit&) const = default;

 private:
  friend PureQubit from_angles(double theta, double phi);
  PureQubit(double theta, double phi) : theta_(theta), phi_(phi) {}

  double theta_ = 0.0;
  double phi_ = 0.0;
};

/// Unit 3-vector. Construction from components checks the norm.
class BlochVector {
 public:
  static constexpr double kNormTolerance = 1e-9;

  BlochVector() = default;

  /// Throws std::domain_error unless |(x, y, z)| is within 1e-9 of one.
  BlochVector(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTolerance) {
      throw std::domain_error("BlochVector: norm " + std::to_string(n) +
                              " is not within 1e-9 of 1");
    }
    x_ = x / n;
    y_ = y / n;
    z_ = z / n;
  }

  /// Direction of any non-zero finite vector.
  static BlochVector normalize(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!std::isfinite(n) || n == 0.0) {
      throw std::domain_error("BlochVector::normalize: zero or non-finite vector");
    }
    BlochVector v;
    v.x_ = x / n;
    v.y_ = y / n;
    v.z_ = z / n;
    return v;
  }

  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }
  std::array<double, 3> array() const { return {x_, y_, z_}; }

  double dot(const BlochVector& o) const { return x_ * o.x_ + y_ * o.y_ + z_ * o.z_; }

  bool operator==(const BlochVector&) const = default;

 private:
  friend BlochVector bloch_vector(const PureQubit& q);
  double x_ = 0.0;
  double y_ = 0.0;
  double z_ = 1.0;
};

// ---------------------------------------------------------------------------
// Construction and conversion

/// Reduces arbitrary finite angles to the canonical representative of the same ray.
inline PureQubit from_angles(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw std::domain_error("from_angles: theta and phi must be finite");
  }
  // theta -> theta + pi only flips the global sign.
  double t = std::fmod(theta, kPi);
  if (t < 0.0) t += kPi;
  double p = phi;
  if (t > kPi / 2) {
    t = kPi - t;
    p += kPi;
  }
  p = std::fmod(p, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  if (p >= kTwoPi) p = 0.0;
  if (t == 0.0) p = 0.0;
  return PureQubit(t, p);
}

inline BlochVector bloch_vector(const PureQubit& q) {
  const double s = std::sin(2.0 * q.theta());
  BlochVector v;
  v.x_ = s * std::cos(q.phi());
  v.y_ = s * std::sin(q.phi());
  v.z_ = std::cos(2.0 * q.theta());
  return v;
}

inline PureQubit from_bloch(const BlochVector& b) {
  const double rho = std::hypot(b.x(), b.y());
  const double theta = 0.5 * std::atan2(rho, b.z());
  const double phi = rho == 0.0 ? 0.0 : std::atan2(b.y(), b.x());
  return from_angles(theta, phi);
}

/// The canonical state vector (cos theta, e^{i phi} sin theta).
inline Spinor spinor(const PureQubit& q) {
  return {Complex(std::cos(q.theta()), 0.0), std::polar(std::sin(q.theta()), q.phi())};
}

/// Drops the global phase of a normalized spinor.
inline PureQubit from_spinor(const Spinor& s) {
  const double a = std::abs(s[0]);
  const double b = std::abs(s[1]);
  const double theta = std::atan2(b, a);
  const double phi = (a == 0.0 || b == 0.0) ? 0.0 : std::arg(s[1]) - std::arg(s[0]);
  return from_angles(theta, phi);
}

inline Complex inner(const Spinor& a, const Spinor& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

// ---------------------------------------------------------------------------
// Geometry and distinguishability

/// <q1|q2> between canonical representatives.
inline Complex overlap(const PureQubit& q1, const PureQubit& q2) {
  return std::cos(q1.theta()) * std::cos(q2.theta()) +
         std::polar(std::sin(q1.theta()) * std::sin(q2.theta()), q2.phi() - q1.phi());
}

inline double fidelity(const PureQubit& q1, const PureQubit& q2) {
  return std::clamp(std::norm(overlap(q1, q2)), 0.0, 1.0);
}

/// Great-circle angle between Bloch vectors, in [0, pi].
inline double bloch_angle(const BlochVector& a, const BlochVector& b) {
  const double cx = a.y() * b.z() - a.z() * b.y();
  const double cy = a.z() * b.x() - a.x() * b.z();
  const double cz = a.x() * b.y() - a.y() * b.x();
  return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), a.dot(b));
}

inline double bloch_angle(const PureQubit& q1, const PureQubit& q2) {
  return bloch_angle(bloch_vector(q1), bloch_vector(q2));
}

/// min over global phase of |psi1 - e^{ia} psi2| = sqrt(2 - 2 sqrt(F)) = 2 sin(delta/4).
/// Evaluated through the Bloch angle, which does not cancel for nearby states.
inline double hilbert_distance(const PureQubit& q1, const PureQubit& q2) {
  return 2.0 * std::sin(bloch_angle(q1, q2) / 4.0);
}

/// sqrt(1 - F) = sin(delta/2).
inline double trace_distance(const PureQubit& q1, const PureQubit& q2) {
  return std::sin(bloch_angle(q1, q2) / 2.0);
}

/// Optimal single-shot success probability for two equiprobable states.
inline double helstrom_success(const PureQubit& q1, const PureQubit& q2) {
  return 0.5 * (1.0 + trace_distance(q1, q2));
}

/// Strict upper bound on helstrom_success for any pair with hilbert_distance < eps.
/// Trace distance equals h*sqrt(1 - h^2/4) for Hilbert distance h, increasing on [0, sqrt 2].
inline double helstrom_ceiling(double eps) {
  if (!(eps > 0.0) || eps > std::sqrt(2.0)) {
    throw std::domain_error("helstrom_ceiling: eps must lie in (0, sqrt(2)]");
  }
  return 0.5 * (1.0 + eps * std::sqrt(1.0 - eps * eps / 4.0));
}

/// Brute-force search over two-outcome projective measurements.
///
/// The measurement axis ranges over polar angles pi*i/mesh (i = 0..mesh, both
/// poles included) and azimuths 2*pi*j/mesh. Doubling mesh refines the grid,
/// so the result never decreases under doubling. Outcome probabilities are
/// computed from spinor projections, not from the trace-distance formula.
inline double brute_force_distinguish(const PureQubit& q1, const PureQubit& q2, int mesh) {
  if (mesh < 8) throw std::domain_error("brute_force_distinguish: mesh must be >= 8");
  const Spinor s1 = spinor(q1);
  const Spinor s2 = spinor(q2);
  double best = 0.5;
  for (int i = 0; i <= mesh; ++i) {
    const double polar = kPi * i / mesh;
    const int n_azimuth = (i == 0 || i == mesh) ? 1 : mesh;
    for (int j = 0; j < n_azimuth; ++j) {
      const double azimuth = kTwoPi * j / mesh;
      const Spinor axis{Complex(std::cos(polar / 2), 0.0), std::polar(std::sin(polar / 2), azimuth)};
      const double p1 = std::norm(inner(axis, s1));
      const double p2 = std::norm(inner(axis, s2));
      // Guess q1 on "+" or guess q2 on "+".
      best = std::max(best, 0.5 * (p1 + (1.0 - p2)));
      best = std::max(best, 0.5 * ((1.0 - p1) + p2));
    }
  }
  return std::min(best, 1.0);
}

// ---------------------------------------------------------------------------
// Rotations

/// Rigid rotation of the Bloch vector about `axis` (Rodrigues).
inline BlochVector rotate(const BlochVector& v, const BlochVector& axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double kx = axis.x(), ky = axis.y(), kz = axis.z();
  const double kv = axis.dot(v);
  const double cx = ky * v.z() - kz * v.y();
  const double cy = kz * v.x() - kx * v.z();
  const double cz = kx * v.y() - ky * v.x();
  return BlochVector::normalize(v.x() * c + cx * s + kx * kv * (1 - c),
                                v.y() * c + cy * s + ky * kv * (1 - c),
                                v.z() * c + cz * s + kz * kv * (1 - c));
}

inline PureQubit rotate(const PureQubit& q, const BlochVector& axis, double angle) {
  if (!std::isfinite(angle)) throw std::domain_error("rotate: angle must be finite");
  if (angle == 0.0) return q;
  return from_bloch(rotate(bloch_vector(q), axis, angle));
}

/// Some unit vector orthogonal to v.
inline BlochVector orthogonal_axis(const BlochVector& v) {
  // Cross with the coordinate axis least aligned with v.
  const double ax = std::abs(v.x()), ay = std::abs(v.y()), az = std::abs(v.z());
  if (ax <= ay && ax <= az) return BlochVector::normalize(0.0, v.z(), -v.y());
  if (ay <= az) return BlochVector::normalize(-v.z(), 0.0, v.x());
  return BlochVector::normalize(v.y(), -v.x(), 0.0);
}

// ---------------------------------------------------------------------------
// Sampling

/// Uniform point on the sphere.
template <class Urbg>
BlochVector random_bloch_vector(Urbg& rng) {
  std::uniform_real_distribution<double> uz(-1.0, 1.0);
  std::uniform_real_distribution<double> uphi(0.0, kTwoPi);
  const double z = uz(rng);
  const double phi = uphi(rng);
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  return BlochVector::normalize(rho * std::cos(phi), rho * std::sin(phi), z);
}

/// Haar-random pure state.
template <class Urbg>
PureQubit random_qubit(Urbg& rng) {
  return from_bloch(random_bloch_vector(rng));
}

}  // namespace planckangle::bloch
