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

// Finite-dimensional quantum mechanics on a periodic 1-D lattice or a discrete
// circle.
//
// Site a sits at x_a = -L/2 + a*dx. Momentum is spectral: the discrete Fourier
// basis with grid k_j = 2*pi*j/L, j in [-N/2, N/2), the Nyquist mode assigned to
// -N/2. ħ = 1 throughout.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

namespace planckangle::lattice {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class Topology { kLinePeriodic, kCircle };

class Lattice {
 public:
  int n_sites() const { return n_sites_; }
  double length() const { return length_; }
  double spacing() const { return spacing_; }
  Topology topology() const { return topology_; }

  double position(int a) const { return -0.5 * length_ + a * spacing_; }

  /// Momentum carried by FFT bin f.
  double momentum(int f) const {
    const int j = f < n_sites_ / 2 ? f : f - n_sites_;
    return kTwoPi * j / length_;
  }

 private:
  friend Lattice make_lattice(int n_sites, double length, Topology topology);
  int n_sites_ = 0;
  double length_ = 0.0;
  double spacing_ = 0.0;
  Topology topology_ = Topology::kLinePeriodic;
};

/// n_sites must be even and >= 4; length > 0.
inline Lattice make_lattice(int n_sites, double length, Topology topology) {
  if (n_sites < 4 || n_sites % 2 != 0) {
    throw std::domain_error("make_lattice: n_sites must be even and >= 4, got " + std::to_string(n_sites));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::domain_error("make_lattice: length must be > 0");
  }
  Lattice lat;
  lat.n_sites_ = n_sites;
  lat.length_ = length;
  lat.spacing_ = length / n_sites;
  lat.topology_ = topology;
  return lat;
}

/// Unit-norm amplitude vector in the position basis.
class LatticeState {
 public:
  static constexpr double kNormTolerance = 1e-10;

  /// Throws unless the amplitudes already have unit norm.
  explicit LatticeState(Amplitudes amplitudes) : amplitudes_(std::move(amplitudes)) {
    const double n2 = norm_sq(amplitudes_);
    if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
      throw std::domain_error("LatticeState: squared norm " + std::to_string(n2) + " is not 1");
    }
  }

  static LatticeState normalized(Amplitudes amplitudes) {
    const double n2 = norm_sq(amplitudes);
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw std::domain_error("LatticeState: zero or non-finite vector");
    const double s = 1.0 / std::sqrt(n2);
    for (auto& c : amplitudes) c *= s;
    return LatticeState(std::move(amplitudes));
  }

  const Amplitudes& amplitudes() const { return amplitudes_; }
  std::size_t size() const { return amplitudes_.size(); }
  double norm() const { return std::sqrt(norm_sq(amplitudes_)); }

  static double norm_sq(const Amplitudes& v) {
    double s = 0.0;
    for (const auto& c : v) s += std::norm(c);
    return s;
  }

 private:
  Amplitudes amplitudes_;
};

struct OperatorMatrix {
  Eigen::MatrixXcd entries;
  std::string label;

  Eigen::Index dim() const { return entries.rows(); }

  /// max |A - A^dagger| over entries.
  double hermiticity_error() const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  }
};

struct ClassicalCircle {
  double mass_m = 1.0;
  double radius_r = 1.0;
  double omega = 0.0;  // p_phi / (m r^2) for the reference p_phi
};

inline ClassicalCircle make_circle(double mass_m, double radius_r, double p_phi = 0.0) {
  if (!(mass_m > 0.0) || !(radius_r > 0.0) || !std::isfinite(mass_m) || !std::isfinite(radius_r)) {
    throw std::domain_error("make_circle: mass and radius must be positive");
  }
  return {mass_m, radius_r, p_phi / (mass_m * radius_r * radius_r)};
}

/// H = p_phi^2 / (2 m r^2).
inline double hamiltonian(const ClassicalCircle& c, double p_phi) {
  return p_phi * p_phi / (2.0 * c.mass_m * c.radius_r * c.radius_r);
}

// ---------------------------------------------------------------------------

namespace detail {

inline void check_size(const Lattice& lat, const LatticeState& psi) {
  if (psi.size() != static_cast<std::size_t>(lat.n_sites())) {
    throw std::domain_error("state has " + std::to_string(psi.size()) + " sites, lattice has " +
                            std::to_string(lat.n_sites()));
  }
}

/// x wrapped into [-L/2, L/2).
inline double wrap(double x, double length) {
  double w = std::fmod(x + 0.5 * length, length);
  if (w < 0.0) w += length;
  return w - 0.5 * length;
}

inline Amplitudes fft_forward(const Amplitudes& in) {
  Eigen::FFT<double> fft;
  Amplitudes out;
  fft.fwd(out, in);
  return out;
}

inline Amplitudes fft_inverse(const Amplitudes& in) {
  Eigen::FFT<double> fft;
  Amplitudes out;
  fft.inv(out, in);
  return out;
}

/// Applies exp(-i t k^2 / (2 m)) in the Fourier basis; `scale` converts bin momenta.
inline Amplitudes kinetic_propagate(const Lattice& lat, const Amplitudes& psi, double mass, double t,
                                    double momentum_scale) {
  Amplitudes spectrum = fft_forward(psi);
  for (int f = 0; f < lat.n_sites(); ++f) {
    const double k = lat.momentum(f) * momentum_scale;
    spectrum[static_cast<std::size_t>(f)] *= std::polar(1.0, -t * k * k / (2.0 * mass));
  }
  return fft_inverse(spectrum);
}

}  // namespace detail

/// Gaussian exp(-(x - x0)^2 / (4 sigma^2) + i p0 x) on the nearest-image distance.
/// Requires 4*spacing <= sigma <= length/8.
inline LatticeState gaussian_packet(const Lattice& lat, double x0, double p0, double sigma) {
  const double lo = 4.0 * lat.spacing();
  const double hi = lat.length() / 8.0;
  if (!(sigma >= lo && sigma <= hi)) {
    throw std::domain_error("gaussian_packet: sigma " + std::to_string(sigma) + " outside admissible window [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  Amplitudes a(static_cast<std::size_t>(lat.n_sites()));
  for (int j = 0; j < lat.n_sites(); ++j) {
    const double d = detail::wrap(lat.position(j) - x0, lat.length());
    a[static_cast<std::size_t>(j)] = std::polar(std::exp(-d * d / (4.0 * sigma * sigma)), p0 * (x0 + d));
  }
  return LatticeState::normalized(std::move(a));
}

/// Free evolution exp(-i t p^2 / (2m)), diagonal in momentum.
inline LatticeState evolve_free(const Lattice& lat, const LatticeState& psi, double m, double t) {
  detail::check_size(lat, psi);
  if (!(m > 0.0)) throw std::domain_error("evolve_free: mass must be > 0");
  if (t == 0.0) return psi;
  // Unitary up to roundoff; renormalizing keeps the type invariant exact.
  return LatticeState::normalized(detail::kinetic_propagate(lat, psi.amplitudes(), m, t, 1.0));
}

/// <p^2 / 2m>.
inline double kinetic_energy(const Lattice& lat, const LatticeState& psi, double m) {
  detail::check_size(lat, psi);
  const Amplitudes spectrum = detail::fft_forward(psi.amplitudes());
  double e = 0.0, total = 0.0;
  for (int f = 0; f < lat.n_sites(); ++f) {
    const double w = std::norm(spectrum[static_cast<std::size_t>(f)]);
    const double k = lat.momentum(f);
    e += w * k * k;
    total += w;
  }
  return e / total / (2.0 * m);
}

struct Spreads {
  double delta_x = 0.0;
  double delta_p = 0.0;
  double circular_variance = 0.0;
  bool wraparound_warning = false;  // circular variance > 0.5
};

inline constexpr double kWrapWarningVariance = 0.5;

struct CircularStats {
  double mean_position = 0.0;
  double variance = 0.0;  // 1 - |R|
};

/// Circular mean and variance of |psi|^2 over the periodic coordinate.
inline CircularStats circular_stats(const Lattice& lat, const LatticeState& psi) {
  detail::check_size(lat, psi);
  Complex r{};
  for (int a = 0; a < lat.n_sites(); ++a) {
    const double angle = kTwoPi * (lat.position(a) + 0.5 * lat.length()) / lat.length();
    r += std::polar(std::norm(psi.amplitudes()[static_cast<std::size_t>(a)]), angle);
  }
  CircularStats s;
  s.variance = 1.0 - std::abs(r);
  s.mean_position = std::arg(r) * lat.length() / kTwoPi - 0.5 * lat.length();
  return s;
}

/// Position spread about the circular mean, momentum spread of the power spectrum.
inline Spreads spreads(const Lattice& lat, const LatticeState& psi) {
  detail::check_size(lat, psi);
  const auto& amp = psi.amplitudes();
  const CircularStats cs = circular_stats(lat, psi);

  Spreads out;
  out.circular_variance = cs.variance;
  out.wraparound_warning = cs.variance > kWrapWarningVariance;

  double mu = 0.0;
  std::vector<double> d(amp.size());
  for (int a = 0; a < lat.n_sites(); ++a) {
    const auto ua = static_cast<std::size_t>(a);
    d[ua] = detail::wrap(lat.position(a) - cs.mean_position, lat.length());
    mu += std::norm(amp[ua]) * d[ua];
  }
  double vx = 0.0;
  for (std::size_t a = 0; a < amp.size(); ++a) vx += std::norm(amp[a]) * (d[a] - mu) * (d[a] - mu);
  out.delta_x = std::sqrt(vx);

  const Amplitudes spectrum = detail::fft_forward(amp);
  double total = 0.0, mk = 0.0;
  for (int f = 0; f < lat.n_sites(); ++f) {
    const double w = std::norm(spectrum[static_cast<std::size_t>(f)]);
    total += w;
    mk += w * lat.momentum(f);
  }
  mk /= total;
  double vk = 0.0;
  for (int f = 0; f < lat.n_sites(); ++f) {
    const double dk = lat.momentum(f) - mk;
    vk += std::norm(spectrum[static_cast<std::size_t>(f)]) * dk * dk;
  }
  out.delta_p = std::sqrt(vk / total);
  return out;
}

/// delta_x * delta_p. Check spreads() for the wraparound flag.
inline double uncertainty_product(const Lattice& lat, const LatticeState& psi) {
  const Spreads s = spreads(lat, psi);
  return s.delta_x * s.delta_p;
}

// ---------------------------------------------------------------------------
// Operators

/// X = diag(x_a); P = F^dagger diag(k) F, which is circulant.
inline std::pair<OperatorMatrix, OperatorMatrix> build_xp(const Lattice& lat) {
  const int n = lat.n_sites();
  OperatorMatrix x{Eigen::MatrixXcd::Zero(n, n), "X"};
  for (int a = 0; a < n; ++a) x.entries(a, a) = lat.position(a);

  Amplitudes k(static_cast<std::size_t>(n));
  for (int f = 0; f < n; ++f) k[static_cast<std::size_t>(f)] = lat.momentum(f);
  // First column of the circulant: c[d] = (1/N) sum_f k_f e^{2 pi i f d / N}.
  const Amplitudes c = detail::fft_inverse(k);
  OperatorMatrix p{Eigen::MatrixXcd(n, n), "P"};
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) p.entries(a, b) = c[static_cast<std::size_t>(((a - b) % n + n) % n)];
  }
  return {std::move(x), std::move(p)};
}

/// trace(AB - BA). Zero in exact arithmetic for any finite matrices.
inline Complex commutator_trace(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.entries.rows() != a.entries.cols() || b.entries.rows() != b.entries.cols() || a.dim() != b.dim()) {
    throw std::domain_error("commutator_trace: operators must be square with equal dimension");
  }
  return (a.entries * b.entries - b.entries * a.entries).trace();
}

/// trace(i * I_n): what [x, p] = i would require.
inline Complex canonical_trace_reference(int n) { return {0.0, static_cast<double>(n)}; }

/// <psi| AB - BA |psi>.
inline Complex commutator_expectation(const OperatorMatrix& a, const OperatorMatrix& b, const LatticeState& psi) {
  if (a.dim() != b.dim() || static_cast<std::size_t>(a.dim()) != psi.size()) {
    throw std::domain_error("commutator_expectation: dimension mismatch");
  }
  const Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), static_cast<Eigen::Index>(psi.size()));
  const Eigen::VectorXcd ab = a.entries * (b.entries * v);
  const Eigen::VectorXcd ba = b.entries * (a.entries * v);
  return v.dot(ab) - v.dot(ba);  // Eigen's dot conjugates the left operand
}

/// Threshold on the packet's circular variance for the circle check.
inline constexpr double kCircleMaxVariance = 0.1;

/// Angle operator diagonal with the branch cut antipodal to `center`:
/// values in [center - pi, center + pi).
inline std::vector<double> angle_diagonal(const Lattice& lat, double center) {
  std::vector<double> phi(static_cast<std::size_t>(lat.n_sites()));
  for (int a = 0; a < lat.n_sites(); ++a) {
    const double alpha = kTwoPi * lat.position(a) / lat.length();
    phi[static_cast<std::size_t>(a)] = center + detail::wrap(alpha - center, kTwoPi);
  }
  return phi;
}

/// <psi| [Phi(0), Phi(t)] |psi> with Phi(t) = U^dagger Phi(0) U and
/// U = exp(-i t l^2 / (2 m r^2)) over integer angular momenta l. The continuum
/// rotor gives i t / (m r^2).
///
/// The lattice must be a circle of circumference 2 pi r, and psi must have
/// circular variance below 0.1 so the branch cut misses its support.
inline Complex circle_commutator_check(const ClassicalCircle& circ, const Lattice& lat, double t,
                                       const LatticeState& psi) {
  detail::check_size(lat, psi);
  if (lat.topology() != Topology::kCircle) {
    throw std::domain_error("circle_commutator_check: lattice topology must be circle");
  }
  if (std::abs(lat.length() - kTwoPi * circ.radius_r) > 1e-9 * lat.length()) {
    throw std::domain_error("circle_commutator_check: lattice length must equal 2*pi*radius");
  }
  const CircularStats cs = circular_stats(lat, psi);
  if (!(cs.variance < kCircleMaxVariance)) {
    throw std::domain_error("circle_commutator_check: packet circular variance " + std::to_string(cs.variance) +
                            " is not below 0.1");
  }
  if (t == 0.0) return {0.0, 0.0};

  const double center = kTwoPi * cs.mean_position / lat.length();
  const std::vector<double> phi = angle_diagonal(lat, center);
  const auto& amp = psi.amplitudes();
  const std::size_t n = amp.size();
  const double inertia = circ.mass_m * circ.radius_r * circ.radius_r;
  // Bin momenta k = 2*pi*j/L = j/r; angular momentum l = r*k.
  const double scale = circ.radius_r;

  Amplitudes phi_psi(n);
  for (std::size_t a = 0; a < n; ++a) phi_psi[a] = phi[a] * amp[a];
  Amplitudes w = detail::kinetic_propagate(lat, amp, inertia, t, scale);  // U psi
  for (std::size_t a = 0; a < n; ++a) w[a] *= phi[a];                     // Phi U psi
  w = detail::kinetic_propagate(lat, w, inertia, -t, scale);              // U^dag Phi U psi

  Complex first{};
  for (std::size_t a = 0; a < n; ++a) first += std::conj(phi_psi[a]) * w[a];
  // The second term of the commutator is the complex conjugate of the first.
  return {0.0, 2.0 * first.imag()};
}

// ---------------------------------------------------------------------------
// Random smooth states

/// Superposition of one to three Gaussians with widths in
/// [max(4 dx, L/64), L/16], centres within L/8 of the origin and momenta within
/// an eighth of the Nyquist band. Needs n_sites >= 64.
template <class Urbg>
LatticeState random_smooth_state(const Lattice& lat, Urbg& rng) {
  if (lat.n_sites() < 64) throw std::domain_error("random_smooth_state: needs n_sites >= 64");
  const double sigma_lo = std::max(4.0 * lat.spacing(), lat.length() / 64.0);
  const double sigma_hi = lat.length() / 16.0;
  const double p_max = (kPi / lat.spacing()) / 8.0;
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_real_distribution<double> usigma(sigma_lo, sigma_hi);
  std::uniform_real_distribution<double> ucenter(-lat.length() / 8.0, lat.length() / 8.0);
  std::uniform_real_distribution<double> umom(-p_max, p_max);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Amplitudes sum(static_cast<std::size_t>(lat.n_sites()), Complex{});
  const int k = count(rng);
  for (int c = 0; c < k; ++c) {
    const double sigma = usigma(rng);
    const double x0 = ucenter(rng);
    const double p0 = umom(rng);
    const double re = gauss(rng);
    const double im = gauss(rng);
    const Complex coeff{re, im};
    const LatticeState g = gaussian_packet(lat, x0, p0, sigma);
    for (std::size_t a = 0; a < sum.size(); ++a) sum[a] += coeff * g.amplitudes()[a];
  }
  return LatticeState::normalized(std::move(sum));
}

}  // namespace planckangle::lattice
