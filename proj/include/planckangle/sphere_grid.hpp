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

// Finite-resolution discretization of the Bloch sphere.
//
// A SphereGrid is a Fibonacci point set plus both poles. Its mesh_diameter is
// the covering radius: the largest Bloch angle from any point of the sphere to
// the nearest grid point. It is computed exactly as the largest circumradius
// over empty-circle (Delaunay) triangles, which are the Voronoi vertices.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "planckangle/bloch.hpp"

namespace planckangle::bloch {

namespace detail {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double dist_sq(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

/// Uniform-cell hash over the cube [-1, 1]^3 for nearest-neighbour queries.
class PointIndex {
 public:
  PointIndex() = default;

  PointIndex(const std::vector<Vec3>& points, double cell) : points_(points.data()), n_points_(points.size()) {
    cell_ = cell;
    cells_per_axis_ = std::max(1, static_cast<int>(std::ceil(2.0 / cell_)));
    order_.resize(points.size());
    std::vector<std::uint64_t> keys(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      order_[i] = static_cast<std::uint32_t>(i);
      keys[i] = key(coords(points[i]));
    }
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });
    for (std::size_t s = 0; s < order_.size();) {
      const std::uint64_t k = keys[order_[s]];
      std::size_t e = s;
      while (e < order_.size() && keys[order_[e]] == k) ++e;
      buckets_.emplace(k, std::make_pair(static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(e)));
      s = e;
    }
  }

  /// Index of the nearest point; ties go to the lowest index.
  std::size_t nearest(const Vec3& q) const {
    auto hits = nearest_k(q, 1);
    return hits.front().second;
  }

  /// The k nearest points as (squared distance, index), ascending, ties by index.
  std::vector<std::pair<double, std::size_t>> nearest_k(const Vec3& q, std::size_t k) const {
    const Vec3* pts = points_;
    k = std::min(k, n_points_);
    std::vector<std::pair<double, std::size_t>> best;
    best.reserve(k + 1);
    const auto c = coords(q);
    for (int s = 0; s <= cells_per_axis_; ++s) {
      for (int dx = -s; dx <= s; ++dx) {
        for (int dy = -s; dy <= s; ++dy) {
          for (int dz = -s; dz <= s; ++dz) {
            if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != s) continue;
            const std::array<int, 3> cc{c[0] + dx, c[1] + dy, c[2] + dz};
            if (!in_range(cc)) continue;
            auto it = buckets_.find(key(cc));
            if (it == buckets_.end()) continue;
            for (std::uint32_t o = it->second.first; o < it->second.second; ++o) {
              const std::size_t idx = order_[o];
              const std::pair<double, std::size_t> cand{dist_sq(q, pts[idx]), idx};
              if (best.size() < k || cand < best.back()) {
                best.insert(std::upper_bound(best.begin(), best.end(), cand), cand);
                if (best.size() > k) best.pop_back();
              }
            }
          }
        }
      }
      // Unvisited cells are at least s*cell away along some axis.
      const double reach = s * cell_;
      if (best.size() == k && best.back().first < reach * reach) break;
    }
    return best;
  }

 private:
  std::array<int, 3> coords(const Vec3& p) const {
    std::array<int, 3> c{};
    for (int a = 0; a < 3; ++a) {
      c[a] = std::clamp(static_cast<int>(std::floor((p[a] + 1.0) / cell_)), 0, cells_per_axis_ - 1);
    }
    return c;
  }
  bool in_range(const std::array<int, 3>& c) const {
    return c[0] >= 0 && c[1] >= 0 && c[2] >= 0 && c[0] < cells_per_axis_ && c[1] < cells_per_axis_ &&
           c[2] < cells_per_axis_;
  }
  std::uint64_t key(const std::array<int, 3>& c) const {
    const auto n = static_cast<std::uint64_t>(cells_per_axis_);
    return (static_cast<std::uint64_t>(c[0]) * n + static_cast<std::uint64_t>(c[1])) * n +
           static_cast<std::uint64_t>(c[2]);
  }

  // Points into the owner's vector buffer, which survives moves of the vector.
  const Vec3* points_ = nullptr;
  std::size_t n_points_ = 0;
  double cell_ = 1.0;
  int cells_per_axis_ = 1;
  std::vector<std::uint32_t> order_;
  std::unordered_map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>> buckets_;
};

/// Fibonacci sphere of n points followed by the north and south poles.
inline std::vector<Vec3> fibonacci_with_poles(std::size_t n) {
  std::vector<Vec3> pts;
  pts.reserve(n + 2);
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden_angle * static_cast<double>(i);
    pts.push_back({rho * std::cos(a), rho * std::sin(a), z});
  }
  pts.push_back({0.0, 0.0, 1.0});
  pts.push_back({0.0, 0.0, -1.0});
  return pts;
}

inline double default_cell(std::size_t n_points) {
  return std::min(2.0, 2.0 * std::sqrt(4.0 * kPi / static_cast<double>(n_points)));
}

/// Covering radius of a point set on the unit sphere (at least 4 points, not coplanar
/// through the origin). Candidate Voronoi vertices come from triples of mutual
/// near neighbours; a candidate counts only if its circumcap holds no other point.
inline double covering_radius(const std::vector<Vec3>& pts, const PointIndex& index) {
  constexpr std::size_t kNeighbours = 12;
  constexpr double kSlack = 1e-13;
  double min_cos = 1.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto nn = index.nearest_k(pts[i], kNeighbours + 1);
    std::vector<std::size_t> nb;
    for (const auto& [d, j] : nn) {
      if (j != i) nb.push_back(j);
    }
    for (std::size_t a = 0; a < nb.size(); ++a) {
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        const Vec3& p = pts[i];
        const Vec3& q = pts[nb[a]];
        const Vec3& r = pts[nb[b]];
        Vec3 n = cross({q[0] - p[0], q[1] - p[1], q[2] - p[2]}, {r[0] - p[0], r[1] - p[1], r[2] - p[2]});
        const double len = std::sqrt(dot(n, n));
        if (len < 1e-300) continue;
        for (int sign : {1, -1}) {
          const Vec3 v{sign * n[0] / len, sign * n[1] / len, sign * n[2] / len};
          const double c = dot(v, p);
          if (c >= min_cos) continue;  // cannot enlarge the maximum
          bool empty = true;
          for (std::size_t j : nb) {
            if (dot(v, pts[j]) > c + kSlack) {
              empty = false;
              break;
            }
          }
          if (!empty) continue;
          const std::size_t w = index.nearest(v);
          if (dot(v, pts[w]) > c + kSlack) continue;
          min_cos = c;
        }
      }
    }
  }
  return std::acos(std::clamp(min_cos, -1.0, 1.0));
}

}  // namespace detail

/// Grid constant: Fibonacci point count is ceil(kGridDensity / eps^2), enlarged
/// only if the measured covering radius still exceeds eps.
inline constexpr double kGridDensity = 7.0;

class SphereGrid {
 public:
  double epsilon() const { return epsilon_; }
  double mesh_diameter() const { return mesh_diameter_; }
  std::size_t size() const { return points_.size(); }

  BlochVector point(std::size_t i) const {
    const auto& p = points_.at(i);
    return BlochVector::normalize(p[0], p[1], p[2]);
  }

  /// Nearest grid point to v (Euclidean; lowest index on ties).
  std::size_t nearest_index(const BlochVector& v) const { return index_.nearest(v.array()); }

  SphereGrid(const SphereGrid& o) { *this = o; }
  SphereGrid& operator=(const SphereGrid& o) {
    if (this != &o) {
      epsilon_ = o.epsilon_;
      mesh_diameter_ = o.mesh_diameter_;
      points_ = o.points_;
      index_ = detail::PointIndex(points_, detail::default_cell(points_.size()));
    }
    return *this;
  }
  SphereGrid(SphereGrid&& o) noexcept { *this = std::move(o); }
  SphereGrid& operator=(SphereGrid&& o) noexcept {
    epsilon_ = o.epsilon_;
    mesh_diameter_ = o.mesh_diameter_;
    points_ = std::move(o.points_);
    index_ = std::move(o.index_);
    return *this;
  }

 private:
  friend SphereGrid build_grid(double epsilon);
  SphereGrid() = default;

  double epsilon_ = 0.0;
  double mesh_diameter_ = 0.0;
  std::vector<detail::Vec3> points_;
  detail::PointIndex index_;
};

/// Grid with mesh_diameter <= epsilon (Bloch-angle resolution).
inline SphereGrid build_grid(double epsilon) {
  if (!(epsilon > 0.0) || epsilon > kPi) {
    throw std::domain_error("build_grid: epsilon must lie in (0, pi]");
  }
  auto n = static_cast<std::size_t>(std::ceil(kGridDensity / (epsilon * epsilon)));
  n = std::max<std::size_t>(n, 4);
  for (;;) {
    SphereGrid g;
    g.epsilon_ = epsilon;
    g.points_ = detail::fibonacci_with_poles(n);
    g.index_ = detail::PointIndex(g.points_, detail::default_cell(g.points_.size()));
    g.mesh_diameter_ = detail::covering_radius(g.points_, g.index_);
    if (g.mesh_diameter_ <= epsilon) return g;
    n = n + n / 10 + 1;
  }
}

/// Nearest grid state to q.
inline PureQubit snap(const SphereGrid& grid, const PureQubit& q) {
  return from_bloch(grid.point(grid.nearest_index(bloch_vector(q))));
}

/// snap(rotate(q)). Rotations whose displacement stays inside q's grid cell
/// leave the state unchanged.
inline PureQubit snapped_rotate(const SphereGrid& grid, const PureQubit& q, const BlochVector& axis,
                                double angle) {
  return snap(grid, rotate(q, axis, angle));
}

}  // namespace planckangle::bloch
