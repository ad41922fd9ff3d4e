// Copyright 2026 The connperim Authors.
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

// Reference sets used by the tests, the acceptance suite and `connperim check`.

#pragma once

#include <random>

#include "connperim/planar_set.hpp"

namespace connperim::fixtures {

inline std::vector<Point> rect(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

/// Regular n-gon inscribed in the circle (c, r), first vertex at angle phase.
inline std::vector<Point> regular_polygon(Point c, double r, int n, double phase = 0.0) {
  std::vector<Point> pts;
  for (int k = 0; k < n; ++k) {
    const double t = phase + 2.0 * std::numbers::pi * k / n;
    pts.push_back({c.x + r * std::cos(t), c.y + r * std::sin(t)});
  }
  return pts;
}

/// Two unit squares whose facing sides are `gap` apart.
inline PlanarSet two_squares(double gap = 3.0) {
  return PlanarSet::from_rings({{rect(0, 0, 1, 1), RingKind::kOuter, std::nullopt},
                                {rect(1 + gap, 0, 2 + gap, 1), RingKind::kOuter, std::nullopt}});
}

/// Two unit squares at distance `gap`; the left one has a hole close to its
/// right side, so both connectors attach at the same boundary point.
inline PlanarSet two_squares_with_hole(double gap = 3.0) {
  return PlanarSet::from_rings({{rect(0, 0, 1, 1), RingKind::kOuter, std::nullopt},
                                {rect(0.5, 0.3, 0.8, 0.7), RingKind::kHole, std::nullopt},
                                {rect(1 + gap, 0, 2 + gap, 1), RingKind::kOuter, std::nullopt}});
}

/// Concentric square annulus: outer side `outer`, hole side `inner`.
inline PlanarSet annulus(double outer = 3.0, double inner = 1.0) {
  const double a = (outer - inner) / 2.0;
  return PlanarSet::polygon(rect(0, 0, outer, outer), {rect(a, a, a + inner, a + inner)});
}

/// Three 64-gons of circumradius r centred on an equilateral triangle of side
/// s; each has a vertex pointing at the triangle centroid.
inline PlanarSet three_disks(double s = 4.0, double r = 1.0, int n = 64) {
  const Point c0{0, 0}, c1{s, 0}, c2{s / 2, s * std::sqrt(3.0) / 2};
  const Point g{(c0.x + c1.x + c2.x) / 3, (c0.y + c1.y + c2.y) / 3};
  std::vector<BasicRing<double>> rings;
  for (const Point& c : {c0, c1, c2}) {
    const double phase = std::atan2(g.y - c.y, g.x - c.x);
    rings.push_back({regular_polygon(c, r, n, phase), RingKind::kOuter, std::nullopt});
  }
  return PlanarSet::from_rings(std::move(rings));
}

/// Nesting pattern of the boundary-decomposition figure: a big component
/// with two holes, an island inside the second hole, and a separate disk.
template <class T = double>
BasicPlanarSet<T> figure_one() {
  auto r = [](double x0, double y0, double x1, double y1) {
    std::vector<Vec2<T>> pts;
    for (const auto& p : rect(x0, y0, x1, y1)) pts.push_back(from_double<T>(p));
    return pts;
  };
  std::vector<Vec2<T>> disk;
  for (const auto& p : std::vector<Point>{{14, 3}, {16, 1}, {18, 3}, {16, 5}}) disk.push_back(from_double<T>(p));
  return BasicPlanarSet<T>::from_rings({
      {r(0, 0, 12, 8), RingKind::kOuter, std::nullopt},
      {r(1, 1, 4, 7), RingKind::kHole, std::nullopt},
      {r(5, 1, 11, 7), RingKind::kHole, std::nullopt},
      {r(6, 2, 10, 6), RingKind::kOuter, std::nullopt},
      {std::move(disk), RingKind::kOuter, std::nullopt},
  });
}

/// Random convex polygon: n points on a circle at sorted random angles.
inline std::vector<Point> random_convex(std::mt19937_64& rng, Point c, double r) {
  std::uniform_int_distribution<int> nd(3, 8);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  const int n = nd(rng);
  std::vector<double> t(n);
  for (auto& v : t) v = ang(rng);
  std::sort(t.begin(), t.end());
  std::vector<Point> pts;
  for (double v : t) pts.push_back({c.x + r * std::cos(v), c.y + r * std::sin(v)});
  // Reject slivers by falling back to a regular polygon.
  if (std::abs(ring_signed_area2(pts)) < 0.5 * r * r) return regular_polygon(c, r, n, t[0]);
  return pts;
}

inline double ring_distance(const std::vector<Point>& a, const std::vector<Point>& b) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      best = std::min(best, segment_segment_distance(a[i], a[(i + 1) % a.size()], b[j],
                                                     b[(j + 1) % b.size()]));
  return best;
}

/// 2 to 5 disjoint convex regions in [0, 5]^2, pairwise at least `gap` apart.
inline PlanarSet random_regions(std::uint64_t seed, double gap = 0.75) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> kd(2, 5);
  std::uniform_real_distribution<double> pos(0.6, 4.4), rad(0.3, 0.6);
  const int k = kd(rng);
  std::vector<std::vector<Point>> polys;
  for (int attempt = 0; static_cast<int>(polys.size()) < k && attempt < 1000; ++attempt) {
    auto p = random_convex(rng, {pos(rng), pos(rng)}, rad(rng));
    bool ok = true;
    for (const auto& q : polys) {
      bool inside = locate_in_ring(p[0], q) != Location::kExterior ||
                    locate_in_ring(q[0], p) != Location::kExterior;
      if (inside || ring_distance(p, q) < gap) {
        ok = false;
        break;
      }
    }
    if (ok) polys.push_back(std::move(p));
  }
  std::vector<BasicRing<double>> rings;
  for (auto& p : polys) rings.push_back({std::move(p), RingKind::kOuter, std::nullopt});
  return PlanarSet::from_rings(std::move(rings));
}

/// Random nested ring family with small-integer coordinates: boxes split into
/// cells, each cell holding a ring of alternating kind (outer, hole, outer...)
/// shaped as an octagon or a rectangle.
template <class T = Rational>
BasicPlanarSet<T> random_nested(std::uint64_t seed, int max_depth = 3) {
  std::mt19937_64 rng(seed);
  std::vector<BasicRing<T>> rings;
  auto make_ring = [&](int x0, int y0, int x1, int y1, RingKind kind) {
    std::vector<Point> pts;
    std::uniform_int_distribution<int> coin(0, 1);
    const int c = std::min(x1 - x0, y1 - y0) / 4;
    if (coin(rng) && c >= 1) {
      pts = {{double(x0 + c), double(y0)}, {double(x1 - c), double(y0)}, {double(x1), double(y0 + c)},
             {double(x1), double(y1 - c)}, {double(x1 - c), double(y1)}, {double(x0 + c), double(y1)},
             {double(x0), double(y1 - c)}, {double(x0), double(y0 + c)}};
    } else {
      pts = rect(x0, y0, x1, y1);
    }
    std::vector<Vec2<T>> q;
    for (const auto& p : pts) q.push_back(from_double<T>(p));
    rings.push_back({std::move(q), kind, std::nullopt});
  };
  std::function<void(int, int, int, int, int, RingKind)> fill =
      [&](int x0, int y0, int x1, int y1, int depth, RingKind kind) {
        std::uniform_int_distribution<int> cnt(kind == RingKind::kOuter && depth == 0 ? 1 : 0, 2);
        const int nx = cnt(rng), ny = nx ? std::uniform_int_distribution<int>(1, 2)(rng) : 0;
        const int w = (x1 - x0) / std::max(nx, 1), hgt = (y1 - y0) / std::max(ny, 1);
        for (int a = 0; a < nx; ++a)
          for (int b = 0; b < ny; ++b) {
            const int cx0 = x0 + a * w + 1, cy0 = y0 + b * hgt + 1;
            const int cx1 = x0 + (a + 1) * w - 1, cy1 = y0 + (b + 1) * hgt - 1;
            if (cx1 - cx0 < 4 || cy1 - cy0 < 4) continue;
            make_ring(cx0, cy0, cx1, cy1, kind);
            if (depth + 1 < max_depth) {
              const int m = std::min(cx1 - cx0, cy1 - cy0) / 4 + 1;
              fill(cx0 + m, cy0 + m, cx1 - m, cy1 - m, depth + 1,
                   kind == RingKind::kOuter ? RingKind::kHole : RingKind::kOuter);
            }
          }
      };
  fill(0, 0, 240, 240, 0, RingKind::kOuter);
  std::shuffle(rings.begin(), rings.end(), rng);
  return BasicPlanarSet<T>::from_rings(std::move(rings));
}

}  // namespace connperim::fixtures
