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

// Boolean operations on double-precision planar sets and epsilon-thickening
// of Steiner trees. Ring clipping is delegated to Boost.Geometry; results are
// snapped (vertices closer than kSnap merged) and revalidated as PlanarSets.

#pragma once

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "connperim/planar_set.hpp"
#include "connperim/steiner/tree.hpp"

namespace connperim {

namespace bg = boost::geometry;

using BgPoint = bg::model::d2::point_xy<double>;
using BgPolygon = bg::model::polygon<BgPoint, /*ClockWise=*/false, /*Closed=*/true>;
using BgMultiPolygon = bg::model::multi_polygon<BgPolygon>;

inline constexpr double kSnap = 1e-9;
/// Largest angle subtended by one chord of a thickening cap.
inline constexpr double kCapChordDegrees = 5.0;

namespace detail {

inline BgPolygon::ring_type to_bg_ring(const std::vector<Point>& pts) {
  BgPolygon::ring_type r;
  for (const auto& p : pts) r.push_back(BgPoint(p.x, p.y));
  if (!pts.empty()) r.push_back(BgPoint(pts.front().x, pts.front().y));
  return r;
}

inline std::vector<Point> from_bg_ring(const BgPolygon::ring_type& r) {
  std::vector<Point> pts;
  for (const auto& p : r) {
    const Point q{p.x(), p.y()};
    if (!pts.empty() && distance(pts.back(), q) <= kSnap) continue;
    pts.push_back(q);
  }
  while (pts.size() >= 2 && distance(pts.front(), pts.back()) <= kSnap) pts.pop_back();
  return pts;
}

/// Drops vertices whose two edges are (numerically) collinear and backtrack.
inline std::vector<Point> drop_spikes(std::vector<Point> pts) {
  bool changed = true;
  while (changed && pts.size() >= 3) {
    changed = false;
    for (std::size_t k = 0; k < pts.size() && pts.size() >= 3; ++k) {
      const Point& p = pts[(k + pts.size() - 1) % pts.size()];
      const Point& c = pts[k];
      const Point& q = pts[(k + 1) % pts.size()];
      const Point u = c - p, v = q - c;
      const double scale = norm(u) * norm(v);
      if (scale == 0.0 || (std::abs(cross(u, v)) <= 1e-12 * scale && dot(u, v) < 0)) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(k));
        changed = true;
      }
    }
  }
  return pts;
}

/// Splits a ring that revisits a vertex into simple loops.
inline std::vector<std::vector<Point>> split_pinched(const std::vector<Point>& pts) {
  std::vector<std::vector<Point>> out;
  std::vector<Point> stack;
  for (const auto& p : pts) {
    auto it = std::find_if(stack.begin(), stack.end(),
                           [&](const Point& q) { return distance(p, q) <= kSnap; });
    if (it != stack.end()) {
      std::vector<Point> loop(it, stack.end());
      if (loop.size() >= 3) out.push_back(std::move(loop));
      stack.erase(it + 1, stack.end());
    } else {
      stack.push_back(p);
    }
  }
  if (stack.size() >= 3) out.push_back(std::move(stack));
  return out;
}

}  // namespace detail

inline BgMultiPolygon to_bg(const PlanarSet& s) {
  BgMultiPolygon mp;
  const auto& rings = s.rings();
  for (std::size_t o = 0; o < rings.size(); ++o) {
    if (rings[o].kind != RingKind::kOuter) continue;
    BgPolygon poly;
    poly.outer() = detail::to_bg_ring(rings[o].points);
    for (std::size_t k = 0; k < rings.size(); ++k)
      if (rings[k].kind == RingKind::kHole && rings[k].parent == o)
        poly.inners().push_back(detail::to_bg_ring(rings[k].points));
    mp.push_back(std::move(poly));
  }
  return mp;
}

inline PlanarSet from_bg(const BgMultiPolygon& mp) {
  std::vector<BasicRing<double>> rings;
  auto add = [&](const BgPolygon::ring_type& r) {
    auto pts = detail::drop_spikes(detail::from_bg_ring(r));
    for (auto& loop : detail::split_pinched(pts)) {
      loop = detail::drop_spikes(std::move(loop));
      if (loop.size() < 3) continue;
      const double a2 = ring_signed_area2(loop);
      if (std::abs(a2) <= kSnap * kSnap) continue;
      rings.push_back({std::move(loop), a2 > 0 ? RingKind::kOuter : RingKind::kHole, std::nullopt});
    }
  };
  for (const auto& poly : mp) {
    add(poly.outer());
    for (const auto& inner : poly.inners()) add(inner);
  }
  return PlanarSet::from_rings(std::move(rings));
}

inline PlanarSet set_union(const PlanarSet& a, const PlanarSet& b) {
  BgMultiPolygon out;
  bg::union_(to_bg(a), to_bg(b), out);
  return from_bg(out);
}

inline PlanarSet set_difference(const PlanarSet& a, const PlanarSet& b) {
  BgMultiPolygon out;
  bg::difference(to_bg(a), to_bg(b), out);
  return from_bg(out);
}

inline PlanarSet set_intersection(const PlanarSet& a, const PlanarSet& b) {
  BgMultiPolygon out;
  bg::intersection(to_bg(a), to_bg(b), out);
  return from_bg(out);
}

/// |A \ B| + |B \ A| computed on the polygons.
inline double symmetric_difference_area(const PlanarSet& a, const PlanarSet& b) {
  BgMultiPolygon ab, ba;
  const auto ga = to_bg(a), gb = to_bg(b);
  bg::difference(ga, gb, ab);
  bg::difference(gb, ga, ba);
  return bg::area(ab) + bg::area(ba);
}

/// Union of many sets, merged pairwise to keep intermediate rings small.
inline PlanarSet union_all(std::vector<BgMultiPolygon> parts) {
  if (parts.empty()) return {};
  while (parts.size() > 1) {
    std::vector<BgMultiPolygon> next;
    for (std::size_t k = 0; k + 1 < parts.size(); k += 2) {
      BgMultiPolygon u;
      bg::union_(parts[k], parts[k + 1], u);
      next.push_back(std::move(u));
    }
    if (parts.size() % 2) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  return from_bg(parts.front());
}

/// Counterclockwise polygon of the eps-neighbourhood of segment [a, b]:
/// a rectangle with chord-approximated half-disc caps.
inline std::vector<Point> capsule(const Point& a, const Point& b, double eps) {
  const int per_half = static_cast<int>(std::ceil(180.0 / kCapChordDegrees));
  std::vector<Point> pts;
  const double len = distance(a, b);
  if (len <= kSnap) {
    for (int k = 0; k < 2 * per_half; ++k) {
      const double t = std::numbers::pi * k / per_half;
      pts.push_back({a.x + eps * std::cos(t), a.y + eps * std::sin(t)});
    }
    return pts;
  }
  const double phi = std::atan2(b.y - a.y, b.x - a.x);
  for (int k = 0; k <= per_half; ++k) {
    const double t = phi - std::numbers::pi / 2 + std::numbers::pi * k / per_half;
    pts.push_back({b.x + eps * std::cos(t), b.y + eps * std::sin(t)});
  }
  for (int k = 0; k <= per_half; ++k) {
    const double t = phi + std::numbers::pi / 2 + std::numbers::pi * k / per_half;
    pts.push_back({a.x + eps * std::cos(t), a.y + eps * std::sin(t)});
  }
  return pts;
}

inline BgMultiPolygon capsule_bg(const Point& a, const Point& b, double eps) {
  BgPolygon poly;
  poly.outer() = detail::to_bg_ring(capsule(a, b, eps));
  return {poly};
}

/// Polygonal eps-neighbourhood N_eps(S) of a Steiner tree.
inline PlanarSet thicken(const SteinerTree& tree, double eps) {
  if (!(eps > 0.0)) throw ValidationError("bad_epsilon", "thickening radius must be positive");
  std::vector<BgMultiPolygon> parts;
  std::vector<int> degree(tree.vertices.size(), 0);
  for (const auto& e : tree.edges) {
    parts.push_back(capsule_bg(tree.vertices[e.a].p, tree.vertices[e.b].p, eps));
    ++degree[e.a];
    ++degree[e.b];
  }
  return union_all(std::move(parts));
}

}  // namespace connperim
