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

#pragma once

#include <limits>
#include <numeric>

#include "connperim/planar_set.hpp"
#include "connperim/polygon_ops.hpp"

namespace connperim::steiner {

/// A closed terminal: a finite union of points and polygonal regions. Touching
/// inputs are merged into one Terminal before solving.
struct Terminal {
  int id = 0;                        // smallest original index among members
  std::vector<int> members;          // original indices
  std::vector<Point> points;         // point terminals
  std::vector<PlanarSet> parts;      // region terminals
  std::vector<std::pair<Point, Point>> segments;  // boundary of all parts
  BoundingBox box;

  void add_point(const Point& p) {
    points.push_back(p);
    box.add(p);
  }
  void add_part(const PlanarSet& s) {
    for (const auto& r : s.rings())
      for (std::size_t k = 0; k < r.points.size(); ++k)
        segments.push_back({r.points[k], r.points[(k + 1) % r.points.size()]});
    box.add(bounding_box(s));
    parts.push_back(s);
  }
  void absorb(const Terminal& o) {
    id = std::min(id, o.id);
    members.insert(members.end(), o.members.begin(), o.members.end());
    for (const auto& p : o.points) add_point(p);
    for (const auto& s : o.parts) add_part(s);
  }

  bool contains(const Point& x) const {
    for (const auto& s : parts)
      if (connperim::contains(s, x)) return true;
    for (const auto& p : points)
      if (p == x) return true;
    return false;
  }

  /// Nearest point of the closed terminal to x (x itself when inside).
  Point closest(const Point& x) const {
    if (contains(x)) return x;
    Point best = x;
    double bd = std::numeric_limits<double>::infinity();
    for (const auto& p : points) {
      const double d = distance(p, x);
      if (d < bd) bd = d, best = p;
    }
    for (const auto& [a, b] : segments) {
      const Point q = closest_on_segment(x, a, b);
      const double d = distance(q, x);
      if (d < bd) bd = d, best = q;
    }
    return best;
  }
  double distance_to(const Point& x) const { return distance(closest(x), x); }
};

/// Closest pair between segments; for parallel segments with overlapping
/// projections the pair at the middle of the overlap is returned and
/// `*centred` is set.
inline double segment_pair(const Point& a, const Point& b, const Point& c, const Point& d, Point& p,
                           Point& q, bool* centred = nullptr) {
  if (centred) *centred = false;
  const double dist = segment_segment_distance(a, b, c, d, &p, &q);
  const Point u = b - a, v = d - c;
  const double lu = norm(u), lv = norm(v);
  if (lu == 0.0 || lv == 0.0 || dist == 0.0) return dist;
  if (std::abs(cross(u, v)) > 1e-12 * lu * lv) return dist;
  const Point e{u.x / lu, u.y / lu};
  const double t0 = dot(c - a, e), t1 = dot(d - a, e);
  const double lo = std::max(0.0, std::min(t0, t1)), hi = std::min(lu, std::max(t0, t1));
  if (hi <= lo) return dist;
  const double t = 0.5 * (lo + hi);
  p = a + t * e;
  q = closest_on_segment(p, c, d);
  if (centred) *centred = true;
  return distance(p, q);
}

/// Distance between two terminals with a witness pair. Overlapping or nested
/// terminals give zero. Among equally near pairs, one centred on a parallel
/// overlap wins, so symmetric gaps attach symmetrically.
inline double terminal_distance(const Terminal& A, const Terminal& B, Point* pa = nullptr,
                                Point* pb = nullptr) {
  double best = std::numeric_limits<double>::infinity();
  bool best_centred = false;
  Point wa, wb;
  auto consider = [&](double d, const Point& x, const Point& y, bool centred = false) {
    const double tol = 1e-15 * std::max(1.0, best);
    if (std::isinf(best) || d < best - tol || (centred && !best_centred && d <= best + tol)) {
      best = d, wa = x, wb = y, best_centred = centred;
    }
  };
  for (const auto& p : A.points) consider(B.distance_to(p), p, B.closest(p));
  for (const auto& p : B.points) consider(A.distance_to(p), A.closest(p), p);
  for (const auto& s : A.parts)
    for (const auto& r : s.rings())
      if (B.contains(r.points[0])) consider(0.0, r.points[0], r.points[0]);
  for (const auto& s : B.parts)
    for (const auto& r : s.rings())
      if (A.contains(r.points[0])) consider(0.0, r.points[0], r.points[0]);
  for (const auto& [a, b] : A.segments)
    for (const auto& [c, d] : B.segments) {
      Point x, y;
      bool centred = false;
      const double dd = segment_pair(a, b, c, d, x, y, &centred);
      consider(dd, x, y, centred);
    }
  if (pa) *pa = wa;
  if (pb) *pb = wb;
  return best;
}

inline double terminal_scale(const std::vector<Terminal>& ts) {
  BoundingBox b;
  for (const auto& t : ts) b.add(t.box);
  if (b.empty()) return 1.0;
  return std::max({1.0, b.width(), b.height(), std::abs(b.lo.x), std::abs(b.lo.y),
                   std::abs(b.hi.x), std::abs(b.hi.y)});
}

/// Merges terminals at mutual distance zero. Region interiors must not
/// overlap; a positive-area intersection is a validation error.
inline std::vector<Terminal> merge_touching(std::vector<Terminal> ts) {
  const std::size_t n = ts.size();
  const double tol = 1e-12 * terminal_scale(ts);
  detail::DisjointSets ds(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (terminal_distance(ts[i], ts[j]) > tol) continue;
      for (const auto& a : ts[i].parts)
        for (const auto& b : ts[j].parts) {
          if (area(set_intersection(a, b)) > tol * tol) {
            throw ValidationError("regions_overlap", "terminal regions " + std::to_string(ts[i].id) +
                                                         " and " + std::to_string(ts[j].id) +
                                                         " have overlapping interiors");
          }
        }
      ds.unite(i, j);
    }
  std::vector<Terminal> out;
  std::map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = ds.find(i);
    auto [it, fresh] = slot.try_emplace(r, out.size());
    if (fresh) {
      out.push_back(ts[i]);
    } else {
      out[it->second].absorb(ts[i]);
    }
  }
  std::sort(out.begin(), out.end(), [](const Terminal& a, const Terminal& b) { return a.id < b.id; });
  return out;
}

inline Terminal point_terminal(int id, const Point& p) {
  Terminal t;
  t.id = id;
  t.members = {id};
  t.add_point(p);
  return t;
}

inline Terminal region_terminal(int id, const PlanarSet& s) {
  Terminal t;
  t.id = id;
  t.members = {id};
  t.add_part(s);
  return t;
}

}  // namespace connperim::steiner
