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

// Polygonal planar sets: unions of simple polygons with polygonal holes.
//
// A set is stored as a list of rings. Outer rings are counterclockwise, hole
// rings clockwise, and every ring records its immediate enclosing ring
// (`parent`): holes point at the outer ring they cut, islands point at the
// hole they sit in. Rings may touch at finitely many points but never cross
// or share an edge. For such sets the topological boundary is the reduced
// boundary up to finitely many points, so perimeter is plain polyline length.

#pragma once

#include <array>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "connperim/core.hpp"

namespace connperim {

enum class RingKind { kOuter, kHole };

inline const char* to_string(RingKind k) { return k == RingKind::kOuter ? "outer" : "hole"; }

template <class T>
struct BasicRing {
  std::vector<Vec2<T>> points;  // closed implicitly; first point not repeated
  RingKind kind = RingKind::kOuter;
  std::optional<std::size_t> parent;

  friend bool operator==(const BasicRing& a, const BasicRing& b) {
    return a.points == b.points && a.kind == b.kind && a.parent == b.parent;
  }
};

enum class Location { kInterior, kBoundary, kExterior };

// ---------------------------------------------------------------------------
// Ring primitives

template <class T>
T ring_signed_area2(const std::vector<Vec2<T>>& pts) {
  T s = 0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(pts[i], pts[(i + 1) % n]);
  return s;
}

template <class T>
length_t<T> ring_length(const std::vector<Vec2<T>>& pts) {
  length_t<T> s{};
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) s += LengthOf<T>::segment(pts[i], pts[(i + 1) % n]);
  return s;
}

/// Crossing-number location of p relative to a closed ring (exact for rationals).
template <class T>
Location locate_in_ring(const Vec2<T>& p, const std::vector<Vec2<T>>& pts) {
  const std::size_t n = pts.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = pts[j];
    const auto& b = pts[i];
    if (on_segment(p, a, b)) return Location::kBoundary;
    if ((a.y > p.y) != (b.y > p.y)) {
      // x-coordinate of the edge at height p.y compared without division.
      const T lhs = (p.x - a.x) * (b.y - a.y);
      const T rhs = (b.x - a.x) * (p.y - a.y);
      const bool right_of_p = (b.y > a.y) ? (lhs < rhs) : (lhs > rhs);
      if (right_of_p) inside = !inside;
    }
  }
  return inside ? Location::kInterior : Location::kExterior;
}

/// Winding number of a ring around p (p not on the ring).
template <class T>
int winding_number(const Vec2<T>& p, const std::vector<Vec2<T>>& pts) {
  int w = 0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % n];
    if (a.y <= p.y) {
      if (b.y > p.y && orientation(a, b, p) > 0) ++w;
    } else {
      if (b.y <= p.y && orientation(a, b, p) < 0) --w;
    }
  }
  return w;
}

namespace detail {

template <class T>
std::vector<Vec2<T>> clean_ring(std::vector<Vec2<T>> pts, std::size_t index) {
  if (pts.size() >= 2 && pts.front() == pts.back()) pts.pop_back();
  std::vector<Vec2<T>> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    if (out.empty() || out.back() != p) out.push_back(p);
  }
  while (out.size() >= 2 && out.front() == out.back()) out.pop_back();
  if (out.size() < 3) {
    throw ValidationError("degenerate_ring",
                          "ring " + std::to_string(index) + " has fewer than 3 distinct points");
  }
  return out;
}

template <class T>
void check_simple(const std::vector<Vec2<T>>& pts, std::size_t index) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& c = pts[j];
      const auto& d = pts[(j + 1) % n];
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      const SegmentContact contact = classify_segments(a, b, c, d);
      if (adjacent) {
        if (contact == SegmentContact::kOverlap || contact == SegmentContact::kCross) {
          throw ValidationError("self_intersection", "ring " + std::to_string(index) +
                                                         " folds back on itself at edge " +
                                                         std::to_string(j));
        }
        // Adjacent edges of a triangle-like spike may also touch elsewhere.
        if (n == 3) continue;
        const auto& shared = (j == i + 1) ? b : a;
        const auto& other_i = (j == i + 1) ? a : b;
        const auto& other_j = (j == i + 1) ? d : c;
        if (on_segment(other_j, a, b) && other_j != shared) {
          throw ValidationError("self_intersection",
                                "ring " + std::to_string(index) + " touches itself");
        }
        if (on_segment(other_i, c, d) && other_i != shared) {
          throw ValidationError("self_intersection",
                                "ring " + std::to_string(index) + " touches itself");
        }
      } else if (contact != SegmentContact::kNone) {
        throw ValidationError("self_intersection", "ring " + std::to_string(index) +
                                                       " edges " + std::to_string(i) + " and " +
                                                       std::to_string(j) + " intersect");
      }
    }
  }
}

template <class T>
struct TouchScan {
  std::vector<Vec2<T>> touch_points;
};

/// Pairwise ring check: no crossings, no shared edges; collects touch points.
template <class T>
TouchScan<T> scan_ring_pair(const std::vector<Vec2<T>>& r1, const std::vector<Vec2<T>>& r2,
                            std::size_t i1, std::size_t i2) {
  TouchScan<T> scan;
  const std::size_t n1 = r1.size(), n2 = r2.size();
  for (std::size_t i = 0; i < n1; ++i) {
    const auto& a = r1[i];
    const auto& b = r1[(i + 1) % n1];
    for (std::size_t j = 0; j < n2; ++j) {
      const auto& c = r2[j];
      const auto& d = r2[(j + 1) % n2];
      switch (classify_segments(a, b, c, d)) {
        case SegmentContact::kNone:
          break;
        case SegmentContact::kCross:
          throw ValidationError("rings_cross", "rings " + std::to_string(i1) + " and " +
                                                   std::to_string(i2) + " cross");
        case SegmentContact::kOverlap:
          throw ValidationError("rings_share_edge", "rings " + std::to_string(i1) + " and " +
                                                        std::to_string(i2) +
                                                        " share a boundary piece of positive length");
        case SegmentContact::kTouch: {
          Vec2<T> p = a;
          if (on_segment(a, c, d)) p = a;
          else if (on_segment(b, c, d)) p = b;
          else if (on_segment(c, a, b)) p = c;
          else p = d;
          scan.touch_points.push_back(p);
          break;
        }
      }
    }
  }
  std::sort(scan.touch_points.begin(), scan.touch_points.end());
  scan.touch_points.erase(std::unique(scan.touch_points.begin(), scan.touch_points.end()),
                          scan.touch_points.end());
  return scan;
}

/// Where `inner` lies relative to `outer` (interior or exterior), judged on
/// every vertex and edge midpoint off `outer`'s boundary. Mixed answers mean
/// the rings cross at a shared vertex. nullopt: `inner` lies on `outer`.
template <class T>
std::optional<Location> ring_relation(const std::vector<Vec2<T>>& inner,
                                      const std::vector<Vec2<T>>& outer, std::size_t i1,
                                      std::size_t i2) {
  std::optional<Location> seen;
  auto visit = [&](const Vec2<T>& p) {
    const Location loc = locate_in_ring(p, outer);
    if (loc == Location::kBoundary) return;
    if (seen && *seen != loc) {
      throw ValidationError("rings_cross", "rings " + std::to_string(i1) + " and " +
                                               std::to_string(i2) + " cross at a vertex");
    }
    seen = loc;
  };
  const std::size_t n = inner.size();
  for (std::size_t i = 0; i < n; ++i) {
    visit(inner[i]);
    visit(Vec2<T>{(inner[i].x + inner[(i + 1) % n].x) / 2, (inner[i].y + inner[(i + 1) % n].y) / 2});
  }
  return seen;
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// PlanarSet

template <class T>
class BasicPlanarSet {
 public:
  using scalar_type = T;
  using point_type = Vec2<T>;
  using ring_type = BasicRing<T>;

  BasicPlanarSet() = default;

  /// Validates and normalizes a ring list: drops duplicate closing points,
  /// orients outer rings counterclockwise and holes clockwise, checks
  /// simplicity, pairwise non-crossing, nesting parity, and recomputes each
  /// ring's parent. A parent given in the input must match the geometry.
  /// `allow_pinched` skips the pinched-component check; complement regions
  /// may legitimately be pinched where components touch at corners.
  static BasicPlanarSet from_rings(std::vector<ring_type> rings, bool allow_pinched = false) {
    const std::size_t n = rings.size();
    for (std::size_t i = 0; i < n; ++i) {
      auto& r = rings[i];
      r.points = detail::clean_ring(std::move(r.points), i);
      const T a2 = ring_signed_area2(r.points);
      if (a2 == 0) throw ValidationError("degenerate_ring", "ring " + std::to_string(i) + " has zero area");
      const bool ccw = a2 > 0;
      if (ccw != (r.kind == RingKind::kOuter)) std::reverse(r.points.begin(), r.points.end());
      detail::check_simple(r.points, i);
      if (r.parent && *r.parent >= n) {
        throw ValidationError("parent_mismatch", "ring " + std::to_string(i) + " names parent " +
                                                     std::to_string(*r.parent) + " out of range");
      }
    }

    // Pairwise crossings and touch points.
    std::vector<std::vector<std::pair<std::size_t, std::vector<point_type>>>> touches(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        auto scan = detail::scan_ring_pair(rings[i].points, rings[j].points, i, j);
        if (!scan.touch_points.empty()) {
          touches[i].push_back({j, scan.touch_points});
          touches[j].push_back({i, std::move(scan.touch_points)});
        }
      }
    }

    // Containment: inside[i] lists rings whose interior contains ring i.
    std::vector<T> abs_area(n);
    for (std::size_t i = 0; i < n; ++i) {
      const T a2 = ring_signed_area2(rings[i].points);
      abs_area[i] = a2 < 0 ? T(-a2) : a2;
    }
    std::vector<std::optional<std::size_t>> parent(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const auto rel = detail::ring_relation(rings[i].points, rings[j].points, i, j);
        if (!rel) {
          throw ValidationError("rings_share_edge", "rings " + std::to_string(i) + " and " +
                                                        std::to_string(j) + " coincide");
        }
        if (*rel == Location::kInterior) {
          if (!parent[i] || abs_area[j] < abs_area[*parent[i]]) parent[i] = j;
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto& r = rings[i];
      if (r.kind == RingKind::kHole) {
        if (!parent[i] || rings[*parent[i]].kind != RingKind::kOuter) {
          throw ValidationError(
              "nesting_parity",
              "hole ring " + std::to_string(i) + " is not directly inside an outer ring" +
                  (parent[i] ? " (enclosed by hole ring " + std::to_string(*parent[i]) + ")" : ""));
        }
      } else if (parent[i] && rings[*parent[i]].kind != RingKind::kHole) {
        throw ValidationError("nesting_parity", "outer ring " + std::to_string(i) +
                                                    " lies directly inside outer ring " +
                                                    std::to_string(*parent[i]));
      }
      if (r.parent && r.parent != parent[i]) {
        throw ValidationError("parent_mismatch",
                              "ring " + std::to_string(i) + " declares parent " +
                                  std::to_string(*r.parent) + " but lies in " +
                                  (parent[i] ? std::to_string(*parent[i]) : std::string("none")));
      }
    }
    for (std::size_t i = 0; i < n; ++i) rings[i].parent = parent[i];

    // A component whose outer ring and holes touch along a cycle of points
    // would have a disconnected interior; reject it.
    for (std::size_t o = 0; o < n && !allow_pinched; ++o) {
      if (rings[o].kind != RingKind::kOuter) continue;
      std::vector<std::size_t> members{o};
      for (std::size_t k = 0; k < n; ++k) {
        if (rings[k].kind == RingKind::kHole && parent[k] == o) members.push_back(k);
      }
      std::map<std::size_t, std::size_t> ring_node;
      for (std::size_t m = 0; m < members.size(); ++m) ring_node[members[m]] = m;
      detail::DisjointSets ds(members.size());
      std::map<point_type, std::size_t> point_node;
      std::set<std::pair<std::size_t, std::size_t>> linked;  // (point node, ring node)
      auto link = [&](std::size_t pn, std::size_t rn, std::size_t a, std::size_t b) {
        if (!linked.insert({pn, rn}).second) return;
        if (!ds.unite(pn, rn)) {
          throw ValidationError("pinched_component",
                                "rings " + std::to_string(a) + " and " + std::to_string(b) +
                                    " touch along a cycle that splits the component of outer ring " +
                                    std::to_string(o));
        }
      };
      for (std::size_t a : members) {
        for (const auto& [b, pts] : touches[a]) {
          if (b < a || !ring_node.count(b)) continue;
          for (const auto& p : pts) {
            auto [it, fresh] = point_node.try_emplace(p, ds.parent.size());
            if (fresh) ds.parent.push_back(it->second);
            link(it->second, ring_node[a], a, b);
            link(it->second, ring_node[b], a, b);
          }
        }
      }
    }

    BasicPlanarSet s;
    s.rings_ = std::move(rings);
    return s;
  }

  /// Convenience: one outer ring and optional holes.
  static BasicPlanarSet polygon(std::vector<point_type> outer,
                                std::vector<std::vector<point_type>> holes = {}) {
    std::vector<ring_type> rings;
    rings.push_back({std::move(outer), RingKind::kOuter, std::nullopt});
    for (auto& h : holes) rings.push_back({std::move(h), RingKind::kHole, std::nullopt});
    return from_rings(std::move(rings));
  }

  const std::vector<ring_type>& rings() const noexcept { return rings_; }
  bool empty() const noexcept { return rings_.empty(); }

  friend bool operator==(const BasicPlanarSet& a, const BasicPlanarSet& b) {
    return a.rings_ == b.rings_;
  }

  /// Builds from rings that already satisfy every invariant (internal use).
  static BasicPlanarSet trusted(std::vector<ring_type> rings) {
    BasicPlanarSet s;
    s.rings_ = std::move(rings);
    return s;
  }

 private:
  std::vector<ring_type> rings_;
};

using PlanarSet = BasicPlanarSet<double>;
using RationalPlanarSet = BasicPlanarSet<Rational>;

template <class T>
BasicPlanarSet<Rational> to_rational(const BasicPlanarSet<T>& s) {
  std::vector<BasicRing<Rational>> rings;
  for (const auto& r : s.rings()) {
    BasicRing<Rational> out;
    out.kind = r.kind;
    out.parent = r.parent;
    for (const auto& p : r.points) {
      if constexpr (std::is_same_v<T, Rational>) out.points.push_back(p);
      else out.points.push_back(from_double<Rational>(p));
    }
    rings.push_back(std::move(out));
  }
  return BasicPlanarSet<Rational>::trusted(std::move(rings));
}

template <class T>
PlanarSet to_double(const BasicPlanarSet<T>& s) {
  std::vector<BasicRing<double>> rings;
  for (const auto& r : s.rings()) {
    BasicRing<double> out;
    out.kind = r.kind;
    out.parent = r.parent;
    for (const auto& p : r.points) out.points.push_back(to_double(p));
    rings.push_back(std::move(out));
  }
  return PlanarSet::trusted(std::move(rings));
}

// ---------------------------------------------------------------------------
// Measures

template <class T>
length_t<T> perimeter(const BasicPlanarSet<T>& s) {
  length_t<T> total{};
  for (const auto& r : s.rings()) total += ring_length(r.points);
  return total;
}

/// Lebesgue measure: outer rings count positively, holes negatively.
template <class T>
T area(const BasicPlanarSet<T>& s) {
  T a2 = 0;
  for (const auto& r : s.rings()) a2 += ring_signed_area2(r.points);
  return a2 / 2;
}

template <class T>
Location locate(const BasicPlanarSet<T>& s, const Vec2<T>& p) {
  int depth = 0;
  for (const auto& r : s.rings()) {
    const Location loc = locate_in_ring(p, r.points);
    if (loc == Location::kBoundary) return Location::kBoundary;
    if (loc == Location::kInterior) ++depth;
  }
  return (depth % 2) ? Location::kInterior : Location::kExterior;
}

/// Closed-set membership.
template <class T>
bool contains(const BasicPlanarSet<T>& s, const Vec2<T>& p) {
  return locate(s, p) != Location::kExterior;
}

struct BoundingBox {
  Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  bool empty() const { return lo.x > hi.x; }
  void add(const Point& p) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
  void add(const BoundingBox& b) {
    if (b.empty()) return;
    add(b.lo);
    add(b.hi);
  }
  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
};

template <class T>
BoundingBox bounding_box(const BasicPlanarSet<T>& s) {
  BoundingBox b;
  for (const auto& r : s.rings())
    for (const auto& p : r.points) b.add(to_double(p));
  return b;
}

/// Diameter of the closure (max distance between outer-ring vertices).
template <class T>
double diameter(const BasicPlanarSet<T>& s) {
  std::vector<Point> pts;
  for (const auto& r : s.rings())
    if (r.kind == RingKind::kOuter)
      for (const auto& p : r.points) pts.push_back(to_double(p));
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, distance(pts[i], pts[j]));
  return d;
}

template <class T>
BasicPlanarSet<T> transformed(const BasicPlanarSet<T>& s, const T& scale, const Vec2<T>& shift) {
  auto rings = s.rings();
  for (auto& r : rings)
    for (auto& p : r.points) p = scale * p + shift;
  if (scale < 0) return BasicPlanarSet<T>::from_rings(std::move(rings));
  return BasicPlanarSet<T>::trusted(std::move(rings));
}

// ---------------------------------------------------------------------------
// Components, holes, saturation, exterior

template <class SetT>
struct ComponentList {
  std::vector<SetT> components;              // M-connected components
  std::vector<std::vector<SetT>> holes_of;   // holes of each component, as filled sets
  std::vector<SetT> complement;              // complement components of the whole set
  std::size_t exterior_index = 0;            // which entry of `complement` is ext(E)
};

template <class T>
std::vector<std::size_t> outer_ring_indices(const BasicPlanarSet<T>& s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.rings().size(); ++i)
    if (s.rings()[i].kind == RingKind::kOuter) out.push_back(i);
  return out;
}

template <class T>
BasicRing<T> as_kind(BasicRing<T> r, RingKind kind, std::optional<std::size_t> parent) {
  if (r.kind != kind) std::reverse(r.points.begin(), r.points.end());
  r.kind = kind;
  r.parent = parent;
  return r;
}

/// The component housed by outer ring `o`: the ring and its own holes.
template <class T>
BasicPlanarSet<T> component_of_ring(const BasicPlanarSet<T>& s, std::size_t o) {
  std::vector<BasicRing<T>> rings{as_kind(s.rings()[o], RingKind::kOuter, std::nullopt)};
  for (std::size_t k = 0; k < s.rings().size(); ++k) {
    const auto& r = s.rings()[k];
    if (r.kind == RingKind::kHole && r.parent == o) rings.push_back(as_kind(r, RingKind::kHole, 0));
  }
  return BasicPlanarSet<T>::trusted(std::move(rings));
}

/// Holes of a set, each returned filled (as a set bounded by the hole ring).
template <class T>
std::vector<BasicPlanarSet<T>> holes(const BasicPlanarSet<T>& s) {
  std::vector<BasicPlanarSet<T>> out;
  for (const auto& r : s.rings()) {
    if (r.kind == RingKind::kHole) {
      out.push_back(BasicPlanarSet<T>::trusted({as_kind(r, RingKind::kOuter, std::nullopt)}));
    }
  }
  return out;
}

/// sat(E): union of the saturations of the components, i.e. the interiors of
/// the outermost rings.
template <class T>
BasicPlanarSet<T> saturate(const BasicPlanarSet<T>& s) {
  std::vector<BasicRing<T>> rings;
  for (const auto& r : s.rings())
    if (r.kind == RingKind::kOuter && !r.parent) rings.push_back(as_kind(r, RingKind::kOuter, std::nullopt));
  return BasicPlanarSet<T>::trusted(std::move(rings));
}

/// ext(E) clipped to `frame`: the frame ring with the outermost rings cut out.
/// Components touching at two or more corners pinch off bounded pockets; their
/// closures meet the exterior, so they stay part of this one region.
template <class T>
BasicPlanarSet<T> exterior_of(const BasicPlanarSet<T>& s, std::vector<Vec2<T>> frame) {
  std::vector<BasicRing<T>> rings{{std::move(frame), RingKind::kOuter, std::nullopt}};
  for (const auto& r : s.rings())
    if (r.kind == RingKind::kOuter && !r.parent) rings.push_back(as_kind(r, RingKind::kHole, std::nullopt));
  return BasicPlanarSet<T>::from_rings(std::move(rings), /*allow_pinched=*/true);
}

/// Axis-aligned frame ring around the set with the given relative margin.
template <class T>
std::vector<Vec2<T>> default_frame(const BasicPlanarSet<T>& s, double margin = 0.25) {
  BoundingBox b = bounding_box(s);
  if (b.empty()) b.add(Point{0, 0});
  const double pad = margin * std::max({b.width(), b.height(), 1.0});
  const Point lo{std::floor(b.lo.x - pad), std::floor(b.lo.y - pad)};
  const Point hi{std::ceil(b.hi.x + pad), std::ceil(b.hi.y + pad)};
  return {from_double<T>(lo), from_double<T>({hi.x, lo.y}), from_double<T>(hi),
          from_double<T>({lo.x, hi.y})};
}

/// Bounded complement component bounded by hole ring k: the hole minus the
/// saturations of the islands directly inside it.
template <class T>
BasicPlanarSet<T> hole_region(const BasicPlanarSet<T>& s, std::size_t k) {
  std::vector<BasicRing<T>> rings{as_kind(s.rings()[k], RingKind::kOuter, std::nullopt)};
  for (const auto& r : s.rings())
    if (r.kind == RingKind::kOuter && r.parent == k) rings.push_back(as_kind(r, RingKind::kHole, 0));
  return BasicPlanarSet<T>::trusted(std::move(rings));
}

template <class T>
ComponentList<BasicPlanarSet<T>> components(const BasicPlanarSet<T>& s) {
  ComponentList<BasicPlanarSet<T>> out;
  const auto& rings = s.rings();
  for (std::size_t o = 0; o < rings.size(); ++o) {
    if (rings[o].kind != RingKind::kOuter) continue;
    out.components.push_back(component_of_ring(s, o));
    std::vector<BasicPlanarSet<T>> hs;
    for (std::size_t k = 0; k < rings.size(); ++k) {
      if (rings[k].kind == RingKind::kHole && rings[k].parent == o) {
        hs.push_back(BasicPlanarSet<T>::trusted({as_kind(rings[k], RingKind::kOuter, std::nullopt)}));
      }
    }
    out.holes_of.push_back(std::move(hs));
  }
  for (std::size_t k = 0; k < rings.size(); ++k)
    if (rings[k].kind == RingKind::kHole) out.complement.push_back(hole_region(s, k));
  out.exterior_index = out.complement.size();
  out.complement.push_back(exterior_of(s, default_frame(s)));
  return out;
}

template <class T>
std::string describe(const BasicPlanarSet<T>& s) {
  std::ostringstream os;
  os << "PlanarSet{" << s.rings().size() << " rings}";
  return os.str();
}

}  // namespace connperim
