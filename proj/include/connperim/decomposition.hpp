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

// Nested Jordan-boundary decomposition of a polygonal set: outer curves J+
// (counterclockwise) and inner curves J- (clockwise), with the containment
// order and the clause-by-clause validation of the decomposition.

#pragma once

#include <random>

#include "connperim/pixel_set.hpp"
#include "connperim/planar_set.hpp"

namespace connperim {

template <class T>
struct BasicJordanDecomposition {
  using curve_type = std::vector<Vec2<T>>;

  std::vector<curve_type> plus_curves;
  std::vector<curve_type> minus_curves;

  /// Immediate containment: (container, contained), each a (is_plus, index).
  struct CurveRef {
    bool plus = true;
    std::size_t index = 0;
    friend bool operator==(const CurveRef&, const CurveRef&) = default;
    friend auto operator<=>(const CurveRef&, const CurveRef&) = default;
  };
  std::vector<std::pair<CurveRef, CurveRef>> nesting;

  /// Owning J+ of each J- (its immediate container).
  std::vector<std::size_t> component_assignment;

  const curve_type& curve(const CurveRef& r) const { return r.plus ? plus_curves[r.index] : minus_curves[r.index]; }
  std::size_t curve_count() const { return plus_curves.size() + minus_curves.size(); }

  friend bool operator==(const BasicJordanDecomposition& a, const BasicJordanDecomposition& b) {
    return a.plus_curves == b.plus_curves && a.minus_curves == b.minus_curves && a.nesting == b.nesting &&
           a.component_assignment == b.component_assignment;
  }
};

using JordanDecomposition = BasicJordanDecomposition<double>;
using RationalJordanDecomposition = BasicJordanDecomposition<Rational>;

/// One entry per clause (i)-(vii) of the decomposition theorem.
struct ClauseReport {
  std::array<bool, 7> pass{true, true, true, true, true, true, true};
  std::vector<std::string> messages;
  bool ok() const { return std::all_of(pass.begin(), pass.end(), [](bool b) { return b; }); }
  void fail(int clause, std::string msg) {
    pass[clause - 1] = false;
    messages.push_back("clause " + std::to_string(clause) + ": " + std::move(msg));
  }
};

namespace detail {

/// Rotates a closed polyline to start at its lexicographically least vertex.
template <class T>
std::vector<Vec2<T>> canonical_rotation(std::vector<Vec2<T>> pts) {
  auto it = std::min_element(pts.begin(), pts.end());
  std::rotate(pts.begin(), it, pts.end());
  return pts;
}

enum class CurveRelation { kInside, kOutside, kOnBoundary, kCrossing };

/// Where curve a lies relative to curve b.
template <class T>
CurveRelation curve_relation(const std::vector<Vec2<T>>& a, const std::vector<Vec2<T>>& b) {
  try {
    const auto rel = ring_relation(a, b, 0, 1);
    if (!rel) return CurveRelation::kOnBoundary;
    return *rel == Location::kInterior ? CurveRelation::kInside : CurveRelation::kOutside;
  } catch (const ValidationError&) {
    return CurveRelation::kCrossing;
  }
}

template <class T>
bool curve_inside(const std::vector<Vec2<T>>& a, const std::vector<Vec2<T>>& b) {
  return curve_relation(a, b) == CurveRelation::kInside;
}

/// Equality of lengths or areas: exact for rationals, relative 1e-12 else.
inline bool agrees(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); }
inline bool agrees(const ExactLength& a, const ExactLength& b) { return a == b; }
inline bool agrees(const Rational& a, const Rational& b) { return a == b; }

}  // namespace detail

/// Decomposition of a valid set into its J+ and J- curves, canonically
/// ordered (by leftmost-lowest vertex), so equal sets give equal output
/// regardless of ring order or starting vertex.
template <class T>
BasicJordanDecomposition<T> raw_decompose(const BasicPlanarSet<T>& s) {
  using D = BasicJordanDecomposition<T>;
  using Ref = typename D::CurveRef;
  const auto& rings = s.rings();
  std::vector<std::size_t> plus_rings, minus_rings;
  for (std::size_t i = 0; i < rings.size(); ++i)
    (rings[i].kind == RingKind::kOuter ? plus_rings : minus_rings).push_back(i);
  auto by_start = [&](std::size_t a, std::size_t b) {
    const auto ca = detail::canonical_rotation(rings[a].points);
    const auto cb = detail::canonical_rotation(rings[b].points);
    return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
  };
  std::sort(plus_rings.begin(), plus_rings.end(), by_start);
  std::sort(minus_rings.begin(), minus_rings.end(), by_start);

  D d;
  std::map<std::size_t, Ref> ref_of;
  for (std::size_t k = 0; k < plus_rings.size(); ++k) {
    d.plus_curves.push_back(detail::canonical_rotation(rings[plus_rings[k]].points));
    ref_of[plus_rings[k]] = Ref{true, k};
  }
  for (std::size_t k = 0; k < minus_rings.size(); ++k) {
    d.minus_curves.push_back(detail::canonical_rotation(rings[minus_rings[k]].points));
    ref_of[minus_rings[k]] = Ref{false, k};
  }
  for (std::size_t i = 0; i < rings.size(); ++i)
    if (rings[i].parent) d.nesting.push_back({ref_of[*rings[i].parent], ref_of[i]});
  std::sort(d.nesting.begin(), d.nesting.end());
  for (std::size_t k : minus_rings) d.component_assignment.push_back(ref_of[*rings[k].parent].index);
  return d;
}

/// Y_i: interior of J+_i minus the interiors of the J- curves inside it.
template <class T>
BasicPlanarSet<T> component_region(const BasicJordanDecomposition<T>& d, std::size_t i) {
  std::vector<BasicRing<T>> rings{{d.plus_curves[i], RingKind::kOuter, std::nullopt}};
  // Only maximal J- inside J+_i matter; the rest lie inside them.
  std::vector<std::size_t> inside;
  for (std::size_t k = 0; k < d.minus_curves.size(); ++k)
    if (detail::curve_inside(d.minus_curves[k], d.plus_curves[i])) inside.push_back(k);
  for (std::size_t k : inside) {
    bool maximal = true;
    for (std::size_t j : inside)
      if (j != k && detail::curve_inside(d.minus_curves[k], d.minus_curves[j])) maximal = false;
    if (maximal) rings.push_back({d.minus_curves[k], RingKind::kHole, std::nullopt});
  }
  return BasicPlanarSet<T>::from_rings(std::move(rings));
}

/// Membership by index parity: p is in E iff the curves winding around p
/// number an odd count.
template <class T>
bool index_parity_contains(const BasicJordanDecomposition<T>& d, const Vec2<T>& p) {
  int total = 0;
  for (const auto& c : d.plus_curves) total += std::abs(winding_number(p, c));
  for (const auto& c : d.minus_curves) total += std::abs(winding_number(p, c));
  return total % 2 == 1;
}

/// Checks clauses (i)-(vii) of the decomposition against the source set.
/// Lengths and areas are exact for rational input. Clause (vii) is checked
/// by exact area bookkeeping plus membership on `samples` lattice points.
template <class T>
ClauseReport check_decomposition(const BasicJordanDecomposition<T>& d, const BasicPlanarSet<T>& s,
                                 int samples = 256, std::uint64_t seed = 1) {
  ClauseReport rep;
  const auto& P = d.plus_curves;
  const auto& M = d.minus_curves;
  auto in = [](const auto& a, const auto& b) { return detail::curve_inside(a, b); };
  auto name = [](bool plus, std::size_t i) { return std::string(plus ? "J+" : "J-") + std::to_string(i); };

  // (i), (ii): interiors disjoint or nested.
  auto laminar = [&](const std::vector<std::vector<Vec2<T>>>& cs, bool plus, int clause) {
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (std::size_t j = i + 1; j < cs.size(); ++j) {
        const bool ij = in(cs[i], cs[j]), ji = in(cs[j], cs[i]);
        const bool disjoint = detail::curve_relation(cs[i], cs[j]) == detail::CurveRelation::kOutside &&
                              detail::curve_relation(cs[j], cs[i]) == detail::CurveRelation::kOutside;
        if (!(ij || ji || disjoint)) rep.fail(clause, name(plus, i) + " and " + name(plus, j) + " overlap");
      }
  };
  laminar(P, true, 1);
  laminar(M, false, 2);

  // (iii) every J- inside some J+.
  for (std::size_t k = 0; k < M.size(); ++k) {
    bool found = false;
    for (const auto& p : P) found = found || in(M[k], p);
    if (!found) rep.fail(3, name(false, k) + " is not inside any J+");
  }
  // (iv) nested J+ are separated by a J-.
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = 0; j < P.size(); ++j) {
      if (i == j || !in(P[j], P[i])) continue;
      bool sep = false;
      for (const auto& m : M) sep = sep || (in(P[j], m) && in(m, P[i]));
      if (!sep) rep.fail(4, name(true, j) + " inside " + name(true, i) + " with no J- between");
    }
  // (v) nested J- are separated by a J+.
  for (std::size_t k = 0; k < M.size(); ++k)
    for (std::size_t j = 0; j < M.size(); ++j) {
      if (k == j || !in(M[j], M[k])) continue;
      bool sep = false;
      for (const auto& p : P) sep = sep || (in(M[j], p) && in(p, M[k]));
      if (!sep) rep.fail(5, name(false, j) + " inside " + name(false, k) + " with no J+ between");
    }
  // (vi) curve lengths add up to the perimeter of the set.
  length_t<T> sum{};
  for (const auto& c : P) sum += ring_length(c);
  for (const auto& c : M) sum += ring_length(c);
  if (!detail::agrees(sum, perimeter(s))) rep.fail(6, "curve lengths do not sum to P(E)");
  // Orientation convention.
  for (std::size_t i = 0; i < P.size(); ++i)
    if (!(ring_signed_area2(P[i]) > 0)) rep.fail(6, name(true, i) + " is not counterclockwise");
  for (std::size_t k = 0; k < M.size(); ++k)
    if (!(ring_signed_area2(M[k]) < 0)) rep.fail(6, name(false, k) + " is not clockwise");

  // (vii) Y_i pairwise disjoint, indecomposable, union E.
  std::vector<BasicPlanarSet<T>> ys;
  T ysum = 0;
  for (std::size_t i = 0; i < P.size(); ++i) {
    try {
      ys.push_back(component_region(d, i));  // throws when pinched
    } catch (const ValidationError& e) {
      rep.fail(7, "Y" + std::to_string(i) + " is decomposable: " + e.what());
      continue;
    }
    ysum += area(ys.back());
  }
  if (!detail::agrees(ysum, area(s))) rep.fail(7, "sum of |Y_i| differs from |E|");
  if (ys.size() == P.size() && samples > 0) {
    const BoundingBox b = bounding_box(s);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> u(0, 1023);
    for (int k = 0; k < samples; ++k) {
      const Point q{b.lo.x + (u(rng) + 0.5) / 1024.0 * b.width(), b.lo.y + (u(rng) + 0.5) / 1024.0 * b.height()};
      const Vec2<T> p = from_double<T>(q);
      int hits = 0;
      for (const auto& y : ys) hits += locate(y, p) == Location::kInterior;
      const bool inside = locate(s, p) == Location::kInterior;
      const bool on_boundary = locate(s, p) == Location::kBoundary;
      if (on_boundary) continue;
      if (hits != (inside ? 1 : 0)) {
        rep.fail(7, "sample point covered by " + std::to_string(hits) + " of the Y_i");
        break;
      }
    }
  }
  return rep;
}

/// Decomposes and validates; throws when any clause fails.
template <class T>
BasicJordanDecomposition<T> boundary_decompose(const BasicPlanarSet<T>& s) {
  auto d = raw_decompose(s);
  const auto rep = check_decomposition(d, s, 64);
  if (!rep.ok()) throw ValidationError("decomposition_invalid", rep.messages.front());
  return d;
}

/// Result of the indecomposability test: either indecomposable, or a split
/// E = A u B with P(E) = P(A) + P(B) and both parts non-negligible.
template <class SetT>
struct IndecomposableCertificate {
  bool empty = false;  // the empty set: decomposable in a trivial sense
  bool indecomposable = false;
  std::optional<std::pair<SetT, SetT>> split;
};

template <class T>
IndecomposableCertificate<BasicPlanarSet<T>> indecomposable_certificate(const BasicPlanarSet<T>& s) {
  IndecomposableCertificate<BasicPlanarSet<T>> out;
  if (s.empty()) {
    out.empty = true;
    return out;
  }
  const auto comps = components(s).components;
  if (comps.size() == 1) {
    out.indecomposable = true;
    return out;
  }
  std::vector<BasicRing<T>> rest;
  for (std::size_t c = 1; c < comps.size(); ++c)
    for (const auto& r : comps[c].rings()) rest.push_back({r.points, r.kind, std::nullopt});
  auto b = BasicPlanarSet<T>::from_rings(std::move(rest), /*allow_pinched=*/true);
  if (!detail::agrees(perimeter(comps[0]) + perimeter(b), perimeter(s))) {
    throw std::logic_error("indecomposable_certificate: split is not perimeter-additive");
  }
  out.split = std::make_pair(comps[0], std::move(b));
  return out;
}

inline IndecomposableCertificate<PixelSet> indecomposable_certificate(const PixelSet& s) {
  IndecomposableCertificate<PixelSet> out;
  if (s.count() == 0) {
    out.empty = true;
    return out;
  }
  int count = 0;
  const auto label = label_cells(s, true, &count);
  if (count == 1) {
    out.indecomposable = true;
    return out;
  }
  PixelSet a = select_label(s, label, 0);
  PixelSet b(s.grid());
  for (int j = 0; j < s.height(); ++j)
    for (int i = 0; i < s.width(); ++i)
      if (s.at(i, j) && !a.at(i, j)) b.set(i, j, true);
  if (!detail::agrees(perimeter(a) + perimeter(b), perimeter(s))) {
    throw std::logic_error("indecomposable_certificate: split is not perimeter-additive");
  }
  out.split = std::make_pair(std::move(a), std::move(b));
  return out;
}

}  // namespace connperim
