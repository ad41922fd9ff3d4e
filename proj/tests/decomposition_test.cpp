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

#include <gtest/gtest.h>

#include <random>

#include "connperim/decomposition.hpp"
#include "connperim/fixtures.hpp"

namespace connperim {
namespace {

using fixtures::rect;

std::vector<RationalPoint> rat(const std::vector<Point>& pts) {
  std::vector<RationalPoint> out;
  for (const auto& p : pts) out.push_back(from_double<Rational>(p));
  return out;
}

// Brute-force containment: count rings whose interior holds p.
template <class T>
bool nesting_depth_odd(const BasicPlanarSet<T>& s, const Vec2<T>& p) {
  int depth = 0;
  for (const auto& r : s.rings()) depth += locate_in_ring(p, r.points) == Location::kInterior;
  return depth % 2 == 1;
}

TEST(Decomposition, FigureOneCurveCounts) {
  const auto e = fixtures::figure_one<Rational>();
  const auto d = boundary_decompose(e);
  EXPECT_EQ(d.plus_curves.size(), 3u);
  EXPECT_EQ(d.minus_curves.size(), 2u);
  // Immediate containment: two holes in the big outer curve, island in one hole.
  EXPECT_EQ(d.nesting.size(), 3u);
  ASSERT_EQ(d.component_assignment.size(), 2u);
  EXPECT_EQ(d.component_assignment[0], d.component_assignment[1]);
  EXPECT_EQ(d.plus_curves[d.component_assignment[0]].front(), RationalPoint(0, 0));
  const auto rep = check_decomposition(d, e, 512);
  EXPECT_TRUE(rep.ok()) << (rep.messages.empty() ? "" : rep.messages.front());
}

TEST(Decomposition, FigureOneLengthsExact) {
  const auto e = fixtures::figure_one<Rational>();
  const auto d = boundary_decompose(e);
  ExactLength sum;
  for (const auto& c : d.plus_curves) sum += ring_length(c);
  for (const auto& c : d.minus_curves) sum += ring_length(c);
  // 40 + 18 + 24 + 16 + 4*sqrt(8)
  ExactLength expected = ExactLength::sqrt_of(Rational(98 * 98));
  for (int k = 0; k < 4; ++k) expected += ExactLength::sqrt_of(Rational(8));
  EXPECT_EQ(sum, expected);
  EXPECT_EQ(sum, perimeter(e));
}

TEST(Decomposition, CanonicalCurvesStartAtLeftmostLowest) {
  const auto d = boundary_decompose(fixtures::figure_one<Rational>());
  for (const auto& c : d.plus_curves) EXPECT_EQ(*std::min_element(c.begin(), c.end()), c.front());
  for (const auto& c : d.minus_curves) EXPECT_EQ(*std::min_element(c.begin(), c.end()), c.front());
  for (const auto& c : d.plus_curves) EXPECT_GT(ring_signed_area2(c), 0);
  for (const auto& c : d.minus_curves) EXPECT_LT(ring_signed_area2(c), 0);
}

TEST(Decomposition, InvariantUnderRingOrderAndRotation) {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto e = fixtures::random_nested<Rational>(seed);
    const auto d = boundary_decompose(e);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<BasicRing<Rational>> rings;
      for (const auto& r : e.rings()) {
        auto pts = r.points;
        std::rotate(pts.begin(), pts.begin() + rng() % pts.size(), pts.end());
        rings.push_back({pts, r.kind, std::nullopt});
      }
      std::shuffle(rings.begin(), rings.end(), rng);
      EXPECT_EQ(boundary_decompose(RationalPlanarSet::from_rings(rings)), d) << "seed " << seed;
    }
  }
}

TEST(Decomposition, RandomNestedRationalClauses) {
  std::size_t max_curves = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto e = fixtures::random_nested<Rational>(seed);
    const auto d = raw_decompose(e);
    max_curves = std::max(max_curves, d.curve_count());
    EXPECT_EQ(d.curve_count(), e.rings().size());
    const auto rep = check_decomposition(d, e, 128, seed);
    EXPECT_TRUE(rep.ok()) << "seed " << seed << ": " << (rep.messages.empty() ? "" : rep.messages.front());
  }
  EXPECT_GE(max_curves, 5u);  // the family actually nests
}

TEST(Decomposition, IndexParityMatchesContainment) {
  std::vector<PlanarSet> sets{fixtures::figure_one<double>(), fixtures::annulus()};
  for (std::uint64_t seed = 0; seed < 8; ++seed) sets.push_back(fixtures::random_nested<double>(seed));
  std::mt19937_64 rng(3);
  for (const auto& e : sets) {
    const auto d = boundary_decompose(e);
    const auto b = bounding_box(e);
    std::uniform_real_distribution<double> ux(b.lo.x - 1, b.hi.x + 1), uy(b.lo.y - 1, b.hi.y + 1);
    for (int k = 0; k < 1000; ++k) {
      const Point p{ux(rng), uy(rng)};
      if (locate(e, p) == Location::kBoundary) continue;
      EXPECT_EQ(index_parity_contains(d, p), contains(e, p));
      EXPECT_EQ(index_parity_contains(d, p), nesting_depth_odd(e, p));
    }
  }
}

TEST(Decomposition, ComponentRegionsAreTheComponents) {
  const auto e = fixtures::figure_one<Rational>();
  const auto d = boundary_decompose(e);
  Rational total = 0;
  for (std::size_t i = 0; i < d.plus_curves.size(); ++i) {
    const auto y = component_region(d, i);
    EXPECT_EQ(components(y).components.size(), 1u);
    total += area(y);
  }
  // 96 - 18 - 36 + 16 + 8
  EXPECT_EQ(total, Rational(66));
  EXPECT_EQ(total, area(e));
}

TEST(Decomposition, PixelSetBoundary) {
  PixelSet s(GridSpec{8, 8, 1.0, {0, 0}});
  for (int j = 1; j < 7; ++j)
    for (int i = 1; i < 7; ++i) s.set(i, j, !(i >= 3 && i <= 4 && j >= 3 && j <= 4));
  const auto e = to_planar_set(s);
  const auto d = boundary_decompose(e);
  EXPECT_EQ(d.plus_curves.size(), 1u);
  EXPECT_EQ(d.minus_curves.size(), 1u);
  EXPECT_DOUBLE_EQ(perimeter(e), perimeter(s));
}

// A hand-built family breaking one clause at a time.
RationalJordanDecomposition family(std::vector<std::vector<Point>> plus, std::vector<std::vector<Point>> minus) {
  RationalJordanDecomposition d;
  for (auto& c : plus) d.plus_curves.push_back(rat(c));
  for (auto& c : minus) {
    std::reverse(c.begin(), c.end());
    d.minus_curves.push_back(rat(c));
  }
  return d;
}

TEST(Decomposition, ClauseViolationsAreReported) {
  const auto e = RationalPlanarSet::from_rings({{rat(rect(0, 0, 10, 10)), RingKind::kOuter, std::nullopt}});
  auto failed = [&](const RationalJordanDecomposition& d) {
    const auto rep = check_decomposition(d, e, 0);
    std::vector<int> out;
    for (int k = 0; k < 7; ++k)
      if (!rep.pass[k]) out.push_back(k + 1);
    return out;
  };
  auto contains_clause = [](const std::vector<int>& v, int c) { return std::find(v.begin(), v.end(), c) != v.end(); };
  // Overlapping J+.
  EXPECT_TRUE(contains_clause(failed(family({rect(0, 0, 4, 4), rect(2, 2, 6, 6)}, {})), 1));
  // Overlapping J-.
  EXPECT_TRUE(contains_clause(failed(family({rect(0, 0, 10, 10)}, {rect(1, 1, 5, 5), rect(3, 3, 7, 7)})), 2));
  // J- outside every J+.
  EXPECT_TRUE(contains_clause(failed(family({rect(0, 0, 4, 4)}, {rect(6, 6, 8, 8)})), 3));
  // J+ directly inside J+.
  EXPECT_TRUE(contains_clause(failed(family({rect(0, 0, 10, 10), rect(2, 2, 4, 4)}, {})), 4));
  // J- directly inside J-.
  EXPECT_TRUE(contains_clause(failed(family({rect(0, 0, 10, 10)}, {rect(1, 1, 9, 9), rect(3, 3, 5, 5)})), 5));
  // Lengths off.
  EXPECT_TRUE(contains_clause(failed(family({rect(0, 0, 10, 11)}, {})), 6));
  // The exact family is clean.
  EXPECT_TRUE(failed(family({rect(0, 0, 10, 10)}, {})).empty());
}

TEST(Decomposition, DirectNestingIsRejectedAtConstruction) {
  try {
    PlanarSet::from_rings({{rect(0, 0, 10, 10), RingKind::kOuter, std::nullopt},
                           {rect(2, 2, 4, 4), RingKind::kOuter, std::nullopt}});
    FAIL() << "expected a validation error";
  } catch (const ValidationError& err) {
    EXPECT_NE(std::string(err.what()).find('0'), std::string::npos);
    EXPECT_NE(std::string(err.what()).find('1'), std::string::npos);
  }
}

TEST(Indecomposable, PolygonCertificates) {
  EXPECT_TRUE(indecomposable_certificate(PlanarSet{}).empty);
  EXPECT_TRUE(indecomposable_certificate(fixtures::annulus()).indecomposable);
  const auto two = fixtures::two_squares();
  const auto cert = indecomposable_certificate(two);
  ASSERT_FALSE(cert.indecomposable);
  ASSERT_TRUE(cert.split);
  EXPECT_NEAR(perimeter(cert.split->first) + perimeter(cert.split->second), perimeter(two), 1e-12);
  EXPECT_GT(area(cert.split->first), 0.0);
  EXPECT_GT(area(cert.split->second), 0.0);
  // Exact split for rational fig 1: island and diamond separate off.
  const auto fig = fixtures::figure_one<Rational>();
  const auto rc = indecomposable_certificate(fig);
  ASSERT_TRUE(rc.split);
  EXPECT_EQ(perimeter(rc.split->first) + perimeter(rc.split->second), perimeter(fig));
}

TEST(Indecomposable, PixelCertificates) {
  PixelSet s(GridSpec{6, 6, 0.5, {0, 0}});
  EXPECT_TRUE(indecomposable_certificate(s).empty);
  s.set(1, 1, true);
  s.set(2, 1, true);
  EXPECT_TRUE(indecomposable_certificate(s).indecomposable);
  s.set(3, 2, true);  // corner contact only: a separate component
  const auto c = indecomposable_certificate(s);
  ASSERT_TRUE(c.split);
  EXPECT_EQ(c.split->first.count() + c.split->second.count(), 3u);
  EXPECT_DOUBLE_EQ(perimeter(c.split->first) + perimeter(c.split->second), perimeter(s));
}

}  // namespace
}  // namespace connperim
