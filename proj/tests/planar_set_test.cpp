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

#include <queue>
#include <random>

#include "connperim/fixtures.hpp"
#include "connperim/pixel_set.hpp"
#include "connperim/polygon_ops.hpp"

namespace connperim {
namespace {

using fixtures::rect;

// Independent labeling used as an oracle: BFS with an explicit queue over
// shared edges only.
int count_components_bfs(const PixelSet& s) {
  const int w = s.width(), h = s.height();
  std::vector<char> seen(static_cast<std::size_t>(w) * h, 0);
  int count = 0;
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      if (!s.at(i, j) || seen[j * w + i]) continue;
      ++count;
      std::queue<std::pair<int, int>> q;
      q.push({i, j});
      seen[j * w + i] = 1;
      while (!q.empty()) {
        auto [a, b] = q.front();
        q.pop();
        const int da[4] = {1, -1, 0, 0}, db[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int x = a + da[k], y = b + db[k];
          if (s.at(x, y) && !seen[y * w + x]) {
            seen[y * w + x] = 1;
            q.push({x, y});
          }
        }
      }
    }
  return count;
}

TEST(Perimeter, UnitSquare) { EXPECT_DOUBLE_EQ(perimeter(PlanarSet::polygon(rect(0, 0, 1, 1))), 4.0); }

TEST(Perimeter, EmptySet) { EXPECT_EQ(perimeter(PlanarSet{}), 0.0); }

TEST(Perimeter, Annulus) { EXPECT_DOUBLE_EQ(perimeter(fixtures::annulus()), 16.0); }

TEST(Perimeter, RationalAnnulusIsExact) {
  const auto a = to_rational(fixtures::annulus());
  EXPECT_EQ(perimeter(a), ExactLength::sqrt_of(Rational(256)));
}

TEST(Validation, SelfIntersectingRingRejected) {
  std::vector<Point> bowtie{{0, 0}, {2, 2}, {2, 0}, {0, 1}};
  try {
    PlanarSet::polygon(bowtie);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.kind(), "self_intersection");
  }
}

TEST(Validation, CrossingRingsRejected) {
  EXPECT_THROW(PlanarSet::from_rings({{rect(0, 0, 2, 2), RingKind::kOuter, std::nullopt},
                                      {rect(1, 1, 3, 3), RingKind::kOuter, std::nullopt}}),
               ValidationError);
}

TEST(Validation, SharedEdgeRejected) {
  EXPECT_THROW(PlanarSet::from_rings({{rect(0, 0, 1, 1), RingKind::kOuter, std::nullopt},
                                      {rect(1, 0, 2, 1), RingKind::kOuter, std::nullopt}}),
               ValidationError);
}

TEST(Validation, HoleOutsideOuterRejected) {
  EXPECT_THROW(PlanarSet::from_rings({{rect(0, 0, 1, 1), RingKind::kOuter, std::nullopt},
                                      {rect(2, 0, 3, 1), RingKind::kHole, std::nullopt}}),
               ValidationError);
}

TEST(Validation, CornerTouchAccepted) {
  const auto s = PlanarSet::from_rings({{rect(0, 0, 1, 1), RingKind::kOuter, std::nullopt},
                                        {rect(1, 1, 2, 2), RingKind::kOuter, std::nullopt}});
  EXPECT_EQ(components(s).components.size(), 2u);
}

TEST(Validation, OrientationNormalized) {
  auto cw = rect(0, 0, 1, 1);
  std::reverse(cw.begin(), cw.end());
  const auto s = PlanarSet::polygon(cw, {{{0.25, 0.25}, {0.75, 0.25}, {0.75, 0.75}, {0.25, 0.75}}});
  EXPECT_GT(ring_signed_area2(s.rings()[0].points), 0.0);
  EXPECT_LT(ring_signed_area2(s.rings()[1].points), 0.0);
  EXPECT_EQ(s.rings()[1].parent, std::optional<std::size_t>(0));
}

TEST(Components, TwoSquares) {
  const auto c = components(fixtures::two_squares());
  ASSERT_EQ(c.components.size(), 2u);
  for (const auto& comp : c.components) EXPECT_DOUBLE_EQ(perimeter(comp), 4.0);
}

TEST(Components, Annulus) {
  const auto c = components(fixtures::annulus());
  ASSERT_EQ(c.components.size(), 1u);
  EXPECT_EQ(c.holes_of[0].size(), 1u);
}

TEST(Components, PixelCornerContactSplits) {
  PixelSet s({4, 4, 1.0, {0, 0}});
  s.set(1, 1, true);
  s.set(2, 2, true);
  EXPECT_EQ(count_components_bfs(s), 2);
  EXPECT_EQ(components(s).components.size(), 2u);
}

TEST(Holes, AnnulusSaturation) {
  const auto a = fixtures::annulus();
  const auto sat = saturate(a);
  ASSERT_EQ(sat.rings().size(), 1u);
  EXPECT_DOUBLE_EQ(area(sat), 9.0);
  const auto hs = holes(a);
  ASSERT_EQ(hs.size(), 1u);
  EXPECT_DOUBLE_EQ(area(hs[0]), 1.0);
}

TEST(Holes, SquareIsSaturated) {
  const auto sq = PlanarSet::polygon(rect(0, 0, 1, 1));
  EXPECT_EQ(saturate(sq), sq);
  EXPECT_TRUE(holes(sq).empty());
}

TEST(Holes, NestedFigureCountsMatchHoleRings) {
  const auto f = fixtures::figure_one();
  int hole_rings = 0;
  for (const auto& r : f.rings()) hole_rings += r.kind == RingKind::kHole;
  EXPECT_EQ(static_cast<int>(holes(f).size()), hole_rings);
  EXPECT_EQ(hole_rings, 2);
  // Parity oracle: a ring is a hole iff it is enclosed by an odd number of rings.
  for (std::size_t i = 0; i < f.rings().size(); ++i) {
    int depth = 0;
    for (std::size_t j = 0; j < f.rings().size(); ++j)
      if (i != j && locate_in_ring(f.rings()[i].points[0], f.rings()[j].points) == Location::kInterior)
        ++depth;
    EXPECT_EQ(depth % 2 == 1, f.rings()[i].kind == RingKind::kHole) << "ring " << i;
  }
}

TEST(Holes, ExteriorOfAnnulusClipsToFrame) {
  const auto a = fixtures::annulus();
  const auto ext = exterior_of(a, rect(-1, -1, 4, 4));
  EXPECT_DOUBLE_EQ(area(ext), 25.0 - 9.0);
}

TEST(Thicken, SingleSegmentCapsule) {
  SteinerTree t;
  t.vertices = {{{0, 0}, VertexKind::kTerminal, 0}, {{2, 0}, VertexKind::kTerminal, 1}};
  t.edges = {{0, 1, 0.0}};
  finalize(t);
  const double eps = 0.1;
  const auto s = thicken(t, eps);
  ASSERT_EQ(s.rings().size(), 1u);
  // Two straight sides plus a 72-gon's worth of cap chords.
  const double caps = 72 * 2 * eps * std::sin(std::numbers::pi / 72);
  EXPECT_NEAR(perimeter(s), 2 * 2.0 + caps, 1e-9);
  EXPECT_NEAR(perimeter(s), 2 * 2.0 + 2 * std::numbers::pi * eps, 2e-3 * perimeter(s));
}

TEST(Thicken, EmptyTree) { EXPECT_TRUE(thicken(SteinerTree{}, 0.1).empty()); }

TEST(Thicken, RejectsNonPositiveEps) {
  EXPECT_THROW(thicken(SteinerTree{}, 0.0), ValidationError);
}

TEST(Thicken, YTreeBoundaryNearTwiceLength) {
  SteinerTree t;
  t.vertices.push_back({{0, 0}, VertexKind::kBranch, -1});
  for (int k = 0; k < 3; ++k) {
    const double a = std::numbers::pi / 2 + 2 * std::numbers::pi * k / 3;
    t.vertices.push_back({{std::cos(a), std::sin(a)}, VertexKind::kTerminal, k});
    t.edges.push_back({0, static_cast<std::size_t>(k + 1), 0.0});
  }
  finalize(t);
  const double eps = 0.01;
  const auto s = thicken(t, eps);
  ASSERT_EQ(s.rings().size(), 1u);
  const double bound = 2 * t.total_length + 2 * std::numbers::pi * eps;
  EXPECT_NEAR(perimeter(s), bound, 0.02 * bound);
  EXPECT_LE(perimeter(s), bound);
}

TEST(Booleans, UnionOfOverlappingSquares) {
  const auto a = PlanarSet::polygon(rect(0, 0, 2, 2));
  const auto b = PlanarSet::polygon(rect(1, 1, 3, 3));
  const auto u = set_union(a, b);
  EXPECT_NEAR(area(u), 7.0, 1e-12);
  EXPECT_NEAR(perimeter(u), 12.0, 1e-12);
  const auto d = set_difference(a, b);
  EXPECT_NEAR(area(d), 3.0, 1e-12);
}

TEST(Booleans, DifferenceCreatesHole) {
  const auto a = PlanarSet::polygon(rect(0, 0, 3, 3));
  const auto b = PlanarSet::polygon(rect(1, 1, 2, 2));
  const auto d = set_difference(a, b);
  EXPECT_EQ(d.rings().size(), 2u);
  EXPECT_NEAR(perimeter(d), 16.0, 1e-12);
}

TEST(Rasterize, AlignedUnitSquare) {
  const auto p = rasterize(PlanarSet::polygon(rect(0, 0, 1, 1)), 0.5);
  EXPECT_EQ(p.count(), 4u);
  EXPECT_DOUBLE_EQ(area(p), 1.0);
  EXPECT_DOUBLE_EQ(perimeter(p), 4.0);
}

TEST(Rasterize, IdenticalSetsHaveZeroDifference) {
  const auto a = fixtures::annulus();
  EXPECT_EQ(symmetric_difference_area(a, a, 0.25), 0.0);
}

TEST(Rasterize, ShiftByOneCell) {
  const double h = 0.125, side = 1.0;
  const auto a = PlanarSet::polygon(rect(0, 0, side, side));
  const auto b = PlanarSet::polygon(rect(h, 0, side + h, side));
  const double d = symmetric_difference_area(a, b, h);
  // Cell enumeration: one column of side/h cells on each side.
  const int cells = 2 * static_cast<int>(side / h);
  EXPECT_DOUBLE_EQ(d, cells * h * h);
  EXPECT_DOUBLE_EQ(d, 2 * h * side);
}

TEST(PixelSet, MarginEnforced) {
  PixelSet s({3, 3, 1.0, {0, 0}});
  EXPECT_THROW(s.set(0, 1, true), ValidationError);
}

TEST(PixelSet, BoundaryTraceMatchesPerimeter) {
  std::mt19937_64 rng(7);
  std::bernoulli_distribution coin(0.55);
  for (int trial = 0; trial < 20; ++trial) {
    PixelSet s({12, 12, 0.5, {1.0, -2.0}});
    for (int j = 1; j < 11; ++j)
      for (int i = 1; i < 11; ++i) s.set(i, j, coin(rng));
    const auto poly = to_planar_set(s);
    EXPECT_NEAR(perimeter(poly), perimeter(s), 1e-12);
    EXPECT_NEAR(area(poly), area(s), 1e-12);
    EXPECT_EQ(static_cast<int>(components(poly).components.size()), count_components_bfs(s));
  }
}

TEST(PixelSet, AnnulusHasOneHole) {
  PixelSet s({7, 7, 1.0, {0, 0}});
  for (int j = 1; j <= 5; ++j)
    for (int i = 1; i <= 5; ++i) s.set(i, j, !(i == 3 && j == 3));
  EXPECT_EQ(holes(s).size(), 1u);
  EXPECT_EQ(saturate(s).count(), 25u);
  const auto poly = to_planar_set(s);
  EXPECT_EQ(holes(poly).size(), 1u);
  EXPECT_DOUBLE_EQ(perimeter(poly), 24.0);
}

// --- properties --------------------------------------------------------------

TEST(Properties, PerimeterAdditivity) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = fixtures::random_regions(seed);
    double sum = 0.0;
    for (const auto& c : components(s).components) sum += perimeter(c);
    EXPECT_NEAR(sum, perimeter(s), 1e-9 * perimeter(s));
  }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = fixtures::random_nested<Rational>(seed);
    ExactLength sum;
    for (const auto& c : components(s).components) sum += perimeter(c);
    EXPECT_EQ(sum, perimeter(s));
  }
}

TEST(Properties, DiameterBound) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    for (const auto& c : components(fixtures::random_regions(seed)).components)
      EXPECT_LE(2 * diameter(c), perimeter(c) + 1e-12);
    for (const auto& c : components(fixtures::random_nested<double>(seed)).components)
      EXPECT_LE(2 * diameter(c), perimeter(c) + 1e-12);
  }
}

TEST(Properties, SaturationMonotone) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = fixtures::random_nested<double>(seed);
    const auto sat = saturate(s);
    EXPECT_EQ(saturate(sat), sat);
    EXPECT_LE(perimeter(sat), perimeter(s));
    EXPECT_GE(area(sat), area(s));
    for (const auto& r : s.rings())
      for (const auto& p : r.points) EXPECT_TRUE(contains(sat, p));
  }
}

TEST(Properties, RasterAreaConvergesFirstOrder) {
  const auto disk = PlanarSet::polygon(fixtures::regular_polygon({0.3, 0.1}, 1.0, 40));
  const double exact = area(disk);
  for (double h : {0.1, 0.05, 0.025, 0.0125}) {
    const double err = std::abs(area(rasterize(disk, h)) - exact);
    // First order: error bounded by perimeter * h.
    EXPECT_LE(err, perimeter(disk) * h) << "h = " << h;
  }
}

TEST(Properties, PixelPerimeterExactOnLattice) {
  const double h = 0.25;
  const auto l = PlanarSet::polygon({{0, 0}, {2, 0}, {2, 0.5}, {0.75, 0.5}, {0.75, 1.5}, {0, 1.5}});
  EXPECT_DOUBLE_EQ(perimeter(rasterize(l, h)), perimeter(l));
  EXPECT_DOUBLE_EQ(area(rasterize(l, h)), area(l));
}

}  // namespace
}  // namespace connperim
