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

#include "connperim/decomposition.hpp"
#include "connperim/fixtures.hpp"
#include "connperim/relaxed.hpp"

namespace connperim {
namespace {

const double kSqrt3 = std::sqrt(3.0);

// Perimeter of a regular n-gon of circumradius r.
double ngon_perimeter(int n, double r) { return 2.0 * n * r * std::sin(std::numbers::pi / n); }

TEST(EnergyReport, TwoSquares) {
  const auto r = connected_perimeter(fixtures::two_squares());
  EXPECT_NEAR(r.perimeter, 8.0, 1e-12);
  EXPECT_NEAR(r.steiner, 3.0, 1e-9);
  EXPECT_NEAR(r.connected_perimeter, 14.0, 1e-6);
  EXPECT_TRUE(r.certified);
  EXPECT_FALSE(r.simply_connected_perimeter);
}

TEST(EnergyReport, Annulus) {
  const auto r = simply_connected_perimeter(fixtures::annulus());
  EXPECT_NEAR(r.connected_perimeter, 16.0, 1e-6);
  ASSERT_TRUE(r.simply_connected_perimeter);
  EXPECT_NEAR(*r.steiner_complement, 1.0, 1e-9);
  EXPECT_NEAR(*r.simply_connected_perimeter, 18.0, 1e-6);
}

TEST(EnergyReport, ThreeDisks) {
  const auto r = connected_perimeter(fixtures::three_disks());
  const double p = 3 * ngon_perimeter(64, 1.0);
  EXPECT_NEAR(r.perimeter, p, 1e-12);
  EXPECT_NEAR(r.connected_perimeter, p + 2 * (4 * kSqrt3 - 3), 1e-3);
  EXPECT_TRUE(r.certified);
}

TEST(EnergyReport, FigureOne) {
  const auto e = fixtures::figure_one<double>();
  const auto r = simply_connected_perimeter(e);
  // Island to its hole wall is 1, the diamond tip to the outer wall is 2.
  EXPECT_NEAR(r.steiner, 3.0, 1e-9);
  // Hole 1, hole region 2 and the exterior meet through a 120 degree joint.
  EXPECT_NEAR(*r.steiner_complement, 1.0 + kSqrt3 / 2, 1e-6);
  EXPECT_NEAR(r.perimeter, 98.0 + 8 * std::sqrt(2.0), 1e-12);
}

TEST(EnergyReport, SandwichAndEqualityCases) {
  std::vector<PlanarSet> sets{fixtures::two_squares(), fixtures::annulus(), fixtures::three_disks(),
                              fixtures::figure_one<double>(), fixtures::two_squares_with_hole(),
                              PlanarSet::polygon(fixtures::rect(0, 0, 2, 1))};
  for (std::uint64_t seed = 0; seed < 4; ++seed) sets.push_back(fixtures::random_regions(seed));
  for (const auto& e : sets) {
    const auto r = simply_connected_perimeter(e);
    const bool one_component = components(e).components.size() == 1;
    EXPECT_LE(r.perimeter, r.connected_perimeter);
    EXPECT_LE(r.connected_perimeter, *r.simply_connected_perimeter);
    EXPECT_NEAR(r.connected_perimeter - r.perimeter, 2 * r.steiner, 1e-12);
    EXPECT_EQ(r.steiner == 0.0, one_component);
    EXPECT_EQ(indecomposable_certificate(e).indecomposable, one_component);
    EXPECT_EQ(*r.steiner_complement == 0.0, holes(e).empty());
  }
}

TEST(EnergyReport, ScalingCovariance) {
  for (const auto& e : {fixtures::two_squares(), fixtures::annulus(), fixtures::three_disks()}) {
    const double base = connected_perimeter(e).connected_perimeter;
    for (double lambda : {0.5, 2.0}) {
      const double scaled = connected_perimeter(transformed(e, lambda, Point{0, 0})).connected_perimeter;
      EXPECT_NEAR(scaled, lambda * base, 1e-9 * lambda * base);
    }
  }
}

TEST(Recovery, TwoSquaresConnected) {
  const auto seq = recovery_sequence_connected(fixtures::two_squares(), {0.2, 0.1, 0.05, 0.025});
  ASSERT_EQ(seq.sets.size(), 4u);
  EXPECT_DOUBLE_EQ(seq.target, seq.report.connected_perimeter);
  for (std::size_t k = 0; k < seq.sets.size(); ++k) {
    EXPECT_EQ(components(seq.sets[k]).components.size(), 1u);
    // The corridor replaces 2 eps of one side on each square and adds two
    // sides of length 3.
    EXPECT_NEAR(seq.perimeters[k], 14.0 - 4 * seq.epsilons[k], 1e-9);
    if (k > 0) EXPECT_LT(std::abs(seq.perimeters[k] - 14), std::abs(seq.perimeters[k - 1] - 14));
  }
  EXPECT_NEAR(seq.fit.intercept, 14.0, 1e-3 * 14);
  EXPECT_NEAR(seq.fit.slope, -4.0, 1e-6);
}

TEST(Recovery, ConnectedSetGivesConstantSequence) {
  const auto e = fixtures::annulus();
  const auto seq = recovery_sequence_connected(e, {0.2, 0.1});
  for (double p : seq.perimeters) EXPECT_DOUBLE_EQ(p, perimeter(e));
}

TEST(Recovery, ThreeDisksConnected) {
  const auto seq = recovery_sequence_connected(fixtures::three_disks(), {0.05});
  EXPECT_EQ(components(seq.sets[0]).components.size(), 1u);
  EXPECT_LT(symmetric_difference_area(seq.sets[0], fixtures::three_disks()), 0.05 * 2 * 4 * kSqrt3);
}

TEST(Recovery, ThreeDisksTightness) {
  const auto seq = recovery_sequence_connected(fixtures::three_disks(), {0.1, 0.05, 0.025, 0.0125});
  EXPECT_NEAR(seq.fit.intercept, seq.target, 1e-3 * seq.target);
}

TEST(Recovery, AnnulusSlit) {
  const auto seq = recovery_sequence_simply_connected(fixtures::annulus(), {0.1, 0.05, 0.025});
  for (std::size_t k = 0; k < seq.sets.size(); ++k) {
    EXPECT_EQ(seq.sets[k].rings().size(), 1u);
    EXPECT_TRUE(holes(seq.sets[k]).empty());
    // Slit of width 2 eps through a wall of thickness 1.
    EXPECT_NEAR(seq.perimeters[k], 18.0 - 4 * seq.epsilons[k], 1e-9);
    EXPECT_NEAR(symmetric_difference_area(seq.sets[k], fixtures::annulus()), 2 * seq.epsilons[k], 1e-9);
  }
  EXPECT_NEAR(seq.fit.intercept, 18.0, 1e-3 * 18);
}

TEST(Recovery, SimplyConnectedSetGivesConstantSequence) {
  const auto e = PlanarSet::polygon(fixtures::rect(0, 0, 2, 1));
  const auto seq = recovery_sequence_simply_connected(e, {0.2, 0.1});
  for (double p : seq.perimeters) EXPECT_DOUBLE_EQ(p, 6.0);
}

TEST(Recovery, SharedEndpointStaysSimplyConnected) {
  const auto e = fixtures::two_squares_with_hole();
  const auto seq = recovery_sequence_simply_connected(e, {0.08, 0.04, 0.02, 0.01});
  for (const auto& s : seq.sets) {
    const auto d = boundary_decompose(s);
    EXPECT_EQ(d.plus_curves.size(), 1u);
    EXPECT_EQ(d.minus_curves.size(), 0u);
  }
  // P = 8 + 1.4, St = 3, St_c = 0.2.
  EXPECT_NEAR(seq.target, 9.4 + 6 + 0.4, 1e-9);
  EXPECT_NEAR(seq.fit.intercept, seq.target, 1e-3 * seq.target);
}

TEST(Recovery, EpsilonTooLargeNamesFeature) {
  try {
    recovery_sequence_simply_connected(fixtures::two_squares_with_hole(), {0.2});
    FAIL() << "expected a validation error";
  } catch (const ValidationError& err) {
    EXPECT_EQ(err.kind(), "epsilon_too_large");
    EXPECT_NE(std::string(err.what()).find("St_c"), std::string::npos);
  }
  EXPECT_THROW(recovery_sequence_connected(fixtures::two_squares(), {0.1, 0.2}), ValidationError);
}

TEST(Liminf, RecoveryOutputWithinConstructionError) {
  const auto e = fixtures::two_squares();
  const auto seq = recovery_sequence_connected(e, {0.2, 0.1, 0.05, 0.025});
  const auto rep = liminf_spotcheck(seq.sets, e);
  for (std::size_t k = 0; k < rep.members.size(); ++k)
    EXPECT_LE(rep.members[k].deficit, 4 * seq.epsilons[k] + 1e-9);
  EXPECT_NEAR(rep.limit_estimate, 14.0, 1e-6);
}

TEST(Liminf, ConstantSequenceIsTight) {
  const auto e = fixtures::annulus();
  const auto rep = liminf_spotcheck({e, e, e}, e);
  EXPECT_TRUE(rep.passed);
  for (const auto& m : rep.members) EXPECT_NEAR(m.deficit, 0.0, 1e-12);
}

TEST(Liminf, DisconnectedMembersAreSkipped) {
  const auto e = fixtures::two_squares();
  const auto rep = liminf_spotcheck({e, dumbbell(0.1)}, e);
  EXPECT_EQ(rep.warnings.size(), 1u);
  EXPECT_FALSE(rep.members[0].connected);
  EXPECT_NEAR(rep.tail_min, 13.8, 1e-12);
}

TEST(Liminf, DumbbellNeckPerimeter) {
  const auto e = fixtures::two_squares();
  std::vector<PlanarSet> seq;
  for (double w : {0.4, 0.2, 0.1, 0.05}) seq.push_back(dumbbell(w));
  const auto rep = liminf_spotcheck(seq, e);
  const std::vector<double> widths{0.4, 0.2, 0.1, 0.05};
  for (std::size_t k = 0; k < seq.size(); ++k) {
    EXPECT_NEAR(rep.members[k].perimeter, 14.0 - 2 * widths[k], 1e-12);
    EXPECT_NEAR(rep.members[k].symmetric_difference, 3 * widths[k], 1e-12);
  }
  // Every neck shortens the bound by 2w, but the limit is the bound itself.
  EXPECT_NEAR(rep.limit_estimate, 14.0, 1e-9);
  EXPECT_FALSE(rep.passed);
}

TEST(LinearFit, ExactLine) {
  const auto f = fit_line({1, 2, 3}, {5, 7, 9});
  EXPECT_NEAR(f.intercept, 3.0, 1e-12);
  EXPECT_NEAR(f.slope, 2.0, 1e-12);
}

}  // namespace
}  // namespace connperim
