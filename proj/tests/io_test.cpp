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

#include "connperim/fixtures.hpp"
#include "connperim/io.hpp"

namespace connperim {
namespace {

template <class T>
BasicPlanarSet<T> reparse(const BasicPlanarSet<T>& s) {
  return planar_set_from_json<T>(Json::parse(to_json(s).dump()));
}

std::string kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.kind();
  }
  return "";
}

TEST(PolygonJson, RoundTripIsExactInDoubles) {
  std::vector<PlanarSet> sets{fixtures::two_squares(), fixtures::annulus(), fixtures::three_disks(),
                              fixtures::figure_one<double>(), fixtures::two_squares_with_hole()};
  for (std::uint64_t seed = 0; seed < 20; ++seed) sets.push_back(fixtures::random_regions(seed));
  // Coordinates that have no short decimal form.
  sets.push_back(PlanarSet::from_rings({{{{0.1, 1.0 / 3}, {std::sqrt(2.0), 0.1}, {1.0, 2.0 / 7}}}}));
  for (const auto& s : sets) {
    const auto back = reparse(s);
    ASSERT_EQ(back.rings().size(), s.rings().size());
    for (std::size_t k = 0; k < s.rings().size(); ++k) {
      EXPECT_EQ(back.rings()[k].points, s.rings()[k].points);
      EXPECT_EQ(back.rings()[k].kind, s.rings()[k].kind);
      EXPECT_EQ(back.rings()[k].parent, s.rings()[k].parent);
    }
  }
}

TEST(PolygonJson, RationalRoundTrip) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = fixtures::random_nested<Rational>(seed);
    EXPECT_EQ(reparse(s).rings(), s.rings());
  }
  const auto j = Json::parse(R"({"rings":[{"points":[[0,0],["7/3",0],["7/3","1/2"]]}]})");
  const auto s = planar_set_from_json<Rational>(j);
  EXPECT_EQ(s.rings()[0].points[1].x, Rational(7, 3));
  // Integers stay integers on output.
  EXPECT_TRUE(to_json(s)["rings"][0]["points"][0][0].is_number_integer());
}

TEST(PolygonJson, Errors) {
  EXPECT_EQ(kind_of([] { planar_set_from_json(Json::parse("[]")); }), "bad_json");
  EXPECT_EQ(kind_of([] { planar_set_from_json(Json::parse(R"({"rings":[{"points":[[0]]}]})")); }), "bad_json");
  EXPECT_EQ(kind_of([] { planar_set_from_json(Json::parse(R"({"rings":[{"points":[],"kind":"x"}]})")); }),
            "bad_json");
  EXPECT_EQ(kind_of([] { planar_set_from_json<Rational>(Json::parse(R"({"rings":[{"points":[["a/b",0]]}]})")); }),
            "bad_json");
  EXPECT_EQ(kind_of([] { detail::parse_json("{", "input"); }), "bad_json");
  EXPECT_EQ(kind_of([] { read_text("/nonexistent/connperim.json"); }), "io");
}

TEST(Conngrid, RoundTrip) {
  PixelSet s(GridSpec{7, 5, 0.1, {-0.35, 1.25}});
  s.set(1, 1, true);
  s.set(2, 1, true);
  s.set(3, 3, true);
  const std::string text = to_conngrid(s);
  EXPECT_EQ(text.substr(0, text.find('\n')), "CONNGRID 7 5 0.1 -0.35 1.25");
  const PixelSet back = pixel_set_from_conngrid(text);
  EXPECT_EQ(back.grid(), s.grid());
  EXPECT_EQ(back.occupancy(), s.occupancy());
  // Top row first: the cell at j = 3 is on the second line.
  EXPECT_EQ(text.substr(text.find('\n') + 1 + 8, 7), "0001000");
}

TEST(Conngrid, OriginDefaultsToZero) {
  const PixelSet s = pixel_set_from_conngrid("CONNGRID 3 3 0.5\n000\n010\n000\n");
  EXPECT_EQ(s.grid().origin, (Point{0, 0}));
  EXPECT_TRUE(s.at(1, 1));
  EXPECT_EQ(to_conngrid(s), "CONNGRID 3 3 0.5\n000\n010\n000\n");
}

TEST(Conngrid, Errors) {
  EXPECT_EQ(kind_of([] { pixel_set_from_conngrid(""); }), "bad_conngrid");
  EXPECT_EQ(kind_of([] { pixel_set_from_conngrid("GRID 3 3 1\n"); }), "bad_conngrid");
  EXPECT_EQ(kind_of([] { pixel_set_from_conngrid("CONNGRID 3 3 1\n000\n0x0\n000\n"); }), "bad_conngrid");
  EXPECT_EQ(kind_of([] { pixel_set_from_conngrid("CONNGRID 3 3 1\n000\n00\n000\n"); }), "bad_conngrid");
  EXPECT_EQ(kind_of([] { pixel_set_from_conngrid("CONNGRID 3 3 1\n000\n000\n"); }), "bad_conngrid");
  EXPECT_EQ(kind_of([] { pixel_set_from_conngrid("CONNGRID 3 3 1 0.5\n000\n000\n000\n"); }), "bad_conngrid");
  // Occupied border cells break the one-cell margin.
  EXPECT_FALSE(kind_of([] { pixel_set_from_conngrid("CONNGRID 3 3 1\n100\n000\n000\n"); }).empty());
}

TEST(TreeJson, RoundTrip) {
  for (const auto& e : {fixtures::two_squares(), fixtures::three_disks(), fixtures::random_regions(4)}) {
    const SteinerTree t = st(e);
    const SteinerTree back = tree_from_json(Json::parse(to_json(t).dump()));
    EXPECT_TRUE(same_tree(back, t));
    EXPECT_EQ(back.total_length, t.total_length);
    EXPECT_EQ(back.certified, t.certified);
  }
  EXPECT_THROW(tree_from_json(Json::parse(R"({"vertices":[],"edges":[{"a":0,"b":1}]})")), ValidationError);
}

TEST(GamowConfigJson, FieldsAndFinalTemperature) {
  const auto j = Json::parse(R"({"alpha":0.5,"mass":2,"functional":"P_C_bar","init":"dumbbell",
                                 "schedule":{"t0":0.01,"sweeps":10,"t_final":0.0001}})");
  const GamowConfig c = gamow_config_from_json(j);
  EXPECT_EQ(c.alpha, 0.5);
  EXPECT_EQ(c.functional, Functional::kConnected);
  EXPECT_EQ(c.init, InitShape::kDumbbell);
  EXPECT_NEAR(c.schedule.t0 * std::pow(c.schedule.cooling, 10), 1e-4, 1e-15);
  const GamowConfig d = gamow_config_from_json(Json::parse(to_json(c).dump()));
  EXPECT_EQ(d.schedule.cooling, c.schedule.cooling);
  EXPECT_EQ(d.mass, c.mass);
  EXPECT_EQ(kind_of([] { gamow_config_from_json(Json::parse(R"({"alpha":"one"})")); }), "bad_json");
}

}  // namespace
}  // namespace connperim
