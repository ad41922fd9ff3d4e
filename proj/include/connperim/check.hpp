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

// Invariant suites over the bundled fixtures, run by `connperim check`.

#pragma once

#include <chrono>
#include <functional>

#include "connperim/decomposition.hpp"
#include "connperim/fixtures.hpp"
#include "connperim/gamow.hpp"
#include "connperim/io.hpp"
#include "connperim/relaxed.hpp"

namespace connperim {

struct SuiteResult {
  std::string name;
  int checks = 0;
  std::vector<std::string> failures;
  double seconds = 0.0;
  bool passed() const { return failures.empty(); }

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream s;
    s.precision(17);
    s << what << ": got " << got << ", want " << want << " +- " << tol;
    expect(std::abs(got - want) <= tol, s.str());
  }
};

namespace detail {

inline SuiteResult run_suite(const std::string& name, const std::function<void(SuiteResult&)>& body) {
  SuiteResult r;
  r.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.failures.push_back(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline void planar_set_suite(SuiteResult& r) {
  for (const auto& e : {fixtures::two_squares(), fixtures::annulus(), fixtures::three_disks(), fixtures::figure_one<double>()}) {
    double sum = 0.0;
    for (const auto& c : components(e).components) sum += perimeter(c);
    r.near(sum, perimeter(e), 1e-9 * perimeter(e), "component perimeters add up");
  }
  r.near(perimeter(fixtures::two_squares()), 8.0, 1e-12, "two squares perimeter");
  r.near(area(fixtures::annulus()), 8.0, 1e-12, "annulus area");
  PixelSet s(GridSpec{6, 6, 0.5, {0, 0}});
  s.set(1, 1, true);
  s.set(2, 2, true);
  r.expect(components(s).components.size() == 2, "corner contact splits pixel components");
  r.near(perimeter(s), 4.0, 1e-12, "pixel perimeter counts exposed edges");
}

inline void decomposition_suite(SuiteResult& r) {
  const auto fig = fixtures::figure_one<Rational>();
  const auto d = boundary_decompose(fig);
  r.expect(d.plus_curves.size() == 3 && d.minus_curves.size() == 2, "figure: 3 plus and 2 minus curves");
  ExactLength sum;
  for (const auto& c : d.plus_curves) sum += ring_length(c);
  for (const auto& c : d.minus_curves) sum += ring_length(c);
  r.expect(sum == perimeter(fig), "figure: curve lengths sum to the perimeter exactly");
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto e = fixtures::random_nested<Rational>(seed);
    const auto rep = check_decomposition(raw_decompose(e), e, 64, seed);
    r.expect(rep.ok(), "nested seed " + std::to_string(seed) + (rep.messages.empty() ? "" : ": " + rep.messages[0]));
  }
}

inline void steiner_suite(SuiteResult& r) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto regions = components(fixtures::random_regions(seed)).components;
    const auto t = steiner_regions(regions);
    const auto rep = check_regularity(t, 1e-4, steiner::boundary_of(regions));
    r.expect(rep.ok(), "regularity seed " + std::to_string(seed) + (rep.messages.empty() ? "" : ": " + rep.messages[0]));
  }
  const auto t = steiner_points({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
  r.near(t.total_length, std::sqrt(3.0), 1e-9, "equilateral triangle");
}

inline void relaxed_suite(SuiteResult& r) {
  r.near(connected_perimeter(fixtures::two_squares()).connected_perimeter, 14.0, 1e-6, "two squares P_C");
  const auto a = simply_connected_perimeter(fixtures::annulus());
  r.near(a.connected_perimeter, 16.0, 1e-6, "annulus P_C");
  r.near(*a.simply_connected_perimeter, 18.0, 1e-6, "annulus P_S");
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto e = fixtures::random_regions(seed);
    const auto rep = simply_connected_perimeter(e);
    r.expect(rep.perimeter <= rep.connected_perimeter && rep.connected_perimeter <= *rep.simply_connected_perimeter,
             "sandwich seed " + std::to_string(seed));
  }
  const auto seq = recovery_sequence_connected(fixtures::two_squares(), {0.2, 0.1, 0.05});
  for (const auto& s : seq.sets) r.expect(components(s).components.size() == 1, "recovery member connected");
}

inline void gamow_suite(SuiteResult& r) {
  GamowConfig c;
  c.functional = Functional::kConnected;
  c.init = InitShape::kSquare;
  c.schedule.sweeps = 10;
  const auto t = minimize(c);
  r.expect(t.mass_conserved, "mass conserved");
  r.expect(t.bookkeeping_error < 1e-6, "incremental energy matches recompute");
  for (const auto& s : t.sweeps) r.expect(s.diameter_bound_ok, "diameter bound at sweep " + std::to_string(s.sweep));
  const auto cont = l1_continuity_check(t.final_state, 1.0);
  r.expect(cont.passed(), "Riesz continuity under cell removal");
  r.near(riesz_self_constant(1.0), 4.0 / 3.0 * (1 - std::sqrt(2.0)) + 4 * std::log(1 + std::sqrt(2.0)), 1e-12,
         "self-interaction constant at alpha 1");
}

inline void io_suite(SuiteResult& r) {
  for (const auto& e : {fixtures::two_squares(), fixtures::annulus(), fixtures::three_disks(), fixtures::figure_one<double>()}) {
    const auto back = planar_set_from_json(Json::parse(to_json(e).dump()));
    r.expect(back.rings() == e.rings(), "polygon JSON round trip");
    const auto t = st(e);
    r.expect(same_tree(tree_from_json(Json::parse(to_json(t).dump())), t), "tree JSON round trip");
  }
  const auto fig = fixtures::figure_one<Rational>();
  r.expect(planar_set_from_json<Rational>(Json::parse(to_json(fig).dump())).rings() == fig.rings(),
           "rational polygon JSON round trip");
  GamowConfig c;
  const auto s = initial_state(c);
  r.expect(pixel_set_from_conngrid(to_conngrid(s)).occupancy() == s.occupancy(), "CONNGRID round trip");
}

}  // namespace detail

/// Every suite, in order. Each catches its own exceptions.
inline std::vector<SuiteResult> run_invariant_suites() {
  return {detail::run_suite("planar_set", detail::planar_set_suite),
          detail::run_suite("decomposition", detail::decomposition_suite),
          detail::run_suite("steiner", detail::steiner_suite),
          detail::run_suite("relaxed", detail::relaxed_suite),
          detail::run_suite("gamow", detail::gamow_suite),
          detail::run_suite("io", detail::io_suite)};
}

}  // namespace connperim
