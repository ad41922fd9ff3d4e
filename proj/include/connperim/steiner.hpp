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

#include "connperim/planar_set.hpp"
#include "connperim/steiner/grid_oracle.hpp"
#include "connperim/steiner/solver.hpp"
#include "connperim/steiner/terminals.hpp"
#include "connperim/steiner/tree.hpp"

namespace connperim {

using steiner::steiner_points;
using steiner::steiner_regions;
using steiner::steiner_grid_oracle;

/// Vertices used for the polygonal frame circle of the exterior terminal.
inline constexpr int kFrameCircleVertices = 256;

inline std::vector<Point> circle_ring(double r, int n = kFrameCircleVertices) {
  std::vector<Point> pts;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * k / n;
    pts.push_back({r * std::cos(t), r * std::sin(t)});
  }
  return pts;
}

/// Smallest radius R with E inside the ball B_{R/2}(0), padded by 10%.
inline double default_frame_radius(const PlanarSet& e) {
  double r = 0.0;
  for (const auto& ring : e.rings())
    for (const auto& p : ring.points) r = std::max(r, norm(p));
  return 2.2 * std::max(r, 1.0);
}

/// Closed terminals of St: the closures of the components of E.
inline std::vector<PlanarSet> st_terminals(const PlanarSet& e) { return components(e).components; }

/// Closed terminals of St_c: every hole region (hole minus its islands) and
/// the exterior clipped to the closed disc of radius R.
inline std::vector<PlanarSet> st_c_terminals(const PlanarSet& e, double R) {
  std::vector<PlanarSet> out;
  for (std::size_t k = 0; k < e.rings().size(); ++k)
    if (e.rings()[k].kind == RingKind::kHole) out.push_back(hole_region(e, k));
  // A circumscribed polygon keeps the true disc inside the frame terminal.
  const double rr = R / std::cos(std::numbers::pi / kFrameCircleVertices);
  out.push_back(exterior_of(e, circle_ring(rr)));
  return out;
}

inline SteinerTree st(const PlanarSet& e, const steiner::Options& opt = {}) {
  if (e.empty()) throw ValidationError("empty_set", "St of the empty set is undefined");
  return steiner_regions(st_terminals(e), opt);
}

inline SteinerTree st_c(const PlanarSet& e, double R = 0.0, const steiner::Options& opt = {}) {
  if (e.empty()) throw ValidationError("empty_set", "St_c of the empty set is undefined");
  if (R == 0.0) R = default_frame_radius(e);
  double reach = 0.0;
  for (const auto& ring : e.rings())
    for (const auto& p : ring.points) reach = std::max(reach, norm(p));
  if (!(reach < R / 2)) {
    throw ValidationError("frame_radius", "frame radius " + std::to_string(R) +
                                              " does not keep the set inside B_{R/2}(0)");
  }
  return steiner_regions(st_c_terminals(e, R), opt);
}

}  // namespace connperim
