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

// Brute-force Steiner length on the 8-neighbour grid graph between cell
// centres (weights h and h*sqrt(2)) by Dreyfus-Wagner over terminal subsets.
// Each terminal group of cells is contracted to one super node.

#pragma once

#include <bit>
#include <cstdint>
#include <queue>

#include "connperim/pixel_set.hpp"

namespace connperim::steiner {

using Cell = std::pair<int, int>;

/// Any 8-connected grid Steiner tree spans at most this many slack-free
/// metrication steps; 1/cos(pi/8).
inline constexpr double kMetricationFactor = 1.0823922002923938;

struct OracleBudget {
  std::size_t max_groups = 10;
  std::size_t max_bytes = std::size_t(1) << 31;  // dp table
};

inline double steiner_grid_oracle(const std::vector<std::vector<Cell>>& groups, const GridSpec& grid,
                                  const OracleBudget& budget = {}) {
  const std::size_t t = groups.size();
  if (t > budget.max_groups) {
    throw ResourceError("grid oracle: " + std::to_string(t) + " terminal groups exceed the limit of " +
                        std::to_string(budget.max_groups));
  }
  if (t < 2) return 0.0;
  const int W = grid.width, H = grid.height;
  const std::size_t cells = static_cast<std::size_t>(W) * H;
  const std::size_t nodes = cells + t;
  const std::size_t masks = std::size_t(1) << (t - 1);
  if (masks * nodes * sizeof(double) > budget.max_bytes) {
    throw ResourceError("grid oracle: table of " + std::to_string(masks) + " x " + std::to_string(nodes) +
                        " entries exceeds the memory budget");
  }
  std::vector<std::vector<int>> group_of(cells);
  std::vector<std::vector<std::size_t>> members(t);
  for (std::size_t g = 0; g < t; ++g) {
    if (groups[g].empty()) throw ValidationError("empty_group", "terminal group " + std::to_string(g) + " has no cells");
    for (const auto& [i, j] : groups[g]) {
      if (i < 0 || j < 0 || i >= W || j >= H) throw ValidationError("cell_range", "terminal cell outside the grid");
      const std::size_t c = static_cast<std::size_t>(j) * W + i;
      group_of[c].push_back(static_cast<int>(g));
      members[g].push_back(c);
    }
  }

  const double h = grid.h, d = h * std::numbers::sqrt2;
  constexpr int kDi[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  constexpr int kDj[8] = {0, 0, 1, -1, 1, -1, 1, -1};
  const double inf = std::numeric_limits<double>::infinity();

  auto dijkstra = [&](std::vector<double>& dist) {
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (std::size_t v = 0; v < nodes; ++v)
      if (dist[v] < inf) pq.push({dist[v], v});
    auto relax = [&](std::size_t v, double nd) {
      if (nd < dist[v]) {
        dist[v] = nd;
        pq.push({nd, v});
      }
    };
    while (!pq.empty()) {
      const auto [du, u] = pq.top();
      pq.pop();
      if (du > dist[u]) continue;
      if (u >= cells) {
        for (std::size_t c : members[u - cells]) relax(c, du);
        continue;
      }
      const int i = static_cast<int>(u % W), j = static_cast<int>(u / W);
      for (int k = 0; k < 8; ++k) {
        const int a = i + kDi[k], b = j + kDj[k];
        if (a < 0 || b < 0 || a >= W || b >= H) continue;
        relax(static_cast<std::size_t>(b) * W + a, du + (k < 4 ? h : d));
      }
      for (int g : group_of[u]) relax(cells + g, du);
    }
  };

  // dp[mask] over the first t-1 groups; the last group is the root.
  std::vector<std::vector<double>> dp(masks);
  for (std::size_t g = 0; g + 1 < t; ++g) {
    auto& row = dp[std::size_t(1) << g];
    row.assign(nodes, inf);
    row[cells + g] = 0.0;
    dijkstra(row);
  }
  for (std::size_t m = 1; m < masks; ++m) {
    if (std::popcount(m) < 2) continue;
    auto& row = dp[m];
    row.assign(nodes, inf);
    const std::size_t low = m & (~m + 1);
    for (std::size_t sub = (m - 1) & m; sub; sub = (sub - 1) & m) {
      if (!(sub & low)) continue;  // each split once
      const auto& A = dp[sub];
      const auto& B = dp[m ^ sub];
      for (std::size_t v = 0; v < nodes; ++v) row[v] = std::min(row[v], A[v] + B[v]);
    }
    dijkstra(row);
  }
  // Join the root: full tree = min over v of dp[all][v] + dist(root, v).
  std::vector<double> root(nodes, inf);
  root[cells + t - 1] = 0.0;
  dijkstra(root);
  const auto& all = dp[masks - 1];
  double best = inf;
  for (std::size_t v = 0; v < nodes; ++v) best = std::min(best, all[v] + root[v]);
  return best;
}

/// Cells whose centres lie in the closed region.
inline std::vector<Cell> cells_inside(const PlanarSet& region, const GridSpec& grid) {
  std::vector<Cell> out;
  const PixelSet probe(grid);
  const BoundingBox b = bounding_box(region);
  const int i0 = std::max(0, static_cast<int>(std::floor((b.lo.x - grid.origin.x) / grid.h)) - 1);
  const int j0 = std::max(0, static_cast<int>(std::floor((b.lo.y - grid.origin.y) / grid.h)) - 1);
  const int i1 = std::min(grid.width - 1, static_cast<int>(std::ceil((b.hi.x - grid.origin.x) / grid.h)) + 1);
  const int j1 = std::min(grid.height - 1, static_cast<int>(std::ceil((b.hi.y - grid.origin.y) / grid.h)) + 1);
  for (int j = j0; j <= j1; ++j)
    for (int i = i0; i <= i1; ++i)
      if (contains(region, probe.cell_center(i, j))) out.push_back({i, j});
  return out;
}

/// Cell whose centre is nearest to p.
inline Cell nearest_cell(const Point& p, const GridSpec& grid) {
  const int i = static_cast<int>(std::floor((p.x - grid.origin.x) / grid.h));
  const int j = static_cast<int>(std::floor((p.y - grid.origin.y) / grid.h));
  return {std::clamp(i, 0, grid.width - 1), std::clamp(j, 0, grid.height - 1)};
}

/// Oracle for polygonal regions on a grid of cell size h around them.
inline double grid_oracle_regions(const std::vector<PlanarSet>& regions, double h, int margin_cells = 4) {
  BoundingBox box;
  for (const auto& r : regions) box.add(bounding_box(r));
  const GridSpec g = grid_covering(box, h, margin_cells);
  std::vector<std::vector<Cell>> groups;
  for (const auto& r : regions) groups.push_back(cells_inside(r, g));
  return steiner_grid_oracle(groups, g);
}

inline double grid_oracle_points(const std::vector<Point>& pts, double h, int margin_cells = 4) {
  BoundingBox box;
  for (const auto& p : pts) box.add(p);
  const GridSpec g = grid_covering(box, h, margin_cells);
  std::vector<std::vector<Cell>> groups;
  for (const auto& p : pts) groups.push_back({nearest_cell(p, g)});
  return steiner_grid_oracle(groups, g);
}

/// Smallest feature of a region family: the shorter bounding-box side of any
/// region and the least pairwise region gap.
inline double min_feature(const std::vector<PlanarSet>& regions) {
  double f = std::numeric_limits<double>::infinity();
  for (const auto& r : regions) {
    const auto b = bounding_box(r);
    f = std::min({f, b.width(), b.height()});
  }
  for (std::size_t i = 0; i < regions.size(); ++i)
    for (std::size_t j = i + 1; j < regions.size(); ++j)
      for (const auto& ri : regions[i].rings())
        for (const auto& rj : regions[j].rings()) {
          const double dd = [&] {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t a = 0; a < ri.points.size(); ++a)
              for (std::size_t b = 0; b < rj.points.size(); ++b)
                best = std::min(best, segment_segment_distance(ri.points[a], ri.points[(a + 1) % ri.points.size()],
                                                               rj.points[b], rj.points[(b + 1) % rj.points.size()]));
            return best;
          }();
          f = std::min(f, dd);
        }
  return f;
}

}  // namespace connperim::steiner
