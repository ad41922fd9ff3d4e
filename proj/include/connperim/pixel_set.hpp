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

// Binary occupancy grids (polyominoes) with cell side h.
//
// Connectivity is edge adjacency for occupied and empty cells alike: two
// cells meeting only at a corner share no boundary, so splitting them costs
// no perimeter and they lie in different components.

#pragma once

#include <cstdint>
#include <deque>

#include "connperim/planar_set.hpp"

namespace connperim {

struct GridSpec {
  int width = 0;
  int height = 0;
  double h = 1.0;
  Point origin{0.0, 0.0};  // lower-left corner of cell (0, 0)

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.width == b.width && a.height == b.height && a.h == b.h && a.origin == b.origin;
  }
};

class PixelSet {
 public:
  PixelSet() = default;

  /// Empty grid. Cells are indexed (i, j) with i along x and j along y.
  explicit PixelSet(GridSpec grid) : grid_(grid) {
    if (grid.width < 0 || grid.height < 0) throw ValidationError("bad_grid", "negative grid size");
    if (!(grid.h > 0.0)) throw ValidationError("bad_grid", "cell size must be positive");
    cells_.assign(static_cast<std::size_t>(grid.width) * grid.height, 0);
  }

  PixelSet(GridSpec grid, std::vector<std::uint8_t> occupancy) : PixelSet(grid) {
    if (occupancy.size() != cells_.size()) {
      throw ValidationError("bad_grid", "occupancy size does not match grid");
    }
    for (std::size_t k = 0; k < occupancy.size(); ++k) cells_[k] = occupancy[k] ? 1 : 0;
    check_margin();
  }

  const GridSpec& grid() const noexcept { return grid_; }
  int width() const noexcept { return grid_.width; }
  int height() const noexcept { return grid_.height; }
  double h() const noexcept { return grid_.h; }

  bool in_grid(int i, int j) const { return i >= 0 && j >= 0 && i < grid_.width && j < grid_.height; }
  bool on_border(int i, int j) const {
    return i == 0 || j == 0 || i == grid_.width - 1 || j == grid_.height - 1;
  }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * grid_.width + i; }
  bool at(int i, int j) const { return in_grid(i, j) && cells_[index(i, j)] != 0; }

  /// Sets a cell; the outer ring of cells must stay empty.
  void set(int i, int j, bool value) {
    if (!in_grid(i, j)) throw std::out_of_range("PixelSet::set outside grid");
    if (value && on_border(i, j)) {
      throw ValidationError("margin", "cell (" + std::to_string(i) + "," + std::to_string(j) +
                                          ") lies in the empty frame margin");
    }
    cells_[index(i, j)] = value ? 1 : 0;
  }

  Point cell_center(int i, int j) const {
    return {grid_.origin.x + (i + 0.5) * grid_.h, grid_.origin.y + (j + 0.5) * grid_.h};
  }

  const std::vector<std::uint8_t>& occupancy() const noexcept { return cells_; }

  std::size_t count() const {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
  }

  friend bool operator==(const PixelSet& a, const PixelSet& b) {
    return a.grid_ == b.grid_ && a.cells_ == b.cells_;
  }

 private:
  void check_margin() const {
    for (int j = 0; j < grid_.height; ++j)
      for (int i = 0; i < grid_.width; ++i)
        if (on_border(i, j) && cells_[index(i, j)]) {
          throw ValidationError("margin", "occupied cell (" + std::to_string(i) + "," +
                                              std::to_string(j) + ") lies in the frame margin");
        }
  }

  GridSpec grid_;
  std::vector<std::uint8_t> cells_;
};

inline constexpr std::array<std::array<int, 2>, 4> kFourNeighbors{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

/// h times the number of cell edges separating an occupied from an empty cell.
inline double perimeter(const PixelSet& s) {
  std::size_t exposed = 0;
  for (int j = 0; j < s.height(); ++j)
    for (int i = 0; i < s.width(); ++i) {
      if (!s.at(i, j)) continue;
      for (const auto& d : kFourNeighbors) exposed += !s.at(i + d[0], j + d[1]);
    }
  return s.h() * static_cast<double>(exposed);
}

inline double area(const PixelSet& s) { return static_cast<double>(s.count()) * s.h() * s.h(); }

/// Labels 4-connected cells whose occupancy equals `value`; -1 elsewhere.
inline std::vector<int> label_cells(const PixelSet& s, bool value, int* count = nullptr) {
  std::vector<int> label(static_cast<std::size_t>(s.width()) * s.height(), -1);
  int next = 0;
  std::deque<std::pair<int, int>> queue;
  for (int j = 0; j < s.height(); ++j)
    for (int i = 0; i < s.width(); ++i) {
      if (s.at(i, j) != value || label[s.index(i, j)] >= 0) continue;
      label[s.index(i, j)] = next;
      queue.push_back({i, j});
      while (!queue.empty()) {
        auto [ci, cj] = queue.front();
        queue.pop_front();
        for (const auto& d : kFourNeighbors) {
          const int ni = ci + d[0], nj = cj + d[1];
          if (!s.in_grid(ni, nj) || s.at(ni, nj) != value) continue;
          auto& l = label[s.index(ni, nj)];
          if (l < 0) {
            l = next;
            queue.push_back({ni, nj});
          }
        }
      }
      ++next;
    }
  if (count) *count = next;
  return label;
}

inline PixelSet select_label(const PixelSet& s, const std::vector<int>& label, int which) {
  PixelSet out(s.grid());
  for (int j = 0; j < s.height(); ++j)
    for (int i = 0; i < s.width(); ++i)
      if (label[s.index(i, j)] == which) out.set(i, j, true);
  return out;
}

/// Complement components of s: (sets, index of the one touching the frame).
/// Hole cells are returned as occupied cells of a PixelSet on the same grid.
inline std::pair<std::vector<PixelSet>, std::size_t> complement_components(const PixelSet& s) {
  int count = 0;
  const auto label = label_cells(s, false, &count);
  std::vector<PixelSet> out;
  std::size_t exterior = 0;
  for (int c = 0; c < count; ++c) {
    PixelSet part(s.grid());
    bool touches_frame = false;
    for (int j = 0; j < s.height(); ++j)
      for (int i = 0; i < s.width(); ++i) {
        if (label[s.index(i, j)] != c) continue;
        if (s.on_border(i, j)) touches_frame = true;
        else part.set(i, j, true);
      }
    if (touches_frame) exterior = out.size();
    out.push_back(std::move(part));
  }
  return {std::move(out), exterior};
}

/// Bounded complement components.
inline std::vector<PixelSet> holes(const PixelSet& s) {
  auto [parts, ext] = complement_components(s);
  std::vector<PixelSet> out;
  for (std::size_t k = 0; k < parts.size(); ++k)
    if (k != ext) out.push_back(std::move(parts[k]));
  return out;
}

inline PixelSet saturate(const PixelSet& s) {
  PixelSet out = s;
  for (const auto& hole : holes(s))
    for (int j = 0; j < s.height(); ++j)
      for (int i = 0; i < s.width(); ++i)
        if (hole.at(i, j)) out.set(i, j, true);
  return out;
}

/// The exterior complement component, including frame-margin cells is not
/// representable (margin must stay empty), so the margin is dropped.
inline PixelSet exterior_of(const PixelSet& s) {
  auto [parts, ext] = complement_components(s);
  return parts.empty() ? PixelSet(s.grid()) : parts[ext];
}

inline ComponentList<PixelSet> components(const PixelSet& s) {
  ComponentList<PixelSet> out;
  int count = 0;
  const auto label = label_cells(s, true, &count);
  for (int c = 0; c < count; ++c) {
    out.components.push_back(select_label(s, label, c));
    out.holes_of.push_back(holes(out.components.back()));
  }
  auto [parts, ext] = complement_components(s);
  out.complement = std::move(parts);
  out.exterior_index = ext;
  return out;
}

// ---------------------------------------------------------------------------
// Rasterization and L1 distance

/// Grid with cell size h covering the box plus a one-cell empty margin; the
/// origin is snapped to the lattice h*Z^2 so aligned sets rasterize exactly.
inline GridSpec grid_covering(const BoundingBox& box, double h, int extra_margin = 1) {
  if (!(h > 0.0)) throw ValidationError("bad_grid", "cell size must be positive");
  BoundingBox b = box;
  if (b.empty()) b.add(Point{0, 0});
  const double x0 = std::floor(b.lo.x / h) - 1 - extra_margin;
  const double y0 = std::floor(b.lo.y / h) - 1 - extra_margin;
  const double x1 = std::ceil(b.hi.x / h) + 1 + extra_margin;
  const double y1 = std::ceil(b.hi.y / h) + 1 + extra_margin;
  GridSpec g;
  g.h = h;
  g.origin = {x0 * h, y0 * h};
  g.width = static_cast<int>(x1 - x0);
  g.height = static_cast<int>(y1 - y0);
  return g;
}

/// Cell occupied iff its center lies in the closed set.
template <class T>
PixelSet rasterize(const BasicPlanarSet<T>& s, const GridSpec& grid) {
  PixelSet out(grid);
  const PlanarSet d = to_double(s);
  for (int j = 1; j + 1 < grid.height; ++j)
    for (int i = 1; i + 1 < grid.width; ++i)
      if (contains(d, out.cell_center(i, j))) out.set(i, j, true);
  // Anything reaching the margin means the grid was too small.
  for (int j = 0; j < grid.height; ++j)
    for (int i = 0; i < grid.width; ++i)
      if (out.on_border(i, j) && contains(d, out.cell_center(i, j))) {
        throw ValidationError("margin", "set does not fit inside the grid frame");
      }
  return out;
}

template <class T>
PixelSet rasterize(const BasicPlanarSet<T>& s, double h) {
  return rasterize(s, grid_covering(bounding_box(s), h));
}

inline double symmetric_difference_area(const PixelSet& a, const PixelSet& b) {
  if (!(a.grid() == b.grid())) {
    throw ValidationError("grid_mismatch", "symmetric difference needs pixel sets on one grid");
  }
  std::size_t diff = 0;
  for (std::size_t k = 0; k < a.occupancy().size(); ++k) diff += a.occupancy()[k] != b.occupancy()[k];
  return static_cast<double>(diff) * a.h() * a.h();
}

/// |A Δ B| for polygons, by rasterizing both on a common grid of cell size h.
template <class T>
double symmetric_difference_area(const BasicPlanarSet<T>& a, const BasicPlanarSet<T>& b, double h) {
  BoundingBox box = bounding_box(a);
  box.add(bounding_box(b));
  const GridSpec g = grid_covering(box, h);
  return symmetric_difference_area(rasterize(a, g), rasterize(b, g));
}

// ---------------------------------------------------------------------------
// Polyomino boundary

/// Exact boundary of the polyomino as a PlanarSet. Rings meet only at
/// corner contacts; occupied cells touching diagonally end up in different
/// rings, matching 4-connectivity.
inline PlanarSet to_planar_set(const PixelSet& s) {
  // Directed boundary edges with the occupied cell on the left.
  struct Edge {
    int x0, y0, x1, y1;
    bool used = false;
  };
  std::vector<Edge> edges;
  std::map<std::pair<int, int>, std::vector<std::size_t>> out_edges;
  for (int j = 0; j < s.height(); ++j)
    for (int i = 0; i < s.width(); ++i) {
      if (!s.at(i, j)) continue;
      auto add = [&](int x0, int y0, int x1, int y1) {
        out_edges[{x0, y0}].push_back(edges.size());
        edges.push_back({x0, y0, x1, y1});
      };
      if (!s.at(i, j - 1)) add(i, j, i + 1, j);
      if (!s.at(i + 1, j)) add(i + 1, j, i + 1, j + 1);
      if (!s.at(i, j + 1)) add(i + 1, j + 1, i, j + 1);
      if (!s.at(i - 1, j)) add(i, j + 1, i, j);
    }

  std::vector<BasicRing<double>> rings;
  for (std::size_t start = 0; start < edges.size(); ++start) {
    if (edges[start].used) continue;
    std::vector<std::pair<int, int>> verts;
    std::size_t e = start;
    while (!edges[e].used) {
      edges[e].used = true;
      verts.push_back({edges[e].x0, edges[e].y0});
      const int dx = edges[e].x1 - edges[e].x0, dy = edges[e].y1 - edges[e].y0;
      const auto& cand = out_edges[{edges[e].x1, edges[e].y1}];
      std::size_t next = cand.front();
      if (cand.size() > 1) {
        // Saddle: take the left turn so diagonal cells stay separated.
        for (std::size_t c : cand) {
          const int ex = edges[c].x1 - edges[c].x0, ey = edges[c].y1 - edges[c].y0;
          if (dx * ey - dy * ex > 0) next = c;
        }
      }
      e = next;
    }
    // A component wrapping around an enclosed empty region revisits the
    // saddle vertex; split such walks into simple loops.
    std::vector<std::vector<std::pair<int, int>>> loops;
    std::vector<std::pair<int, int>> stack;
    for (const auto& v : verts) {
      auto it = std::find(stack.begin(), stack.end(), v);
      if (it != stack.end()) {
        loops.emplace_back(it, stack.end());
        stack.erase(it + 1, stack.end());
      } else {
        stack.push_back(v);
      }
    }
    loops.push_back(std::move(stack));
    for (const auto& loop : loops) {
      // Drop straight-through vertices.
      std::vector<Point> pts;
      const std::size_t n = loop.size();
      for (std::size_t k = 0; k < n; ++k) {
        const auto& p = loop[(k + n - 1) % n];
        const auto& c = loop[k];
        const auto& q = loop[(k + 1) % n];
        const int cr = (c.first - p.first) * (q.second - c.second) - (c.second - p.second) * (q.first - c.first);
        if (cr != 0) {
          pts.push_back({s.grid().origin.x + c.first * s.h(), s.grid().origin.y + c.second * s.h()});
        }
      }
      const double a2 = ring_signed_area2(pts);
      rings.push_back({std::move(pts), a2 > 0 ? RingKind::kOuter : RingKind::kHole, std::nullopt});
    }
  }
  return PlanarSet::from_rings(std::move(rings));
}

/// Diameter of the union of occupied cells.
inline double diameter(const PixelSet& s) {
  std::vector<Point> pts;
  for (int j = 0; j < s.height(); ++j)
    for (int i = 0; i < s.width(); ++i) {
      if (!s.at(i, j)) continue;
      // Only corners not shared with occupied neighbors on all sides matter.
      if (s.at(i - 1, j) && s.at(i + 1, j) && s.at(i, j - 1) && s.at(i, j + 1)) continue;
      const Point c = s.cell_center(i, j);
      const double r = 0.5 * s.h();
      pts.push_back({c.x - r, c.y - r});
      pts.push_back({c.x + r, c.y - r});
      pts.push_back({c.x + r, c.y + r});
      pts.push_back({c.x - r, c.y + r});
    }
  if (pts.size() < 2) return 0.0;
  // Convex hull (monotone chain), then all pairs on the hull.
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 1 ? k - 1 : k);
  double d = 0.0;
  for (std::size_t a = 0; a < hull.size(); ++a)
    for (std::size_t b = a + 1; b < hull.size(); ++b) d = std::max(d, distance(hull[a], hull[b]));
  return d;
}

}  // namespace connperim
