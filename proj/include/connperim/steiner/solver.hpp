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

// Euclidean Steiner trees for points and polygonal regions.
//
// Exact mode: every terminal subset C gets its best full component F(C)
// (all terminals are leaves, inner vertices are triple junctions), found by
// inserting terminals one at a time into the edges of a partial topology and
// pruning once a partial tree is no shorter than the best tree over C built
// from smaller components. A subset DP then glues full components into the
// optimal hypertree. Fixed topologies are relaxed by block coordinate
// descent: each branch point moves to the Fermat point of its neighbours,
// each attachment to the nearest point of its region.

#pragma once

#include <bit>
#include <cstdint>

#include "connperim/steiner/terminals.hpp"
#include "connperim/steiner/tree.hpp"

namespace connperim::steiner {

enum class Mode { kAuto, kExact, kHeuristic };

struct Options {
  Mode mode = Mode::kAuto;
  int max_sweeps = 10000;
  double sweep_tol = 1e-12;       // stop when a sweep improves less than this
  double contract_tol = 1e-9;     // edges shorter than this are contracted
  std::size_t max_exact_points = 9;
  std::size_t max_exact_regions = 7;
};

/// Fermat point of a triangle: the vertex when its angle is at least 120
/// degrees, otherwise the point seeing all sides under 120 degrees.
inline Point fermat_point(const Point& a, const Point& b, const Point& c) {
  const double la = distance(b, c), lb = distance(a, c), lc = distance(a, b);
  if (la == 0.0 || lb == 0.0) return c == a || la == 0.0 ? c : a;
  if (lc == 0.0) return a;
  auto angle_at = [](const Point& p, const Point& q, const Point& r) {
    return angle_between(q - p, r - p);
  };
  const double A = angle_at(a, b, c), B = angle_at(b, a, c), C = angle_at(c, a, b);
  const double lim = 2.0 * std::numbers::pi / 3.0;
  if (A >= lim) return a;
  if (B >= lim) return b;
  if (C >= lim) return c;
  const double third = std::numbers::pi / 3.0;
  const double wa = la / std::sin(A + third), wb = lb / std::sin(B + third), wc = lc / std::sin(C + third);
  const double w = wa + wb + wc;
  return {(wa * a.x + wb * b.x + wc * c.x) / w, (wa * a.y + wb * b.y + wc * c.y) / w};
}

/// A fixed full topology over terminals 0..k-1 (leaves) and branch points
/// k..2k-3, with current geometry.
struct FullTree {
  std::vector<int> terms;                     // local leaf -> index into terminal list
  std::vector<std::pair<int, int>> edges;     // node pairs
  std::vector<Point> pos;                     // node positions
  double length = std::numeric_limits<double>::infinity();

  std::size_t leaves() const { return terms.size(); }

  double compute_length() const {
    double s = 0.0;
    for (const auto& [a, b] : edges) s += distance(pos[a], pos[b]);
    return s;
  }

  std::vector<std::vector<int>> neighbours() const {
    std::vector<std::vector<int>> nb(pos.size());
    for (const auto& [a, b] : edges) {
      nb[a].push_back(b);
      nb[b].push_back(a);
    }
    return nb;
  }
};

/// Block coordinate descent on a fixed topology; returns the final length.
inline double relax(FullTree& t, const std::vector<Terminal>& terminals, const Options& opt) {
  const auto nb = t.neighbours();
  const std::size_t k = t.leaves();
  double prev = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
    for (std::size_t v = k; v < t.pos.size(); ++v)
      t.pos[v] = fermat_point(t.pos[nb[v][0]], t.pos[nb[v][1]], t.pos[nb[v][2]]);
    for (std::size_t l = 0; l < k; ++l) t.pos[l] = terminals[t.terms[l]].closest(t.pos[nb[l][0]]);
    const double len = t.compute_length();
    if (prev - len < opt.sweep_tol) {
      prev = std::min(prev, len);
      break;
    }
    prev = len;
  }
  t.length = t.compute_length();
  return t.length;
}

/// Two-terminal full component: the shortest connecting segment.
inline FullTree segment_component(int i, int j, const std::vector<Terminal>& terminals) {
  FullTree t;
  t.terms = {i, j};
  t.edges = {{0, 1}};
  Point p, q;
  terminal_distance(terminals[i], terminals[j], &p, &q);
  t.pos = {p, q};
  t.length = distance(p, q);
  return t;
}

namespace detail {

inline std::string full_tree_code(const FullTree& t, const std::vector<Terminal>& terminals) {
  SteinerTree s;
  for (std::size_t v = 0; v < t.pos.size(); ++v) {
    if (v < t.leaves()) {
      s.vertices.push_back({t.pos[v], VertexKind::kTerminal, terminals[t.terms[v]].id});
    } else {
      s.vertices.push_back({t.pos[v], VertexKind::kBranch, -1});
    }
  }
  for (const auto& [a, b] : t.edges) s.edges.push_back({std::size_t(a), std::size_t(b), 0.0});
  finalize(s);
  return s.topology_id;
}

}  // namespace detail

/// Best full component over the given terminals whose length is strictly
/// below `upper`; nullopt when none beats it.
inline std::optional<FullTree> best_full_component(const std::vector<int>& subset,
                                                   const std::vector<Terminal>& terminals,
                                                   double upper, const Options& opt) {
  const std::size_t k = subset.size();
  if (k == 2) {
    auto t = segment_component(subset[0], subset[1], terminals);
    if (t.length < upper) return t;
    return std::nullopt;
  }
  const double scale = terminal_scale(terminals);
  const double strict = 1e-10 * scale;
  std::optional<FullTree> best;
  std::string best_code;
  double bound = upper - strict;

  // Seed: star on the first three terminals.
  FullTree seed;
  seed.terms = {subset[0], subset[1], subset[2]};
  seed.pos.resize(4);
  Point g{0, 0};
  for (int l = 0; l < 3; ++l) {
    const auto& T = terminals[subset[l]];
    const Point c{0.5 * (T.box.lo.x + T.box.hi.x), 0.5 * (T.box.lo.y + T.box.hi.y)};
    seed.pos[l] = c;
    g = g + (1.0 / 3.0) * c;
  }
  seed.pos[3] = g;
  for (int l = 0; l < 3; ++l) seed.pos[l] = terminals[subset[l]].closest(g);
  seed.edges = {{0, 3}, {1, 3}, {2, 3}};

  // Node layout while growing: leaves first, branch points after. Inserting
  // a leaf shifts branch indices by one.
  std::function<void(FullTree&)> grow = [&](FullTree& t) {
    relax(t, terminals, opt);
    if (t.length >= bound) return;
    const std::size_t have = t.leaves();
    if (have == k) {
      const std::string code = detail::full_tree_code(t, terminals);
      const bool better = !best || t.length < best->length - strict ||
                          (t.length <= best->length + strict && code < best_code);
      if (better) {
        best = t;
        best_code = code;
        bound = std::min(bound, t.length + strict);
      }
      return;
    }
    const int leaf = subset[have];
    for (std::size_t e = 0; e < t.edges.size(); ++e) {
      FullTree u;
      u.terms = t.terms;
      u.terms.push_back(leaf);
      const int shift = 1;
      auto remap = [&](int v) { return v < static_cast<int>(have) ? v : v + shift; };
      u.pos.assign(t.pos.begin(), t.pos.begin() + have);
      u.pos.push_back({});  // new leaf at index `have`
      u.pos.insert(u.pos.end(), t.pos.begin() + have, t.pos.end());
      const int s = static_cast<int>(u.pos.size());
      u.pos.push_back({});  // new branch point
      for (std::size_t f = 0; f < t.edges.size(); ++f) {
        if (f == e) continue;
        u.edges.push_back({remap(t.edges[f].first), remap(t.edges[f].second)});
      }
      const int a = remap(t.edges[e].first), b = remap(t.edges[e].second);
      u.edges.push_back({a, s});
      u.edges.push_back({b, s});
      u.edges.push_back({static_cast<int>(have), s});
      const Point mid = 0.5 * (u.pos[a] + u.pos[b]);
      const Point att = terminals[leaf].closest(mid);
      u.pos[have] = att;
      u.pos[s] = (1.0 / 3.0) * (u.pos[a] + u.pos[b] + att);
      grow(u);
    }
  };
  grow(seed);
  return best;
}

/// Minimal spanning tree over terminals by terminal distance (Prim).
inline std::vector<std::pair<int, int>> terminal_mst(const std::vector<Terminal>& ts) {
  const int n = static_cast<int>(ts.size());
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = terminal_distance(ts[i], ts[j]);
  std::vector<char> in(n, 0);
  std::vector<double> key(n, std::numeric_limits<double>::infinity());
  std::vector<int> from(n, -1);
  std::vector<std::pair<int, int>> out;
  key[0] = 0.0;
  for (int it = 0; it < n; ++it) {
    int u = -1;
    for (int v = 0; v < n; ++v)
      if (!in[v] && (u < 0 || key[v] < key[u])) u = v;
    in[u] = 1;
    if (from[u] >= 0) out.push_back({from[u], u});
    for (int v = 0; v < n; ++v)
      if (!in[v] && d[u][v] < key[v]) key[v] = d[u][v], from[v] = u;
  }
  return out;
}

namespace detail {

inline SteinerTree assemble(const std::vector<FullTree>& comps, const std::vector<Terminal>& terminals,
                            bool share_terminal_vertices, const Options& opt) {
  SteinerTree out;
  std::map<int, std::size_t> shared;  // terminal -> vertex, points mode
  for (const auto& c : comps) {
    std::vector<std::size_t> idx(c.pos.size());
    for (std::size_t v = 0; v < c.pos.size(); ++v) {
      if (v < c.leaves()) {
        const int term = c.terms[v];
        if (share_terminal_vertices) {
          auto [it, fresh] = shared.try_emplace(term, out.vertices.size());
          if (fresh) out.vertices.push_back({c.pos[v], VertexKind::kTerminal, terminals[term].id});
          idx[v] = it->second;
          continue;
        }
        idx[v] = out.vertices.size();
        out.vertices.push_back({c.pos[v], VertexKind::kTerminal, terminals[term].id});
      } else {
        idx[v] = out.vertices.size();
        out.vertices.push_back({c.pos[v], VertexKind::kBranch, -1});
      }
    }
    for (const auto& [a, b] : c.edges) out.edges.push_back({idx[a], idx[b], 0.0});
  }

  // Contract short edges; terminals absorb branch points.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t e = 0; e < out.edges.size(); ++e) {
      const auto [a, b, len] = out.edges[e];
      if (distance(out.vertices[a].p, out.vertices[b].p) >= opt.contract_tol) continue;
      std::size_t keep = a, drop = b;
      if (out.vertices[b].kind == VertexKind::kTerminal && out.vertices[a].kind != VertexKind::kTerminal)
        std::swap(keep, drop);
      out.edges.erase(out.edges.begin() + static_cast<std::ptrdiff_t>(e));
      for (auto& f : out.edges) {
        if (f.a == drop) f.a = keep;
        if (f.b == drop) f.b = keep;
      }
      out.vertices.erase(out.vertices.begin() + static_cast<std::ptrdiff_t>(drop));
      for (auto& f : out.edges) {
        if (f.a > drop) --f.a;
        if (f.b > drop) --f.b;
      }
      changed = true;
      break;
    }
  }
  // Isolated vertices carry no length.
  std::vector<int> deg(out.vertices.size(), 0);
  for (const auto& e : out.edges) ++deg[e.a], ++deg[e.b];
  std::vector<std::size_t> remap(out.vertices.size());
  std::vector<TreeVertex> kept;
  for (std::size_t v = 0; v < out.vertices.size(); ++v) {
    remap[v] = kept.size();
    if (deg[v] > 0) kept.push_back(out.vertices[v]);
  }
  for (auto& e : out.edges) e.a = remap[e.a], e.b = remap[e.b];
  out.vertices = std::move(kept);
  finalize(out);
  return out;
}

}  // namespace detail

/// Steiner tree for general terminals (already merged, pairwise disjoint).
inline SteinerTree solve(const std::vector<Terminal>& terminals, bool points_mode, const Options& opt) {
  const std::size_t n = terminals.size();
  if (n < 2) {
    SteinerTree t;
    if (n == 1 && points_mode) t.vertices.push_back({terminals[0].points[0], VertexKind::kTerminal, terminals[0].id});
    finalize(t);
    return t;
  }
  const std::size_t limit = points_mode ? opt.max_exact_points : opt.max_exact_regions;
  const bool heuristic = opt.mode == Mode::kHeuristic || (opt.mode == Mode::kAuto && n > limit);
  if (opt.mode == Mode::kExact && n > limit) {
    throw ValidationError("exact_bound", std::to_string(n) + " terminals exceed the exact-mode bound " +
                                             std::to_string(limit));
  }

  if (heuristic) {
    // MST-guided: start from MST segments, then greedily replace two
    // adjacent components by the best full component on their union.
    std::vector<std::vector<int>> comps;
    for (const auto& [a, b] : terminal_mst(terminals)) comps.push_back({std::min(a, b), std::max(a, b)});
    std::vector<FullTree> geo;
    for (const auto& c : comps) geo.push_back(segment_component(c[0], c[1], terminals));
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t i = 0; i < comps.size() && !improved; ++i)
        for (std::size_t j = i + 1; j < comps.size() && !improved; ++j) {
          std::vector<int> shared;
          std::set_intersection(comps[i].begin(), comps[i].end(), comps[j].begin(), comps[j].end(),
                                std::back_inserter(shared));
          if (shared.size() != 1) continue;
          std::vector<int> uni;
          std::set_union(comps[i].begin(), comps[i].end(), comps[j].begin(), comps[j].end(),
                         std::back_inserter(uni));
          if (uni.size() > 4) continue;
          const double cur = geo[i].length + geo[j].length;
          auto f = best_full_component(uni, terminals, cur, opt);
          if (!f) continue;
          comps[i] = uni;
          geo[i] = std::move(*f);
          comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(j));
          geo.erase(geo.begin() + static_cast<std::ptrdiff_t>(j));
          improved = true;
        }
    }
    auto t = detail::assemble(geo, terminals, points_mode, opt);
    t.certified = false;
    return t;
  }

  const std::uint32_t full = (1u << n) - 1;
  std::vector<double> dp(full + 1, std::numeric_limits<double>::infinity());
  std::vector<std::optional<FullTree>> fc(full + 1);
  // choice: 0 = full component; otherwise the sub-mask C used with shared v.
  std::vector<std::pair<std::uint32_t, int>> choice(full + 1, {0, -1});
  for (std::size_t i = 0; i < n; ++i) dp[1u << i] = 0.0;

  std::vector<std::vector<std::uint32_t>> by_size(n + 1);
  for (std::uint32_t m = 1; m <= full; ++m) by_size[std::popcount(m)].push_back(m);
  for (std::size_t size = 2; size <= n; ++size) {
    const auto& masks = by_size[size];
    std::vector<double> ub(masks.size(), std::numeric_limits<double>::infinity());
    std::vector<std::pair<std::uint32_t, int>> ch(masks.size(), {0, -1});
    for (std::size_t q = 0; q < masks.size(); ++q) {
      const std::uint32_t S = masks[q];
      // Non-full: full component C (proper, |C| >= 2) glued at one v in C.
      for (std::uint32_t C = (S - 1) & S; C; C = (C - 1) & S) {
        if (std::popcount(C) < 2 || !fc[C]) continue;
        for (std::uint32_t bits = C; bits; bits &= bits - 1) {
          const int v = std::countr_zero(bits);
          const std::uint32_t rest = (S & ~C) | (1u << v);
          const double val = fc[C]->length + dp[rest];
          if (val < ub[q]) ub[q] = val, ch[q] = {C, v};
        }
      }
    }
    std::vector<std::optional<FullTree>> found(masks.size());
    parallel_for(masks.size(), [&](std::size_t q) {
      std::vector<int> subset;
      for (std::uint32_t bits = masks[q]; bits; bits &= bits - 1) subset.push_back(std::countr_zero(bits));
      found[q] = best_full_component(subset, terminals, ub[q], opt);
    });
    for (std::size_t q = 0; q < masks.size(); ++q) {
      const std::uint32_t S = masks[q];
      fc[S] = std::move(found[q]);
      if (fc[S]) {
        dp[S] = fc[S]->length;
        choice[S] = {0, -1};
      } else {
        dp[S] = ub[q];
        choice[S] = ch[q];
      }
    }
  }

  std::vector<FullTree> parts;
  std::function<void(std::uint32_t)> collect = [&](std::uint32_t S) {
    if (std::popcount(S) < 2) return;
    if (choice[S].second < 0) {
      parts.push_back(*fc[S]);
      return;
    }
    const auto [C, v] = choice[S];
    parts.push_back(*fc[C]);
    collect((S & ~C) | (1u << v));
  };
  collect(full);
  return detail::assemble(parts, terminals, points_mode, opt);
}

/// Steiner minimal tree on a point set.
inline SteinerTree steiner_points(const std::vector<Point>& pts, const Options& opt = {}) {
  std::vector<Terminal> ts;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (pts[i] == pts[j]) throw ValidationError("duplicate_terminal", "points " + std::to_string(j) +
                                                                            " and " + std::to_string(i) + " coincide");
    ts.push_back(point_terminal(static_cast<int>(i), pts[i]));
  }
  return solve(ts, true, opt);
}

/// Steiner tree connecting pairwise disjoint closed regions. Touching
/// regions are merged first and need no connector.
inline SteinerTree steiner_regions(const std::vector<PlanarSet>& regions, const Options& opt = {}) {
  std::vector<Terminal> ts;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (regions[i].empty()) throw ValidationError("empty_region", "region " + std::to_string(i) + " is empty");
    ts.push_back(region_terminal(static_cast<int>(i), regions[i]));
  }
  return solve(merge_touching(std::move(ts)), false, opt);
}

/// Boundary segments of each original region, for orthogonality checks.
inline RegionBoundary boundary_of(const std::vector<PlanarSet>& regions) {
  return [regions](int r) {
    std::vector<std::pair<Point, Point>> segs;
    if (r < 0 || r >= static_cast<int>(regions.size())) return segs;
    for (const auto& ring : regions[r].rings())
      for (std::size_t k = 0; k < ring.points.size(); ++k)
        segs.push_back({ring.points[k], ring.points[(k + 1) % ring.points.size()]});
    return segs;
  };
}

}  // namespace connperim::steiner
