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

#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "connperim/core.hpp"

namespace connperim {

enum class VertexKind { kTerminal, kBranch };

struct TreeVertex {
  Point p;
  VertexKind kind = VertexKind::kBranch;
  int region = -1;  // owning terminal region for kTerminal
};

struct TreeEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  double length = 0.0;
};

/// A finite Steiner forest: every tree component touches each terminal region
/// at most once, branch vertices are triple junctions.
struct SteinerTree {
  std::vector<TreeVertex> vertices;
  std::vector<TreeEdge> edges;
  double total_length = 0.0;
  std::string topology_id;
  std::vector<std::vector<std::size_t>> per_component;  // edge indices of each tree component
  bool certified = true;

  bool empty() const { return edges.empty(); }
};

inline std::vector<std::vector<std::size_t>> adjacency(const SteinerTree& t) {
  std::vector<std::vector<std::size_t>> adj(t.vertices.size());
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    adj[t.edges[e].a].push_back(e);
    adj[t.edges[e].b].push_back(e);
  }
  return adj;
}

/// Connected components of the vertex/edge graph, as vertex lists.
inline std::vector<std::vector<std::size_t>> vertex_components(const SteinerTree& t) {
  const auto adj = adjacency(t);
  std::vector<int> comp(t.vertices.size(), -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < t.vertices.size(); ++s) {
    if (comp[s] >= 0) continue;
    out.emplace_back();
    std::vector<std::size_t> stack{s};
    comp[s] = static_cast<int>(out.size() - 1);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (std::size_t e : adj[v]) {
        const std::size_t w = t.edges[e].a == v ? t.edges[e].b : t.edges[e].a;
        if (comp[w] < 0) {
          comp[w] = comp[s];
          stack.push_back(w);
        }
      }
    }
  }
  return out;
}

namespace detail {

/// AHU-style encoding of one tree component rooted at its smallest terminal.
inline std::string encode_component(const SteinerTree& t,
                                    const std::vector<std::vector<std::size_t>>& adj,
                                    const std::vector<std::size_t>& verts) {
  std::size_t root = verts.front();
  for (std::size_t v : verts) {
    const auto& tv = t.vertices[v];
    const auto& rv = t.vertices[root];
    const bool v_term = tv.kind == VertexKind::kTerminal;
    const bool r_term = rv.kind == VertexKind::kTerminal;
    if ((v_term && !r_term) || (v_term && r_term && tv.region < rv.region)) root = v;
  }
  std::function<std::string(std::size_t, std::size_t)> enc = [&](std::size_t v, std::size_t from) {
    std::vector<std::string> kids;
    for (std::size_t e : adj[v]) {
      const std::size_t w = t.edges[e].a == v ? t.edges[e].b : t.edges[e].a;
      if (w != from) kids.push_back(enc(w, v));
    }
    std::sort(kids.begin(), kids.end());
    std::string s = t.vertices[v].kind == VertexKind::kTerminal
                        ? "t" + std::to_string(t.vertices[v].region)
                        : std::string("s");
    if (!kids.empty()) {
      s += "(";
      for (std::size_t k = 0; k < kids.size(); ++k) s += (k ? "," : "") + kids[k];
      s += ")";
    }
    return s;
  };
  return enc(root, static_cast<std::size_t>(-1));
}

}  // namespace detail

/// Recomputes edge lengths, total length, tree components and the canonical
/// topology id (sorted component encodings joined by '|').
inline void finalize(SteinerTree& t) {
  t.total_length = 0.0;
  for (auto& e : t.edges) {
    e.length = distance(t.vertices[e.a].p, t.vertices[e.b].p);
    t.total_length += e.length;
  }
  const auto adj = adjacency(t);
  const auto comps = vertex_components(t);
  t.per_component.clear();
  std::vector<std::string> codes;
  for (const auto& verts : comps) {
    std::set<std::size_t> es;
    for (std::size_t v : verts)
      for (std::size_t e : adj[v]) es.insert(e);
    if (es.empty()) continue;
    t.per_component.emplace_back(es.begin(), es.end());
    codes.push_back(detail::encode_component(t, adj, verts));
  }
  std::sort(codes.begin(), codes.end());
  t.topology_id.clear();
  for (std::size_t k = 0; k < codes.size(); ++k) t.topology_id += (k ? "|" : "") + codes[k];
}

// ---------------------------------------------------------------------------
// Regularity checks

struct RegularityReport {
  bool acyclic = true;
  bool angles_ok = true;
  bool one_endpoint_per_region = true;
  bool orthogonal = true;
  bool length_consistent = true;
  double worst_angle_error = 0.0;       // rad, over degree-3 vertices
  double worst_orthogonality_error = 0.0;  // rad, over attachments in edge interiors
  std::vector<std::string> messages;

  bool ok() const {
    return acyclic && angles_ok && one_endpoint_per_region && orthogonal && length_consistent;
  }
};

/// Boundary segments of terminal region r, used by the orthogonality check.
using RegionBoundary = std::function<std::vector<std::pair<Point, Point>>(int region)>;

inline double angle_between(const Point& u, const Point& v) {
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

inline RegularityReport check_regularity(const SteinerTree& t, double angle_tol = 1e-4,
                                         const RegionBoundary& boundary = {},
                                         double ortho_tol = 1e-4) {
  RegularityReport rep;
  const auto adj = adjacency(t);
  const auto comps = vertex_components(t);

  // |E| = |V| - #components.
  if (t.edges.size() + comps.size() != t.vertices.size()) {
    rep.acyclic = false;
    rep.messages.push_back("edge count " + std::to_string(t.edges.size()) +
                           " != vertices - components");
  }

  double sum = 0.0;
  for (const auto& e : t.edges) sum += distance(t.vertices[e.a].p, t.vertices[e.b].p);
  if (std::abs(sum - t.total_length) > 1e-9 * std::max(1.0, sum)) {
    rep.length_consistent = false;
    rep.messages.push_back("total_length differs from edge sum");
  }

  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    const auto& tv = t.vertices[v];
    if (tv.kind == VertexKind::kBranch && adj[v].size() != 3) {
      rep.angles_ok = false;
      rep.messages.push_back("branch vertex " + std::to_string(v) + " has degree " +
                             std::to_string(adj[v].size()));
      continue;
    }
    if (adj[v].size() != 3) continue;
    std::vector<Point> dirs;
    for (std::size_t e : adj[v]) {
      const std::size_t w = t.edges[e].a == v ? t.edges[e].b : t.edges[e].a;
      dirs.push_back(t.vertices[w].p - tv.p);
    }
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        const double err = std::abs(angle_between(dirs[a], dirs[b]) - 2.0 * std::numbers::pi / 3.0);
        rep.worst_angle_error = std::max(rep.worst_angle_error, err);
        if (err > angle_tol) {
          rep.angles_ok = false;
          rep.messages.push_back("vertex " + std::to_string(v) + " angle off by " + std::to_string(err));
        }
      }
  }

  for (const auto& verts : comps) {
    std::set<int> seen;
    for (std::size_t v : verts) {
      const auto& tv = t.vertices[v];
      if (tv.kind != VertexKind::kTerminal) continue;
      if (!seen.insert(tv.region).second) {
        rep.one_endpoint_per_region = false;
        rep.messages.push_back("region " + std::to_string(tv.region) +
                               " touched twice by one tree component");
      }
    }
  }

  if (boundary) {
    for (std::size_t v = 0; v < t.vertices.size(); ++v) {
      const auto& tv = t.vertices[v];
      if (tv.kind != VertexKind::kTerminal || adj[v].size() != 1) continue;
      const auto& e = t.edges[adj[v][0]];
      const std::size_t w = e.a == v ? e.b : e.a;
      const Point dir = t.vertices[w].p - tv.p;
      if (norm(dir) == 0.0) continue;
      for (const auto& [a, b] : boundary(tv.region)) {
        const double len = distance(a, b);
        if (len == 0.0) continue;
        const double scale = std::max({1.0, norm(a), norm(b)});
        const double tol = 1e-9 * scale;
        if (distance(closest_on_segment(tv.p, a, b), tv.p) > tol) continue;
        if (distance(tv.p, a) <= tol || distance(tv.p, b) <= tol) continue;  // at a corner
        const double err = std::abs(angle_between(dir, b - a) - std::numbers::pi / 2.0);
        rep.worst_orthogonality_error = std::max(rep.worst_orthogonality_error, err);
        if (err > ortho_tol) {
          rep.orthogonal = false;
          rep.messages.push_back("attachment vertex " + std::to_string(v) +
                                 " not orthogonal, error " + std::to_string(err));
        }
      }
    }
  }
  return rep;
}

}  // namespace connperim
