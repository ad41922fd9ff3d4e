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

// Connected and simply connected perimeters, P + 2St and P + 2St + 2St_c,
// with explicit recovery sequences and a numerical lim inf check.

#pragma once

#include <sstream>

#include "connperim/polygon_ops.hpp"
#include "connperim/steiner.hpp"

namespace connperim {

struct EnergyReport {
  double perimeter = 0.0;
  double steiner = 0.0;
  std::optional<double> steiner_complement;  // only for the simply connected report
  double connected_perimeter = 0.0;
  std::optional<double> simply_connected_perimeter;
  SteinerTree tree;
  std::optional<SteinerTree> complement_tree;
  bool certified = true;
};

inline EnergyReport connected_perimeter(const PlanarSet& e, const steiner::Options& opt = {}) {
  EnergyReport r;
  r.perimeter = perimeter(e);
  r.tree = st(e, opt);
  r.steiner = r.tree.total_length;
  r.connected_perimeter = r.perimeter + 2.0 * r.steiner;
  r.certified = r.tree.certified;
  return r;
}

inline EnergyReport simply_connected_perimeter(const PlanarSet& e, const steiner::Options& opt = {},
                                               double frame_radius = 0.0) {
  EnergyReport r = connected_perimeter(e, opt);
  r.complement_tree = st_c(e, frame_radius, opt);
  r.steiner_complement = r.complement_tree->total_length;
  r.simply_connected_perimeter = r.connected_perimeter + 2.0 * *r.steiner_complement;
  r.certified = r.certified && r.complement_tree->certified;
  return r;
}

/// Number of components and holes under the polygonal reading: connected is
/// one outer ring; simply connected is one outer ring and no holes.
inline bool is_connected(const PlanarSet& s) { return outer_ring_indices(s).size() == 1; }
inline bool is_simply_connected(const PlanarSet& s) { return s.rings().size() == 1; }

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
};

/// Least-squares line through (x_k, y_k).
inline LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("fit_line: need at least two paired samples");
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < n; ++k) mx += x[k], my += y[k];
  mx /= n, my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) sxx += (x[k] - mx) * (x[k] - mx), sxy += (x[k] - mx) * (y[k] - my);
  LinearFit f;
  f.slope = sxx > 0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  return f;
}

struct RecoverySequence {
  std::vector<double> epsilons;
  std::vector<PlanarSet> sets;
  std::vector<double> perimeters;
  double target = 0.0;
  LinearFit fit;  // perimeter against epsilon; the slope is the reported C
  EnergyReport report;
};

namespace detail {

struct Feature {
  double size = std::numeric_limits<double>::infinity();
  std::string name;
  void take(double s, std::string n) {
    if (s < size) size = s, name = std::move(n);
  }
};

inline double ring_gap(const std::vector<Point>& a, const std::vector<Point>& b) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      best = std::min(best, segment_segment_distance(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()]));
  return best;
}

/// Smallest feature among terminals (short bbox side, pairwise gap) and tree
/// edges; what the thickening radius must stay below twice of.
inline Feature limiting_feature(const std::vector<PlanarSet>& terminals, const SteinerTree& tree,
                                const std::string& label) {
  Feature f;
  for (std::size_t i = 0; i < terminals.size(); ++i) {
    const auto b = bounding_box(terminals[i]);
    // The frame terminal of St_c is large by construction; its gap counts.
    f.take(std::min(b.width(), b.height()), label + " terminal " + std::to_string(i) + " width");
    for (std::size_t j = i + 1; j < terminals.size(); ++j)
      for (const auto& ri : terminals[i].rings())
        for (const auto& rj : terminals[j].rings())
          f.take(ring_gap(ri.points, rj.points),
                 "gap between " + label + " terminals " + std::to_string(i) + " and " + std::to_string(j));
  }
  for (std::size_t k = 0; k < tree.edges.size(); ++k)
    f.take(tree.edges[k].length, label + " tree edge " + std::to_string(k));
  return f;
}

inline void check_epsilons(const std::vector<double>& eps, const Feature& f) {
  for (std::size_t k = 0; k < eps.size(); ++k) {
    if (!(eps[k] > 0)) throw ValidationError("bad_epsilon", "epsilon values must be positive");
    if (k > 0 && !(eps[k] < eps[k - 1])) throw ValidationError("bad_epsilon", "epsilon values must decrease");
    if (!(eps[k] < f.size / 2)) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "epsilon " << eps[k] << " is not below half of the " << f.name << " (" << f.size << ")";
      throw ValidationError("epsilon_too_large", msg.str());
    }
  }
}

/// Nearest edge of the set boundary to p: its endpoints.
inline std::pair<Point, Point> boundary_edge_at(const PlanarSet& e, const Point& p) {
  std::pair<Point, Point> best;
  double bd = std::numeric_limits<double>::infinity();
  for (const auto& r : e.rings())
    for (std::size_t k = 0; k < r.points.size(); ++k) {
      const Point a = r.points[k], b = r.points[(k + 1) % r.points.size()];
      const double d = distance(closest_on_segment(p, a, b), p);
      if (d < bd) bd = d, best = {a, b};
    }
  return best;
}

/// Where an St attachment point and an St_c attachment point share a
/// boundary location, slide the St attachment along the boundary edge by
/// 3 eps so the corridor of St leaves the complement slit open beside it.
inline SteinerTree separate_shared_endpoints(SteinerTree s, const SteinerTree& sc, const PlanarSet& e,
                                             double eps) {
  for (auto& v : s.vertices) {
    if (v.kind != VertexKind::kTerminal) continue;
    const TreeVertex* clash = nullptr;
    for (const auto& w : sc.vertices)
      if (w.kind == VertexKind::kTerminal && distance(w.p, v.p) < 3 * eps) clash = &w;
    if (!clash) continue;
    const auto [a, b] = boundary_edge_at(e, v.p);
    const double len = distance(a, b);
    const Point t{(b.x - a.x) / len, (b.y - a.y) / len};
    const double at = dot(v.p - a, t);
    const double away = dot(v.p - clash->p, t) >= 0 ? 1.0 : -1.0;
    double shift = std::numeric_limits<double>::quiet_NaN();
    for (double sgn : {away, -away}) {
      const double target = at + sgn * 3 * eps;
      if (target - eps >= 0 && target + eps <= len && distance(a + target * t, clash->p) >= 2 * eps) {
        shift = sgn * 3 * eps;
        break;
      }
    }
    if (std::isnan(shift)) {
      throw ValidationError("corridor_interference",
                            "connector corridors meet at a shared endpoint with no room to separate; use a smaller epsilon");
    }
    v.p = v.p + shift * t;
  }
  for (auto& ed : s.edges) ed.length = distance(s.vertices[ed.a].p, s.vertices[ed.b].p);
  return s;
}

inline PlanarSet thicken_or_empty(const SteinerTree& t, double eps) { return t.empty() ? PlanarSet{} : thicken(t, eps); }

}  // namespace detail

/// E_eps = E u N_eps(St(E)): connected, perimeter -> P + 2St.
inline RecoverySequence recovery_sequence_connected(const PlanarSet& e, const std::vector<double>& epsilons,
                                                    const steiner::Options& opt = {}) {
  RecoverySequence seq;
  seq.report = connected_perimeter(e, opt);
  seq.target = seq.report.connected_perimeter;
  detail::check_epsilons(epsilons, detail::limiting_feature(st_terminals(e), seq.report.tree, "St"));
  for (double eps : epsilons) {
    PlanarSet s = seq.report.tree.empty() ? e : set_union(e, thicken(seq.report.tree, eps));
    if (!is_connected(s)) {
      throw ValidationError("recovery_failed", "recovery set at epsilon " + std::to_string(eps) + " is disconnected");
    }
    seq.epsilons.push_back(eps);
    seq.perimeters.push_back(perimeter(s));
    seq.sets.push_back(std::move(s));
  }
  if (seq.epsilons.size() >= 2) seq.fit = fit_line(seq.epsilons, seq.perimeters);
  return seq;
}

/// (E \ N_eps(St_c(E))) u N_eps(St(E)): one outer ring, no holes, perimeter
/// -> P + 2St + 2St_c.
inline RecoverySequence recovery_sequence_simply_connected(const PlanarSet& e, const std::vector<double>& epsilons,
                                                           const steiner::Options& opt = {},
                                                           double frame_radius = 0.0) {
  RecoverySequence seq;
  seq.report = simply_connected_perimeter(e, opt, frame_radius);
  seq.target = *seq.report.simply_connected_perimeter;
  const double R = frame_radius > 0 ? frame_radius : default_frame_radius(e);
  detail::Feature f = detail::limiting_feature(st_terminals(e), seq.report.tree, "St");
  const auto fc = detail::limiting_feature(st_c_terminals(e, R), *seq.report.complement_tree, "St_c");
  if (fc.size < f.size) f = fc;
  detail::check_epsilons(epsilons, f);
  for (double eps : epsilons) {
    const SteinerTree s = detail::separate_shared_endpoints(seq.report.tree, *seq.report.complement_tree, e, eps);
    PlanarSet cut = seq.report.complement_tree->empty() ? e : set_difference(e, thicken(*seq.report.complement_tree, eps));
    PlanarSet out = s.empty() ? cut : set_union(cut, thicken(s, eps));
    if (!is_simply_connected(out)) {
      throw ValidationError("corridor_interference", "recovery set at epsilon " + std::to_string(eps) +
                                                         " is not simply connected; use a smaller epsilon");
    }
    seq.epsilons.push_back(eps);
    seq.perimeters.push_back(perimeter(out));
    seq.sets.push_back(std::move(out));
  }
  if (seq.epsilons.size() >= 2) seq.fit = fit_line(seq.epsilons, seq.perimeters);
  return seq;
}

struct LiminfMember {
  double perimeter = 0.0;
  double symmetric_difference = 0.0;
  bool connected = true;
  double deficit = 0.0;  // target - P(E_n); positive means below the bound
};

struct LiminfReport {
  double target = 0.0;  // P + 2St of the limit set
  std::vector<LiminfMember> members;
  double tail_min = std::numeric_limits<double>::infinity();
  double limit_estimate = 0.0;  // intercept of P(E_n) against |E_n delta E|
  bool passed = true;
  std::vector<std::string> warnings;
};

/// Numerical witness of P(E) + 2St(E) <= liminf P_C(E_n): every connected
/// member from `tail_start` on must have P(E_n) >= target - tol.
inline LiminfReport liminf_spotcheck(const std::vector<PlanarSet>& sequence, const PlanarSet& e, double tol = 1e-6,
                                     std::size_t tail_start = 0, const steiner::Options& opt = {}) {
  LiminfReport rep;
  rep.target = connected_perimeter(e, opt).connected_perimeter;
  std::vector<double> xs, ys;
  for (std::size_t n = 0; n < sequence.size(); ++n) {
    LiminfMember m;
    m.connected = is_connected(sequence[n]);
    m.perimeter = perimeter(sequence[n]);
    m.symmetric_difference = symmetric_difference_area(sequence[n], e);
    m.deficit = rep.target - m.perimeter;
    if (!m.connected) {
      rep.warnings.push_back("member " + std::to_string(n) + " is disconnected; its connected perimeter is infinite");
    } else if (n >= tail_start) {
      rep.tail_min = std::min(rep.tail_min, m.perimeter);
      xs.push_back(m.symmetric_difference);
      ys.push_back(m.perimeter);
    }
    rep.members.push_back(m);
  }
  rep.passed = rep.tail_min >= rep.target - tol;
  rep.limit_estimate = xs.size() >= 2 ? fit_line(xs, ys).intercept : rep.tail_min;
  return rep;
}

/// Two unit squares at `gap` joined by a horizontal neck of width w.
inline PlanarSet dumbbell(double w, double gap = 3.0) {
  const double lo = 0.5 - w / 2, hi = 0.5 + w / 2, x1 = 1.0 + gap, x2 = 2.0 + gap;
  if (!(w > 0 && w < 1)) throw ValidationError("bad_width", "neck width must lie in (0, 1)");
  return PlanarSet::from_rings({{{{0, 0}, {1, 0}, {1, lo}, {x1, lo}, {x1, 0}, {x2, 0}, {x2, 1}, {x1, 1}, {x1, hi},
                                  {1, hi}, {1, 1}, {0, 1}},
                                 RingKind::kOuter,
                                 std::nullopt}});
}

}  // namespace connperim
