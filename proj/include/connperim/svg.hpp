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

// SVG pictures: sets in gray, J+ curves solid, J- curves dashed, Steiner
// trees bold (S solid, S^c dashed).

#pragma once

#include <sstream>

#include "connperim/decomposition.hpp"
#include "connperim/relaxed.hpp"

namespace connperim {

class SvgCanvas {
 public:
  explicit SvgCanvas(BoundingBox box, double width_px = 640.0) {
    const double pad = 0.05 * std::max({box.hi.x - box.lo.x, box.hi.y - box.lo.y, 1e-9});
    lo_ = {box.lo.x - pad, box.lo.y - pad};
    hi_ = {box.hi.x + pad, box.hi.y + pad};
    scale_ = width_px / (hi_.x - lo_.x);
    stroke_ = 1.5 / scale_;
  }

  /// Filled region; holes cut out by the even-odd rule.
  template <class T>
  void set(const BasicPlanarSet<T>& s, const std::string& fill = "#c8c8c8") {
    if (s.rings().empty()) return;
    body_ << "<path fill=\"" << fill << "\" fill-rule=\"evenodd\" stroke=\"none\" d=\"";
    for (const auto& r : s.rings()) path(r.points);
    body_ << "\"/>\n";
  }

  template <class T>
  void curve(const std::vector<Vec2<T>>& pts, bool dashed, const std::string& color = "#000") {
    body_ << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << stroke_ << "\"";
    if (dashed) body_ << " stroke-dasharray=\"" << 6 * stroke_ << ',' << 4 * stroke_ << "\"";
    body_ << " d=\"";
    path(pts);
    body_ << "\"/>\n";
  }

  void tree(const SteinerTree& t, bool dashed, const std::string& color = "#b00") {
    for (const auto& e : t.edges) {
      const Point a = t.vertices[e.a].p, b = t.vertices[e.b].p;
      body_ << "<line x1=\"" << a.x << "\" y1=\"" << a.y << "\" x2=\"" << b.x << "\" y2=\"" << b.y << "\" stroke=\"" << color
            << "\" stroke-width=\"" << 3 * stroke_ << "\" stroke-linecap=\"round\"";
      if (dashed) body_ << " stroke-dasharray=\"" << 8 * stroke_ << ',' << 6 * stroke_ << "\"";
      body_ << "/>\n";
    }
    for (const auto& v : t.vertices)
      if (v.kind == VertexKind::kBranch)
        body_ << "<circle cx=\"" << v.p.x << "\" cy=\"" << v.p.y << "\" r=\"" << 3 * stroke_ << "\" fill=\"" << color << "\"/>\n";
  }

  void label(const std::string& text) { title_ = text; }

  std::string str() const {
    std::ostringstream out;
    const double w = (hi_.x - lo_.x) * scale_, h = (hi_.y - lo_.y) * scale_;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' '
        << h << "\">\n";
    if (!title_.empty()) out << "<title>" << title_ << "</title>\n";
    // Flip y so that the picture has the usual orientation.
    out << "<g transform=\"matrix(" << scale_ << " 0 0 " << -scale_ << ' ' << -lo_.x * scale_ << ' ' << hi_.y * scale_
        << ")\">\n"
        << body_.str() << "</g>\n</svg>\n";
    return out.str();
  }

 private:
  template <class T>
  void path(const std::vector<Vec2<T>>& pts) {
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const Point p = to_double(pts[k]);
      body_ << (k ? " L" : "M") << p.x << ' ' << p.y;
    }
    body_ << " Z ";
  }

  Point lo_, hi_;
  double scale_ = 1.0, stroke_ = 1.0;
  std::ostringstream body_;
  std::string title_;
};

template <class T>
BoundingBox svg_box(const BasicPlanarSet<T>& s) {
  BoundingBox b;
  for (const auto& r : s.rings())
    for (const auto& p : r.points) b.add(to_double(p));
  return b;
}

template <class T>
std::string svg_decomposition(const BasicPlanarSet<T>& s, const BasicJordanDecomposition<T>& d) {
  SvgCanvas c(svg_box(s));
  c.set(s);
  for (const auto& j : d.plus_curves) c.curve(j, false);
  for (const auto& j : d.minus_curves) c.curve(j, true);
  return c.str();
}

inline std::string svg_tree(const PlanarSet& s, const SteinerTree& t) {
  BoundingBox b = svg_box(s);
  for (const auto& v : t.vertices) b.add(v.p);
  SvgCanvas c(b);
  c.set(s);
  c.tree(t, false);
  return c.str();
}

/// The set with S solid and, when present, S^c dashed. The frame circle of
/// S^c is left out; tree edges reaching it stay visible.
inline std::string svg_energy(const PlanarSet& s, const EnergyReport& r) {
  BoundingBox b = svg_box(s);
  for (const auto& v : r.tree.vertices) b.add(v.p);
  SvgCanvas c(b);
  c.set(s);
  for (const auto& ring : s.rings()) c.curve(ring.points, false, "#555");
  c.tree(r.tree, false);
  if (r.complement_tree) c.tree(*r.complement_tree, true, "#05a");
  return c.str();
}

inline std::string svg_pixels(const PixelSet& s, const std::string& title = "") {
  const PlanarSet p = to_planar_set(s);
  BoundingBox b;
  b.add(s.grid().origin);
  b.add(Point{s.grid().origin.x + s.width() * s.h(), s.grid().origin.y + s.height() * s.h()});
  SvgCanvas c(b, 480.0);
  c.label(title);
  c.set(p, "#808080");
  for (const auto& ring : p.rings()) c.curve(ring.points, ring.kind == RingKind::kHole);
  return c.str();
}

}  // namespace connperim
