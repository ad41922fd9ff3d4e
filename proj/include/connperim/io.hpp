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

// File formats: polygon JSON, CONNGRID pixel files, tree, decomposition and
// energy JSON, the Gamow trace CSV and run manifests.
//
// Doubles go through nlohmann's shortest round-trip formatting, so every
// value parses back to the same bits. Rationals are written as "p/q" strings.

#pragma once

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "connperim/decomposition.hpp"
#include "connperim/gamow.hpp"
#include "connperim/relaxed.hpp"

namespace connperim {

using Json = nlohmann::json;
// Keys in insertion order keep emitted files readable and stable.
using OrderedJson = nlohmann::ordered_json;

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ValidationError("io", "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ValidationError("io", "cannot write " + p.string());
  out << text;
}

namespace detail {

inline OrderedJson number_json(double v) { return v; }
inline OrderedJson number_json(const Rational& v) {
  if (denominator(v) == 1 && abs(numerator(v)) < (boost::multiprecision::cpp_int(1) << 53)) {
    return numerator(v).convert_to<long long>();
  }
  std::ostringstream ss;
  ss << numerator(v) << '/' << denominator(v);
  return ss.str();
}

inline double parse_number(const Json& j, double*) {
  if (!j.is_number()) throw ValidationError("bad_json", "expected a number, got " + j.dump());
  return j.get<double>();
}

inline Rational parse_number(const Json& j, Rational*) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number()) return ScalarTraits<Rational>::from_double(j.get<double>());
  if (!j.is_string()) throw ValidationError("bad_json", "expected a number or \"p/q\", got " + j.dump());
  const auto s = j.get<std::string>();
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
    return Rational(boost::multiprecision::cpp_int(s.substr(0, slash)),
                    boost::multiprecision::cpp_int(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ValidationError("bad_json", "malformed rational '" + s + "'");
  }
}

template <class T>
OrderedJson points_json(const std::vector<Vec2<T>>& pts) {
  OrderedJson a = OrderedJson::array();
  for (const auto& p : pts) a.push_back(OrderedJson::array({number_json(p.x), number_json(p.y)}));
  return a;
}

template <class T>
std::vector<Vec2<T>> parse_points(const Json& j) {
  if (!j.is_array()) throw ValidationError("bad_json", "points must be an array of [x, y]");
  std::vector<Vec2<T>> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw ValidationError("bad_json", "point must be [x, y], got " + p.dump());
    out.push_back({parse_number(p[0], static_cast<T*>(nullptr)), parse_number(p[1], static_cast<T*>(nullptr))});
  }
  return out;
}

inline Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError("bad_json", what + ": " + e.what());
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Polygon JSON

template <class T>
OrderedJson to_json(const BasicPlanarSet<T>& s) {
  OrderedJson rings = OrderedJson::array();
  for (const auto& r : s.rings()) {
    OrderedJson o;
    o["points"] = detail::points_json(r.points);
    o["kind"] = r.kind == RingKind::kOuter ? "outer" : "hole";
    o["parent"] = r.parent ? OrderedJson(*r.parent) : OrderedJson(nullptr);
    rings.push_back(std::move(o));
  }
  OrderedJson out;
  out["rings"] = std::move(rings);
  return out;
}

template <class T = double>
BasicPlanarSet<T> planar_set_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rings") || !j["rings"].is_array()) {
    throw ValidationError("bad_json", "polygon JSON needs a \"rings\" array");
  }
  std::vector<BasicRing<T>> rings;
  for (const auto& r : j["rings"]) {
    if (!r.is_object() || !r.contains("points")) throw ValidationError("bad_json", "ring needs \"points\"");
    BasicRing<T> ring;
    ring.points = detail::parse_points<T>(r["points"]);
    const std::string kind = r.value("kind", "outer");
    if (kind != "outer" && kind != "hole") throw ValidationError("bad_json", "ring kind must be outer or hole");
    ring.kind = kind == "outer" ? RingKind::kOuter : RingKind::kHole;
    if (r.contains("parent") && !r["parent"].is_null()) {
      if (!r["parent"].is_number_unsigned()) throw ValidationError("bad_json", "parent must be a ring index or null");
      ring.parent = r["parent"].get<std::size_t>();
    }
    rings.push_back(std::move(ring));
  }
  return BasicPlanarSet<T>::from_rings(std::move(rings));
}

template <class T = double>
BasicPlanarSet<T> read_planar_set(const std::filesystem::path& p) {
  return planar_set_from_json<T>(detail::parse_json(read_text(p), p.string()));
}

// ---------------------------------------------------------------------------
// CONNGRID: "CONNGRID w h h_value [origin_x origin_y]" then h rows of w
// characters 0/1, top row first.

inline std::string to_conngrid(const PixelSet& s) {
  std::ostringstream out;
  auto num = [](double v) { return detail::number_json(v).dump(); };
  out << "CONNGRID " << s.width() << ' ' << s.height() << ' ' << num(s.h());
  if (s.grid().origin.x != 0.0 || s.grid().origin.y != 0.0) out << ' ' << num(s.grid().origin.x) << ' ' << num(s.grid().origin.y);
  out << '\n';
  for (int j = s.height() - 1; j >= 0; --j) {
    for (int i = 0; i < s.width(); ++i) out << (s.at(i, j) ? '1' : '0');
    out << '\n';
  }
  return out.str();
}

inline PixelSet pixel_set_from_conngrid(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) throw ValidationError("bad_conngrid", "empty file");
  std::istringstream hs(header);
  std::string magic;
  GridSpec g;
  hs >> magic >> g.width >> g.height >> g.h;
  if (magic != "CONNGRID" || !hs || g.width <= 0 || g.height <= 0) {
    throw ValidationError("bad_conngrid", "header must read 'CONNGRID w h h_value'");
  }
  double ox = 0.0, oy = 0.0;
  if (hs >> ox) {
    if (!(hs >> oy)) throw ValidationError("bad_conngrid", "origin needs two coordinates");
    g.origin = {ox, oy};
  }
  std::vector<std::uint8_t> occ(static_cast<std::size_t>(g.width) * g.height, 0);
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    std::string cells;
    for (char c : line) {
      if (c == '0' || c == '1') cells.push_back(c);
      else if (!std::isspace(static_cast<unsigned char>(c))) throw ValidationError("bad_conngrid", "cells must be 0 or 1");
    }
    if (cells.empty()) continue;
    if (row >= g.height) throw ValidationError("bad_conngrid", "more rows than the header declares");
    if (static_cast<int>(cells.size()) != g.width) {
      throw ValidationError("bad_conngrid", "row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                                                " cells, expected " + std::to_string(g.width));
    }
    const int j = g.height - 1 - row;
    for (int i = 0; i < g.width; ++i) occ[static_cast<std::size_t>(j) * g.width + i] = cells[i] == '1';
    ++row;
  }
  if (row != g.height) throw ValidationError("bad_conngrid", "fewer rows than the header declares");
  return PixelSet(g, std::move(occ));
}

// ---------------------------------------------------------------------------
// Trees

inline OrderedJson to_json(const SteinerTree& t) {
  OrderedJson verts = OrderedJson::array(), edges = OrderedJson::array(), comps = OrderedJson::array();
  for (const auto& v : t.vertices) {
    OrderedJson o;
    o["point"] = OrderedJson::array({v.p.x, v.p.y});
    o["kind"] = v.kind == VertexKind::kTerminal ? "terminal" : "branch";
    o["region"] = v.region >= 0 ? OrderedJson(v.region) : OrderedJson(nullptr);
    verts.push_back(std::move(o));
  }
  for (const auto& e : t.edges) edges.push_back({{"a", e.a}, {"b", e.b}, {"length", e.length}});
  for (const auto& c : t.per_component) comps.push_back(c);
  OrderedJson out;
  out["vertices"] = std::move(verts);
  out["edges"] = std::move(edges);
  out["total_length"] = t.total_length;
  out["certified"] = t.certified;
  out["topology_id"] = t.topology_id;
  out["components"] = std::move(comps);
  return out;
}

inline SteinerTree tree_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges")) {
    throw ValidationError("bad_json", "tree JSON needs vertices and edges");
  }
  SteinerTree t;
  try {
    for (const auto& v : j["vertices"]) {
      TreeVertex tv;
      tv.p = detail::parse_points<double>(Json::array({v.at("point")})).front();
      tv.kind = v.at("kind").get<std::string>() == "terminal" ? VertexKind::kTerminal : VertexKind::kBranch;
      tv.region = v.contains("region") && !v["region"].is_null() ? v["region"].get<int>() : -1;
      t.vertices.push_back(tv);
    }
    for (const auto& e : j["edges"]) {
      TreeEdge te;
      te.a = e.at("a").get<std::size_t>();
      te.b = e.at("b").get<std::size_t>();
      if (te.a >= t.vertices.size() || te.b >= t.vertices.size()) throw ValidationError("bad_json", "edge endpoint out of range");
      te.length = e.contains("length") ? e["length"].get<double>() : distance(t.vertices[te.a].p, t.vertices[te.b].p);
      t.edges.push_back(te);
    }
    t.certified = j.value("certified", true);
    if (j.contains("total_length") && j.contains("topology_id") && j.contains("components")) {
      t.total_length = j["total_length"].get<double>();
      t.topology_id = j["topology_id"].get<std::string>();
      t.per_component = j["components"].get<std::vector<std::vector<std::size_t>>>();
    } else {
      const bool certified = t.certified;
      connperim::finalize(t);
      t.certified = certified;
    }
  } catch (const Json::exception& e) {
    throw ValidationError("bad_json", std::string("tree JSON: ") + e.what());
  }
  return t;
}

inline bool same_tree(const SteinerTree& a, const SteinerTree& b) {
  if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
  for (std::size_t k = 0; k < a.vertices.size(); ++k) {
    const auto &u = a.vertices[k], &v = b.vertices[k];
    if (u.p.x != v.p.x || u.p.y != v.p.y || u.kind != v.kind || u.region != v.region) return false;
  }
  for (std::size_t k = 0; k < a.edges.size(); ++k)
    if (a.edges[k].a != b.edges[k].a || a.edges[k].b != b.edges[k].b || a.edges[k].length != b.edges[k].length) return false;
  return a.total_length == b.total_length && a.certified == b.certified && a.topology_id == b.topology_id &&
         a.per_component == b.per_component;
}

// ---------------------------------------------------------------------------
// Decompositions and reports

template <class T>
OrderedJson to_json(const BasicJordanDecomposition<T>& d) {
  OrderedJson plus = OrderedJson::array(), minus = OrderedJson::array(), nest = OrderedJson::array();
  for (const auto& c : d.plus_curves) plus.push_back(detail::points_json(c));
  for (const auto& c : d.minus_curves) minus.push_back(detail::points_json(c));
  auto ref = [](const auto& r) { return OrderedJson{{"kind", r.plus ? "plus" : "minus"}, {"index", r.index}}; };
  for (const auto& [outer, inner] : d.nesting) nest.push_back({{"container", ref(outer)}, {"contained", ref(inner)}});
  double total = 0.0;
  for (const auto& c : d.plus_curves) total += LengthOf<T>::to_double(ring_length(c));
  for (const auto& c : d.minus_curves) total += LengthOf<T>::to_double(ring_length(c));
  OrderedJson out;
  out["plus_curves"] = std::move(plus);
  out["minus_curves"] = std::move(minus);
  out["nesting"] = std::move(nest);
  out["component_assignment"] = d.component_assignment;
  out["total_length"] = total;
  return out;
}

inline OrderedJson to_json(const ClauseReport& r) {
  OrderedJson out;
  out["ok"] = r.ok();
  out["clauses"] = std::vector<bool>(r.pass.begin(), r.pass.end());
  out["messages"] = r.messages;
  return out;
}

inline OrderedJson to_json(const EnergyReport& r) {
  OrderedJson out;
  out["perimeter"] = r.perimeter;
  out["steiner"] = r.steiner;
  out["connected_perimeter"] = r.connected_perimeter;
  if (r.steiner_complement) out["steiner_complement"] = *r.steiner_complement;
  if (r.simply_connected_perimeter) out["simply_connected_perimeter"] = *r.simply_connected_perimeter;
  out["certified"] = r.certified;
  out["tree"] = to_json(r.tree);
  if (r.complement_tree) out["complement_tree"] = to_json(*r.complement_tree);
  return out;
}

inline OrderedJson to_json(const GamowEnergy& e) {
  OrderedJson out;
  out["functional"] = to_string(e.functional);
  out["total"] = e.total;
  out["perimeter"] = e.perimeter;
  out["steiner"] = e.steiner;
  out["steiner_complement"] = e.steiner_complement;
  out["riesz"] = e.riesz;
  out["mass"] = e.mass;
  out["components"] = e.components;
  out["holes"] = e.holes;
  return out;
}

inline OrderedJson to_json(const GamowConfig& c) {
  OrderedJson out;
  out["alpha"] = c.alpha;
  out["mass"] = c.mass;
  out["h"] = c.h;
  out["functional"] = to_string(c.functional);
  out["seed"] = c.seed;
  out["init"] = to_string(c.init);
  out["separation"] = c.separation;
  out["frame"] = c.frame;
  out["max_components"] = c.max_components;
  out["snapshot_every"] = c.snapshot_every;
  out["schedule"] = {{"t0", c.schedule.t0},
                     {"cooling", c.schedule.cooling},
                     {"sweeps", c.schedule.sweeps},
                     {"moves_per_sweep", c.schedule.moves_per_sweep}};
  return out;
}

/// Config files may give any subset of the fields; the rest keep defaults.
inline GamowConfig gamow_config_from_json(const Json& j, GamowConfig c = {}) {
  try {
    c.alpha = j.value("alpha", c.alpha);
    c.mass = j.value("mass", c.mass);
    c.h = j.value("h", c.h);
    if (j.contains("functional")) c.functional = functional_from_string(j["functional"].get<std::string>());
    c.seed = j.value("seed", c.seed);
    if (j.contains("init")) c.init = init_shape_from_string(j["init"].get<std::string>());
    c.separation = j.value("separation", c.separation);
    c.frame = j.value("frame", c.frame);
    c.max_components = j.value("max_components", c.max_components);
    c.snapshot_every = j.value("snapshot_every", c.snapshot_every);
    if (j.contains("schedule")) {
      const auto& s = j["schedule"];
      c.schedule.t0 = s.value("t0", c.schedule.t0);
      c.schedule.cooling = s.value("cooling", c.schedule.cooling);
      c.schedule.sweeps = s.value("sweeps", c.schedule.sweeps);
      c.schedule.moves_per_sweep = s.value("moves_per_sweep", c.schedule.moves_per_sweep);
      // A final temperature fixes the cooling factor.
      if (s.contains("t_final") && c.schedule.sweeps > 0) {
        c.schedule.cooling = std::pow(s["t_final"].get<double>() / c.schedule.t0, 1.0 / c.schedule.sweeps);
      }
    }
  } catch (const Json::exception& e) {
    throw ValidationError("bad_json", std::string("gamow config: ") + e.what());
  }
  return c;
}

inline std::string trace_csv(const AnnealTrace& t) {
  std::ostringstream out;
  auto num = [](double v) { return detail::number_json(v).dump(); };
  out << "sweep,temperature,energy,perimeter,steiner_term,steiner_complement_term,riesz,components,acceptance,"
         "diameter_bound_ok,phase\n";
  for (const auto& r : t.sweeps) {
    out << r.sweep << ',' << num(r.temperature) << ',' << num(r.energy) << ',' << num(r.perimeter) << ','
        << num(r.steiner_term) << ',' << num(r.steiner_complement_term) << ',' << num(r.riesz) << ',' << r.components
        << ',' << num(r.acceptance) << ',' << (r.diameter_bound_ok ? 1 : 0) << ','
        << (r.recovery ? "connect" : "anneal") << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Run manifests

struct RunManifest {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::vector<std::pair<std::string, std::string>> flags;
  std::string version = kVersion;
  std::optional<std::uint64_t> seed;
  double wall_seconds = 0.0;
  std::vector<std::string> outputs;
};

inline OrderedJson to_json(const RunManifest& m) {
  OrderedJson flags = OrderedJson::object();
  for (const auto& [k, v] : m.flags) flags[k] = v;
  OrderedJson out;
  out["subcommand"] = m.subcommand;
  out["inputs"] = m.inputs;
  out["flags"] = std::move(flags);
  out["version"] = m.version;
  out["seed"] = m.seed ? OrderedJson(*m.seed) : OrderedJson(nullptr);
  out["wall_seconds"] = m.wall_seconds;
  out["outputs"] = m.outputs;
  return out;
}

/// One manifest per directory: a later run replaces the earlier one.
inline void write_manifest(const std::filesystem::path& dir, const RunManifest& m) {
  write_text(dir / "manifest.json", to_json(m).dump(2) + "\n");
}

}  // namespace connperim
