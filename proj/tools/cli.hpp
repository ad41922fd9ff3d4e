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

// The connperim command line. run() is separate from main() so tests can
// drive it in-process.

#pragma once

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>

#include "connperim/connperim.hpp"

namespace connperim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // `check` found a failing suite
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitUsage = 64;

namespace fs = std::filesystem;

/// Where a subcommand's results go: stdout, or files in --out plus a manifest.
class Sink {
 public:
  Sink(std::ostream& out, std::string subcommand) : out_(out) { manifest_.subcommand = std::move(subcommand); }

  void set_dir(const std::string& dir) {
    if (!dir.empty()) dir_ = fs::path(dir);
  }
  bool has_dir() const { return dir_.has_value(); }
  RunManifest& manifest() { return manifest_; }

  /// The primary JSON result: `name` in --out, otherwise stdout.
  void primary(const std::string& name, const OrderedJson& j) {
    if (dir_) {
      file(name, j.dump(2) + "\n");
    } else {
      out_ << j.dump(2) << '\n';
    }
  }

  void file(const std::string& name, const std::string& text) {
    if (!dir_) throw ValidationError("usage", "writing " + name + " needs --out");
    write_text(*dir_ / name, text);
    manifest_.outputs.push_back((*dir_ / name).string());
  }

  /// A file at an explicit path, such as --svg.
  void path(const std::string& p, const std::string& text) {
    write_text(p, text);
    manifest_.outputs.push_back(p);
  }

  void finish(const CLI::App& sub, double seconds) {
    for (const CLI::Option* opt : sub.get_options()) {
      if (opt->count() == 0 || opt->get_name() == "--help" || opt->get_positional()) continue;
      std::string joined;
      for (const auto& r : opt->results()) joined += (joined.empty() ? "" : ",") + r;
      manifest_.flags.emplace_back(opt->get_name(), opt->get_type_size() == 0 ? "true" : joined);
    }
    manifest_.wall_seconds = seconds;
    if (dir_) write_manifest(*dir_, manifest_);
  }

 private:
  std::ostream& out_;
  std::optional<fs::path> dir_;
  RunManifest manifest_;
};

inline bool is_conngrid(const std::string& text) { return text.rfind("CONNGRID", 0) == 0; }

inline steiner::Mode parse_mode(const std::string& m) {
  if (m == "exact") return steiner::Mode::kExact;
  if (m == "heuristic") return steiner::Mode::kHeuristic;
  return steiner::Mode::kAuto;
}

inline double default_oracle_h(const std::vector<PlanarSet>& regions) { return steiner::min_feature(regions) / 64.0; }

inline OrderedJson error_json(const std::string& kind, const std::string& detail) {
  OrderedJson j;
  j["error"] = kind;
  j["detail"] = detail;
  return j;
}

inline int run(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Connected and simply connected perimeters of planar sets", "connperim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  // decompose
  std::string input, svg, out_dir;
  bool exact = false, verify = false;
  auto* decompose = app.add_subcommand("decompose", "Jordan decomposition of a polygon set");
  decompose->add_option("input", input, "polygon JSON")->required()->check(CLI::ExistingFile);
  decompose->add_flag("--exact", exact, "read coordinates as rationals and decompose exactly");
  decompose->add_flag("--verify", verify, "append the clause-by-clause check");
  decompose->add_option("--svg", svg, "write a picture: J+ solid, J- dashed");
  decompose->add_option("--out", out_dir, "output directory");

  // steiner
  std::string mode = "auto";
  double grid_h = 0.0, frame_radius = 0.0;
  bool complement = false;
  auto* steiner_cmd = app.add_subcommand("steiner", "Steiner tree of the components (or of the complement)");
  steiner_cmd->add_option("input", input, "polygon JSON")->required()->check(CLI::ExistingFile);
  steiner_cmd->add_option("--mode", mode, "exact, heuristic or oracle")
      ->check(CLI::IsMember({"auto", "exact", "heuristic", "oracle"}));
  steiner_cmd->add_option("--grid-h", grid_h, "oracle cell size (default: smallest feature / 64)")
      ->check(CLI::PositiveNumber);
  steiner_cmd->add_flag("--complement", complement, "connect the holes and the exterior instead");
  steiner_cmd->add_option("--frame-radius", frame_radius, "frame radius for --complement")->check(CLI::NonNegativeNumber);
  steiner_cmd->add_option("--svg", svg, "write the tree over the set");
  steiner_cmd->add_option("--out", out_dir, "output directory");

  // perimeter
  auto* perimeter_cmd = app.add_subcommand("perimeter", "Perimeter, area and topology of a polygon set or CONNGRID");
  perimeter_cmd->add_option("input", input, "polygon JSON or CONNGRID")->required()->check(CLI::ExistingFile);
  perimeter_cmd->add_option("--out", out_dir, "output directory");

  // relaxed
  auto* relaxed = app.add_subcommand("relaxed", "Connected and simply connected perimeters");
  relaxed->add_option("input", input, "polygon JSON")->required()->check(CLI::ExistingFile);
  relaxed->add_option("--mode", mode, "Steiner solver: auto, exact or heuristic")
      ->check(CLI::IsMember({"auto", "exact", "heuristic"}));
  relaxed->add_option("--frame-radius", frame_radius, "radius R of the exterior frame")->check(CLI::NonNegativeNumber);
  relaxed->add_option("--svg", svg, "write the set with S solid and S^c dashed");
  relaxed->add_option("--out", out_dir, "output directory");

  // recover
  std::vector<double> epsilons{0.2, 0.1, 0.05, 0.025};
  bool simply = false;
  auto* recover = app.add_subcommand("recover", "Recovery sequence E_eps with P(E_eps) -> relaxed perimeter");
  recover->add_option("input", input, "polygon JSON")->required()->check(CLI::ExistingFile);
  recover->add_option("--eps", epsilons, "corridor widths")->delimiter(',')->check(CLI::PositiveNumber);
  recover->add_flag("--simply", simply, "simply connected sequence (cuts S^c out as well)");
  recover->add_option("--frame-radius", frame_radius, "radius R of the exterior frame")->check(CLI::NonNegativeNumber);
  recover->add_option("--out", out_dir, "output directory")->required();

  // gamow
  std::string config_path, functional, init;
  std::optional<double> alpha, mass, cell, t0, t_final, separation;
  std::optional<int> sweeps, snapshot_every, max_components;
  std::uint64_t seed = 0;
  auto* gamow = app.add_subcommand("gamow", "Anneal a liquid drop on the grid");
  gamow->add_option("--config", config_path, "JSON config; flags override it")->check(CLI::ExistingFile);
  gamow->add_option("--alpha", alpha, "Riesz exponent in (0, 2)");
  gamow->add_option("--mass", mass, "area of the drop");
  gamow->add_option("--functional", functional, "P, P_C_bar or P_S_bar")
      ->check(CLI::IsMember({"P", "P_C_bar", "P_S_bar"}));
  gamow->add_option("--seed", seed, "random seed")->required();
  gamow->add_option("--sweeps", sweeps, "annealing sweeps")->check(CLI::NonNegativeNumber);
  gamow->add_option("--cell-size", cell, "grid cell size h")->check(CLI::PositiveNumber);
  gamow->add_option("--init", init, "disk, square or dumbbell")->check(CLI::IsMember({"disk", "square", "dumbbell"}));
  gamow->add_option("--separation", separation, "dumbbell blob distance")->check(CLI::NonNegativeNumber);
  gamow->add_option("--t0", t0, "initial temperature")->check(CLI::PositiveNumber);
  gamow->add_option("--t-final", t_final, "final temperature; sets the cooling factor")->check(CLI::PositiveNumber);
  gamow->add_option("--max-components", max_components, "reject moves that split further")->check(CLI::PositiveNumber);
  gamow->add_option("--snapshot-every", snapshot_every, "SVG snapshot period in sweeps")->check(CLI::NonNegativeNumber);
  gamow->add_option("--out", out_dir, "output directory")->required();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Grid Steiner oracle next to the continuous solver");
  oracle->add_option("input", input, "polygon JSON")->required()->check(CLI::ExistingFile);
  oracle->add_option("--grid-h", grid_h, "cell size (default: smallest feature / 64)")->check(CLI::PositiveNumber);
  oracle->add_option("--out", out_dir, "output directory");

  // check
  auto* check = app.add_subcommand("check", "Run the invariant suites over the bundled fixtures");
  check->add_option("--out", out_dir, "output directory");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  Sink sink(out, sub->get_name());
  sink.set_dir(out_dir);
  if (!input.empty()) sink.manifest().inputs.push_back(input);
  steiner::Options opt;
  opt.mode = parse_mode(mode);
  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;

  try {
    if (sub == decompose) {
      if (exact) {
        const auto s = read_planar_set<Rational>(input);
        const auto d = boundary_decompose(s);
        auto j = to_json(d);
        if (verify) j["check"] = to_json(check_decomposition(d, s));
        sink.primary("decomposition.json", j);
        if (!svg.empty()) sink.path(svg, svg_decomposition(s, d));
      } else {
        const auto s = read_planar_set(input);
        const auto d = boundary_decompose(s);
        auto j = to_json(d);
        if (verify) j["check"] = to_json(check_decomposition(d, s));
        sink.primary("decomposition.json", j);
        if (!svg.empty()) sink.path(svg, svg_decomposition(s, d));
      }
    } else if (sub == steiner_cmd) {
      const auto s = read_planar_set(input);
      if (s.empty()) throw ValidationError("empty_set", "the input has no rings");
      const double R = frame_radius > 0 ? frame_radius : default_frame_radius(s);
      const auto terminals = complement ? st_c_terminals(s, R) : st_terminals(s);
      if (mode == "oracle") {
        const double h = grid_h > 0 ? grid_h : default_oracle_h(terminals);
        OrderedJson j;
        j["mode"] = "oracle";
        j["h"] = h;
        j["total_length"] = steiner::grid_oracle_regions(terminals, h);
        sink.primary("oracle.json", j);
      } else {
        const SteinerTree t = complement ? st_c(s, R, opt) : st(s, opt);
        sink.primary("tree.json", to_json(t));
        if (!svg.empty()) sink.path(svg, svg_tree(s, t));
      }
    } else if (sub == perimeter_cmd) {
      const std::string text = read_text(input);
      OrderedJson j;
      if (is_conngrid(text)) {
        const PixelSet p = pixel_set_from_conngrid(text);
        j["kind"] = "grid";
        j["perimeter"] = perimeter(p);
        j["crofton_perimeter"] = crofton_perimeter(p);
        j["drop_perimeter"] = drop_perimeter(p);
        j["area"] = area(p);
        j["components"] = components(p).components.size();
        j["holes"] = holes(p).size();
        j["diameter"] = diameter(p);
      } else {
        const PlanarSet s = planar_set_from_json(detail::parse_json(text, input));
        j["kind"] = "polygon";
        j["perimeter"] = perimeter(s);
        j["area"] = area(s);
        j["components"] = components(s).components.size();
        j["holes"] = holes(s).size();
        j["diameter"] = s.empty() ? 0.0 : diameter(s);
      }
      sink.primary("perimeter.json", j);
    } else if (sub == relaxed) {
      const auto s = read_planar_set(input);
      const auto r = simply_connected_perimeter(s, opt, frame_radius);
      sink.primary("energy.json", to_json(r));
      if (!svg.empty()) sink.path(svg, svg_energy(s, r));
    } else if (sub == recover) {
      const auto s = read_planar_set(input);
      const auto seq = simply ? recovery_sequence_simply_connected(s, epsilons, opt, frame_radius)
                              : recovery_sequence_connected(s, epsilons, opt);
      std::ostringstream csv;
      csv << "index,epsilon,perimeter\n";
      OrderedJson members = OrderedJson::array();
      for (std::size_t k = 0; k < seq.sets.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "set_%03zu.json", k);
        sink.file(name, to_json(seq.sets[k]).dump(2) + "\n");
        csv << k << ',' << detail::number_json(seq.epsilons[k]).dump() << ','
            << detail::number_json(seq.perimeters[k]).dump() << '\n';
        members.push_back({{"file", name},
                           {"epsilon", seq.epsilons[k]},
                           {"perimeter", seq.perimeters[k]},
                           {"connected", is_connected(seq.sets[k])},
                           {"simply_connected", is_simply_connected(seq.sets[k])}});
      }
      sink.file("sequence.csv", csv.str());
      OrderedJson j;
      j["kind"] = simply ? "simply_connected" : "connected";
      j["target"] = seq.target;
      j["intercept"] = seq.fit.intercept;
      j["slope"] = seq.fit.slope;
      j["intercept_error"] = std::abs(seq.fit.intercept - seq.target);
      j["members"] = std::move(members);
      j["report"] = to_json(seq.report);
      sink.primary("recovery.json", j);
    } else if (sub == gamow) {
      GamowConfig c;
      std::optional<double> config_t_final;
      if (!config_path.empty()) {
        const Json j = detail::parse_json(read_text(config_path), config_path);
        c = gamow_config_from_json(j);
        if (j.contains("schedule") && j["schedule"].contains("t_final")) config_t_final = j["schedule"]["t_final"].get<double>();
        sink.manifest().inputs.push_back(config_path);
      }
      if (alpha) c.alpha = *alpha;
      if (mass) c.mass = *mass;
      if (cell) c.h = *cell;
      if (!functional.empty()) c.functional = functional_from_string(functional);
      if (!init.empty()) c.init = init_shape_from_string(init);
      if (separation) c.separation = *separation;
      if (sweeps) c.schedule.sweeps = *sweeps;
      if (t0) c.schedule.t0 = *t0;
      if (max_components) c.max_components = *max_components;
      if (snapshot_every) c.snapshot_every = *snapshot_every;
      c.seed = seed;
      if (t_final) config_t_final = t_final;
      if (config_t_final && c.schedule.sweeps > 0) {
        if (!(*config_t_final > 0)) throw ValidationError("bad_schedule", "final temperature must be positive");
        c.schedule.cooling = std::pow(*config_t_final / c.schedule.t0, 1.0 / c.schedule.sweeps);
      }
      sink.manifest().seed = seed;

      const AnnealTrace t = minimize(c);
      const auto& e = t.final_energy;
      sink.file("config.json", to_json(c).dump(2) + "\n");
      sink.file("trace.csv", trace_csv(t));
      sink.file("final.conngrid", to_conngrid(t.final_state));
      for (const auto& [s, state] : t.snapshots) {
        char name[48];
        std::snprintf(name, sizeof name, "snapshots/sweep_%05d.svg", s);
        sink.file(name, svg_pixels(state, "sweep " + std::to_string(s)));
      }
      sink.file("final.svg", svg_pixels(t.final_state, "final"));
      OrderedJson j = to_json(e);
      j["isoperimetric_ratio"] = e.perimeter * e.perimeter / (4 * std::numbers::pi * e.mass);
      j["initial_energy"] = t.sweeps.empty() ? e.total : t.sweeps.front().energy;
      j["mass_cells"] = t.mass_cells;
      j["mass_conserved"] = t.mass_conserved;
      j["bookkeeping_error"] = t.bookkeeping_error;
      j["final_temperature"] = t.final_temperature;
      j["sweeps"] = c.schedule.sweeps;
      bool diam_ok = true;
      for (const auto& r : t.sweeps) diam_ok = diam_ok && r.diameter_bound_ok;
      j["diameter_bound_ok"] = diam_ok;
      if (t.before_recovery) {
        j["before_recovery"] = to_json(*t.before_recovery);
        j["bridge_cells"] = t.bridge_cells;
      }
      sink.primary("energy.json", j);
    } else if (sub == oracle) {
      const auto s = read_planar_set(input);
      if (s.empty()) throw ValidationError("empty_set", "the input has no rings");
      const auto terminals = st_terminals(s);
      const double h = grid_h > 0 ? grid_h : default_oracle_h(terminals);
      const double cont = steiner_regions(terminals, opt).total_length;
      const double grid = steiner::grid_oracle_regions(terminals, h);
      OrderedJson j;
      j["h"] = h;
      j["continuous_length"] = cont;
      j["grid_length"] = grid;
      j["lower_ok"] = cont <= grid + 1e-9;
      j["upper_ok"] = grid <= steiner::kMetricationFactor * cont + 4 * h;
      sink.primary("oracle.json", j);
    } else if (sub == check) {
      OrderedJson suites = OrderedJson::array();
      bool all = true;
      for (const auto& r : run_invariant_suites()) {
        all = all && r.passed();
        suites.push_back({{"suite", r.name}, {"passed", r.passed()}, {"checks", r.checks}, {"failures", r.failures}});
        err << (r.passed() ? "green " : "RED   ") << std::left << std::setw(14) << r.name << r.checks << " checks, "
            << std::fixed << std::setprecision(2) << r.seconds << " s\n";
        for (const auto& f : r.failures) err << "      " << f << '\n';
      }
      OrderedJson j;
      j["passed"] = all;
      j["suites"] = std::move(suites);
      sink.primary("check.json", j);
      if (!all) code = kExitFailed;
    }
  } catch (const ValidationError& e) {
    err << error_json(e.kind(), e.detail()).dump() << '\n';
    return kExitInvalid;
  } catch (const ResourceError& e) {
    err << error_json("resource", e.what()).dump() << '\n';
    return kExitInvalid;
  } catch (const fs::filesystem_error& e) {
    err << error_json("io", e.what()).dump() << '\n';
    return kExitInvalid;
  }

  sink.finish(*sub, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return code;
}

}  // namespace connperim::cli
