// Copyright 2026 The ergodrive Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// CSV and JSON renderings of work trajectories and sweep tables.
//
// CSV: UTF-8, comma separated, '.' decimal point, 17 significant digits,
// metadata as leading "# key = value" lines, then one header row. Missing
// values (times that were never attained) are written as "nan".
// JSON: one object {"meta": {...}, "columns": [...], "rows": [[...], ...]}
// with missing values as null.

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ergodrive/noisy_dynamics.hpp"
#include "ergodrive/triad_optimizer.hpp"

namespace ergodrive {

using Json = nlohmann::ordered_json;

enum class OutputFormat { csv, json };

inline const char* to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

inline OutputFormat parse_output_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw Error(ErrorKind::invalid_argument, "output format must be 'csv' or 'json', got '" + s + "'");
}

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// A table cell: number, missing, or boolean.
struct Cell {
  enum class Kind { number, missing, boolean } kind = Kind::missing;
  double number = 0.0;
  bool flag = false;

  static Cell of(double v) { return {Kind::number, v, false}; }
  static Cell of(std::optional<double> v) { return v ? of(*v) : Cell{}; }
  static Cell of_bool(bool b) { return {Kind::boolean, 0.0, b}; }

  std::string csv() const {
    switch (kind) {
      case Kind::number: return format_number(number);
      case Kind::boolean: return flag ? "1" : "0";
      case Kind::missing: return "nan";
    }
    return "nan";
  }
  Json json() const {
    switch (kind) {
      case Kind::number: return std::isfinite(number) ? Json(number) : Json(nullptr);
      case Kind::boolean: return Json(flag);
      case Kind::missing: return Json(nullptr);
    }
    return nullptr;
  }
};

struct Table {
  Json meta = Json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline std::string meta_value_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_number(v.get<double>());
  return v.dump();
}

inline std::string to_csv(const Table& t) {
  std::ostringstream out;
  for (const auto& [key, value] : t.meta.items()) out << "# " << key << " = " << meta_value_text(value) << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i].csv();
    out << "\n";
  }
  return out.str();
}

inline std::string to_json(const Table& t) {
  Json doc;
  doc["meta"] = t.meta;
  doc["columns"] = t.columns;
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json r = Json::array();
    for (const auto& c : row) r.push_back(c.json());
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

inline std::string render(const Table& t, OutputFormat f) { return f == OutputFormat::csv ? to_csv(t) : to_json(t); }

// ---------------------------------------------------------------------------

inline Json describe(const DriveSpec& d) {
  Json j;
  j["axis"] = {d.axis.x(), d.axis.y(), d.axis.z()};
  j["coupling"] = d.coupling;
  j["duration"] = d.duration ? Json(*d.duration) : Json(nullptr);
  return j;
}

inline Json describe(const NoiseSpec& n) {
  Json j;
  j["kind"] = to_string(n.kind());
  if (is_markovian(n.kind())) j["gamma"] = n.gamma();
  if (n.kind() == NoiseKind::attractor) {
    j["attractor_bloch"] = {n.target().x, n.target().y, n.target().z};
    j["zeta"] = n.zeta();
  }
  return j;
}

inline Json describe(const IntegratorConfig& c) {
  Json j;
  j["dt"] = c.dt;
  j["t_max"] = c.t_max;
  j["record_stride"] = c.record_stride;
  return j;
}

inline const std::vector<std::string>& trajectory_columns() {
  static const std::vector<std::string> cols{"t", "W", "bloch_x", "bloch_y", "bloch_z", "purity"};
  return cols;
}

inline const std::vector<std::string>& sweep_columns(SweepVariable v) {
  static const std::vector<std::string> gamma{"gamma", "W_O", "t_star", "P_star", "beta_star", "attained"};
  static const std::vector<std::string> beta{"beta", "W_O", "t_star", "P_star", "beta_star", "attained"};
  return v == SweepVariable::gamma ? gamma : beta;
}

// `meta` carries the caller's resolved configuration; drive, noise and
// integrator settings of the run are appended to it.
inline Table trajectory_table(const WorkTrajectory& traj, Json meta = Json::object()) {
  Table t;
  t.meta = std::move(meta);
  t.meta["drive_spec"] = describe(traj.drive);
  t.meta["noise_spec"] = describe(traj.noise);
  t.meta["integrator_spec"] = describe(traj.config);
  t.columns = trajectory_columns();
  t.rows.reserve(traj.samples.size());
  for (const auto& s : traj.samples) {
    const BlochVector b = s.bloch();
    t.rows.push_back({Cell::of(s.t), Cell::of(s.work), Cell::of(b.x), Cell::of(b.y), Cell::of(b.z),
                      Cell::of(s.purity())});
  }
  return t;
}

inline Table sweep_table(const SweepTable& sweep, Json meta = Json::object()) {
  Table t;
  t.meta = std::move(meta);
  t.meta["sweep_variable"] = to_string(sweep.variable);
  t.meta["noise_kind"] = to_string(sweep.noise);
  if (sweep.best) {
    const SweepRow& b = sweep.rows[*sweep.best];
    t.meta["best_beta"] = b.parameter;
    t.meta["best_t_star"] = b.t_star ? Json(*b.t_star) : Json(nullptr);
    t.meta["best_W"] = b.work;
  }
  t.columns = sweep_columns(sweep.variable);
  for (const auto& r : sweep.rows) {
    t.rows.push_back({Cell::of(r.parameter), Cell::of(r.work), Cell::of(r.t_star), Cell::of(r.power),
                      Cell::of(r.beta_star), Cell::of_bool(r.attained)});
  }
  return t;
}

inline Table triad_table(const ExtractionTriad& triad, Json meta = Json::object()) {
  Table t;
  t.meta = std::move(meta);
  t.columns = {"W_O", "t_star", "beta_star", "attained", "P_star"};
  t.rows.push_back({Cell::of(triad.work), Cell::of(triad.t_star), Cell::of(triad.beta_star),
                    Cell::of_bool(triad.attained), Cell::of(triad.power())});
  return t;
}

}  // namespace ergodrive
