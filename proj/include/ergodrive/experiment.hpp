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

// Experiment layer behind the command-line tool: a flat key/value
// configuration, the commands that turn it into output documents, and the
// named figure presets.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ergodrive/drive_geometry.hpp"
#include "ergodrive/ergotropy.hpp"
#include "ergodrive/noisy_dynamics.hpp"
#include "ergodrive/serialization.hpp"
#include "ergodrive/triad_optimizer.hpp"

namespace ergodrive {

struct ExperimentConfig {
  // initial state (Bloch spherical coordinates) and budget
  double r = 1.0;
  double theta0 = 0.5 * kPi;
  double phi0 = 0.0;
  double omega_max = 2.0;

  std::vector<NoiseKind> noise{NoiseKind::none};
  double gamma = 0.4;
  double zeta = 5.0;
  double psi = kPi / 8.0;

  std::optional<double> beta;  // pins the drive; otherwise geodesic (curves) or optimised (triad)

  double dt = 1e-3;
  std::optional<double> t_max;  // default 10, or 20 when attractor noise is involved
  int record_stride = 1;

  std::vector<double> gamma_grid;  // empty: gamma_min..gamma_max in gamma_step
  double gamma_min = 0.0;
  double gamma_max = 0.5;
  double gamma_step = 0.05;

  double beta_min = 0.0;
  double beta_max = 0.5 * kPi;
  int beta_points = 181;
  bool refine = true;

  std::string output = "-";
  OutputFormat format = OutputFormat::csv;
  unsigned threads = 0;
};

// Keys accepted in config files and as --key flags.
inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "r",         "theta0",     "phi0",       "omega-max", "noise",     "gamma",      "zeta",       "psi",
      "beta",      "dt",         "t-max",      "record-stride", "gamma-grid", "gamma-min", "gamma-max",
      "gamma-step", "beta-min",  "beta-max",   "beta-points", "refine",   "output",     "format",     "threads"};
  return keys;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline double parse_plain(const std::string& s, const std::string& key) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (...) {
    used = 0;
  }
  require(used == s.size() && !s.empty(), ErrorKind::invalid_argument,
          "'" + key + "': cannot parse '" + s + "' as a number");
  return v;
}

}  // namespace detail

// Numbers may be written as decimals or as multiples of pi: "pi", "pi/8", "3*pi/4", "-pi/2".
inline double parse_number(const std::string& text, const std::string& key = "value") {
  const std::string s = detail::trim(text);
  const auto at = s.find("pi");
  if (at == std::string::npos) return detail::parse_plain(s, key);
  std::string coef = detail::trim(s.substr(0, at));
  std::string rest = detail::trim(s.substr(at + 2));
  double scale = 1.0;
  if (!coef.empty() && coef.back() == '*') coef = detail::trim(coef.substr(0, coef.size() - 1));
  if (coef == "-") scale = -1.0;
  else if (!coef.empty()) scale = detail::parse_plain(coef, key);
  double den = 1.0;
  if (!rest.empty()) {
    detail::require(rest.front() == '/', ErrorKind::invalid_argument, "'" + key + "': cannot parse '" + s + "'");
    den = detail::parse_plain(detail::trim(rest.substr(1)), key);
    detail::require(den != 0.0, ErrorKind::invalid_argument, "'" + key + "': division by zero in '" + s + "'");
  }
  return scale * kPi / den;
}

inline bool parse_bool(const std::string& s, const std::string& key) {
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw Error(ErrorKind::invalid_argument, "'" + key + "': expected a boolean, got '" + s + "'");
}

inline std::vector<NoiseKind> parse_noise_list(const std::string& s) {
  std::vector<NoiseKind> kinds;
  for (const auto& item : detail::split(s, ',')) {
    if (item == "all") {
      for (NoiseKind k : {NoiseKind::none, NoiseKind::adc, NoiseKind::pdc, NoiseKind::dpc, NoiseKind::attractor}) {
        kinds.push_back(k);
      }
    } else if (item == "markovian") {
      for (NoiseKind k : {NoiseKind::adc, NoiseKind::pdc, NoiseKind::dpc}) kinds.push_back(k);
    } else {
      kinds.push_back(parse_noise_kind(item));
    }
  }
  detail::require(!kinds.empty(), ErrorKind::invalid_argument, "'noise': empty list");
  return kinds;
}

inline void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& raw) {
  const std::string v = detail::trim(raw);
  auto num = [&] { return parse_number(v, key); };
  auto integer = [&] {
    const double x = num();
    detail::require(x == std::floor(x), ErrorKind::invalid_argument, "'" + key + "' must be an integer");
    return static_cast<long>(x);
  };
  if (key == "r") c.r = num();
  else if (key == "theta0") c.theta0 = num();
  else if (key == "phi0") c.phi0 = num();
  else if (key == "omega-max") c.omega_max = num();
  else if (key == "noise") c.noise = parse_noise_list(v);
  else if (key == "gamma") c.gamma = num();
  else if (key == "zeta") c.zeta = num();
  else if (key == "psi") c.psi = num();
  else if (key == "beta") c.beta = (v == "none" || v.empty()) ? std::nullopt : std::optional<double>(num());
  else if (key == "dt") c.dt = num();
  else if (key == "t-max") c.t_max = (v == "auto" || v.empty()) ? std::nullopt : std::optional<double>(num());
  else if (key == "record-stride") c.record_stride = static_cast<int>(integer());
  else if (key == "gamma-grid") {
    c.gamma_grid.clear();
    for (const auto& item : detail::split(v, ',')) c.gamma_grid.push_back(parse_number(item, key));
  }
  else if (key == "gamma-min") c.gamma_min = num();
  else if (key == "gamma-max") c.gamma_max = num();
  else if (key == "gamma-step") c.gamma_step = num();
  else if (key == "beta-min") c.beta_min = num();
  else if (key == "beta-max") c.beta_max = num();
  else if (key == "beta-points") c.beta_points = static_cast<int>(integer());
  else if (key == "refine") c.refine = parse_bool(v, key);
  else if (key == "output") c.output = v;
  else if (key == "format") c.format = parse_output_format(v);
  else if (key == "threads") c.threads = static_cast<unsigned>(std::max(0L, integer()));
  else throw Error(ErrorKind::invalid_argument, "unknown configuration key '" + key + "'");
}

// Flat "key = value" text; '#' starts a comment.
inline void apply_config_text(ExperimentConfig& c, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    detail::require(eq != std::string::npos, ErrorKind::invalid_argument,
                    "config line " + std::to_string(lineno) + ": expected 'key = value'");
    apply_setting(c, detail::trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

inline void apply_config_file(ExperimentConfig& c, const std::string& path) {
  std::ifstream in(path);
  detail::require(static_cast<bool>(in), ErrorKind::io, "cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(c, buf.str());
}

inline void validate(const ExperimentConfig& c) {
  auto req = [](bool ok, const std::string& msg) { detail::require(ok, ErrorKind::invalid_argument, msg); };
  req(c.r > 0.0 && c.r <= 1.0, "r must lie in (0, 1]");
  req(c.theta0 > 0.0 && c.theta0 <= kPi, "theta0 must lie in (0, pi]");
  req(c.phi0 >= 0.0 && c.phi0 < 2.0 * kPi, "phi0 must lie in [0, 2pi)");
  req(c.omega_max > 0.0, "omega-max must be positive");
  req(c.gamma >= 0.0, "gamma must be non-negative");
  req(c.zeta > 0.0, "zeta must be positive");
  req(!c.beta || std::abs(*c.beta) <= 0.5 * kPi + 1e-12, "beta must lie in [-pi/2, pi/2]");
  req(c.dt > 0.0, "dt must be positive");
  req(!c.t_max || *c.t_max >= c.dt, "t-max must be at least dt");
  req(c.record_stride >= 1, "record-stride must be >= 1");
  req(c.gamma_step > 0.0 && c.gamma_max >= c.gamma_min && c.gamma_min >= 0.0, "invalid gamma grid");
  req(c.beta_min >= -0.5 * kPi - 1e-12 && c.beta_max <= 0.5 * kPi + 1e-12 && c.beta_max >= c.beta_min,
      "beta grid must lie within [-pi/2, pi/2]");
  req(c.beta_points >= 1, "beta-points must be >= 1");
  req(c.beta_points == 1 || c.beta_max > c.beta_min, "beta grid needs beta-max > beta-min");
}

inline std::vector<double> gamma_values(const ExperimentConfig& c) {
  if (!c.gamma_grid.empty()) return c.gamma_grid;
  std::vector<double> v;
  const long n = std::lround(std::floor((c.gamma_max - c.gamma_min) / c.gamma_step + 1e-9));
  for (long i = 0; i <= n; ++i) v.push_back(c.gamma_min + static_cast<double>(i) * c.gamma_step);
  return v;
}

inline BetaGrid beta_grid(const ExperimentConfig& c) { return {c.beta_min, c.beta_max, c.beta_points}; }

inline DensityOperator initial_state(const ExperimentConfig& c) {
  return density_from_bloch(BlochVector::spherical(c.r, c.theta0, c.phi0));
}

inline NoiseSpec noise_spec(const ExperimentConfig& c, NoiseKind kind) {
  switch (kind) {
    case NoiseKind::none: return NoiseSpec::none();
    case NoiseKind::attractor: return NoiseSpec::attractor_at_angle(c.psi, c.zeta);
    default: return NoiseSpec::markovian(kind, c.gamma);
  }
}

inline IntegratorConfig integrator_for(const ExperimentConfig& c, const std::vector<NoiseKind>& kinds) {
  IntegratorConfig ic;
  ic.dt = c.dt;
  ic.record_stride = c.record_stride;
  const bool attractor = std::find(kinds.begin(), kinds.end(), NoiseKind::attractor) != kinds.end();
  ic.t_max = c.t_max.value_or(attractor ? 20.0 : 10.0);
  ic.validate();
  return ic;
}

inline OptimizerConfig optimizer_for(const ExperimentConfig& c) {
  OptimizerConfig o;
  o.grid = beta_grid(c);
  o.refine = c.refine;
  o.threads = c.threads;
  return o;
}

// Resolved configuration as metadata; replaying these keys reproduces the run.
inline Json config_metadata(const ExperimentConfig& c, const std::string& command) {
  Json m;
  m["command"] = command;
  m["r"] = c.r;
  m["theta0"] = c.theta0;
  m["phi0"] = c.phi0;
  m["omega-max"] = c.omega_max;
  std::string kinds;
  for (std::size_t i = 0; i < c.noise.size(); ++i) kinds += (i ? "," : "") + std::string(to_string(c.noise[i]));
  m["noise"] = kinds;
  m["gamma"] = c.gamma;
  m["zeta"] = c.zeta;
  m["psi"] = c.psi;
  m["beta"] = c.beta ? Json(*c.beta) : Json("none");
  m["dt"] = c.dt;
  m["t-max"] = c.t_max ? Json(*c.t_max) : Json("auto");
  m["record-stride"] = c.record_stride;
  std::string grid;
  const auto gammas = gamma_values(c);
  for (std::size_t i = 0; i < gammas.size(); ++i) grid += (i ? "," : "") + format_number(gammas[i]);
  m["gamma-grid"] = grid;
  m["beta-min"] = c.beta_min;
  m["beta-max"] = c.beta_max;
  m["beta-points"] = c.beta_points;
  m["refine"] = c.refine ? "true" : "false";
  m["format"] = to_string(c.format);
  return m;
}

// ---------------------------------------------------------------------------

struct Document {
  std::string label;  // distinguishes documents of one command, e.g. the noise kind
  std::string content;
  OutputFormat format = OutputFormat::csv;
};

struct CommandResult {
  std::vector<Document> documents;
  std::string summary;
};

namespace detail {

inline std::string fmt_opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string("-"); }

inline void require_kinds(const ExperimentConfig& c) {
  require(!c.noise.empty(), ErrorKind::invalid_argument, "no noise kind selected");
}

}  // namespace detail

inline CommandResult cmd_work_curve(const ExperimentConfig& c) {
  validate(c);
  detail::require_kinds(c);
  const DensityOperator rho0 = initial_state(c);
  const EnergyBudget budget(c.omega_max);
  const IntegratorConfig ic = integrator_for(c, c.noise);
  const double beta = c.beta.value_or(0.5 * kPi);
  const DriveSpec drive = pacifying_drive(c.theta0, c.phi0, beta, budget);

  CommandResult out;
  std::ostringstream summary;
  for (NoiseKind kind : c.noise) {
    const WorkTrajectory traj = integrate(rho0, drive, noise_spec(c, kind), ic);
    const WorkMaximum m = maximum_work(traj);
    summary << to_string(kind) << ": max W = " << format_number(m.work) << " at t = " << detail::fmt_opt(m.time)
            << (m.attained ? "" : " (not attained)") << "\n";
    Json meta = config_metadata(c, "work-curve");
    out.documents.push_back({to_string(kind), render(trajectory_table(traj, std::move(meta)), c.format), c.format});
  }
  out.summary = summary.str();
  return out;
}

inline CommandResult cmd_gamma_sweep(const ExperimentConfig& c) {
  validate(c);
  detail::require_kinds(c);
  for (NoiseKind kind : c.noise) {
    detail::require(kind != NoiseKind::attractor, ErrorKind::invalid_argument,
                    "gamma-sweep does not apply to attractor noise; use beta-scan instead");
    detail::require(is_markovian(kind), ErrorKind::invalid_argument,
                    "gamma-sweep needs a Markovian noise kind (adc, pdc, dpc)");
  }
  const DensityOperator rho0 = initial_state(c);
  const EnergyBudget budget(c.omega_max);
  const IntegratorConfig ic = integrator_for(c, c.noise);
  const auto gammas = gamma_values(c);

  CommandResult out;
  std::ostringstream summary;
  for (NoiseKind kind : c.noise) {
    const SweepTable sweep = gamma_sweep(rho0, kind, gammas, budget, optimizer_for(c), ic);
    summary << to_string(kind) << ":\n  gamma  W_O  t_star  P_star  beta_star\n";
    for (const auto& row : sweep.rows) {
      summary << "  " << format_number(row.parameter) << "  " << format_number(row.work) << "  "
              << detail::fmt_opt(row.t_star) << "  " << detail::fmt_opt(row.power) << "  "
              << format_number(row.beta_star) << "\n";
    }
    out.documents.push_back(
        {to_string(kind), render(sweep_table(sweep, config_metadata(c, "gamma-sweep")), c.format), c.format});
  }
  out.summary = summary.str();
  return out;
}

inline CommandResult cmd_beta_scan(const ExperimentConfig& c) {
  validate(c);
  detail::require_kinds(c);
  const DensityOperator rho0 = initial_state(c);
  const EnergyBudget budget(c.omega_max);
  const std::vector<double> betas = beta_grid(c).values();

  CommandResult out;
  std::ostringstream summary;
  for (NoiseKind kind : c.noise) {
    const IntegratorConfig ic = integrator_for(c, {kind});
    const SweepTable scan = beta_scan(rho0, noise_spec(c, kind), betas, budget, optimizer_for(c), ic);
    summary << to_string(kind) << ": ";
    if (scan.best) {
      const SweepRow& b = scan.rows[*scan.best];
      summary << "beta* = " << format_number(b.parameter) << ", t* = " << detail::fmt_opt(b.t_star)
              << ", W(t*) = " << format_number(b.work) << "\n";
    } else {
      summary << "no drive reaches its maximum within the horizon\n";
    }
    out.documents.push_back(
        {to_string(kind), render(sweep_table(scan, config_metadata(c, "beta-scan")), c.format), c.format});
  }
  out.summary = summary.str();
  return out;
}

inline CommandResult cmd_triad(const ExperimentConfig& c) {
  validate(c);
  detail::require_kinds(c);
  const DensityOperator rho0 = initial_state(c);
  const EnergyBudget budget(c.omega_max);

  CommandResult out;
  std::ostringstream summary;
  for (NoiseKind kind : c.noise) {
    const IntegratorConfig ic = integrator_for(c, {kind});
    const NoiseSpec noise = noise_spec(c, kind);
    const ExtractionTriad t = c.beta ? triad_for_beta(rho0, noise, budget, *c.beta, ic, optimizer_for(c))
                                     : operational_ergotropy(rho0, noise, budget, optimizer_for(c), ic);
    summary << to_string(kind) << ": W_O = " << format_number(t.work) << ", t* = " << detail::fmt_opt(t.t_star)
            << ", beta* = " << format_number(t.beta_star) << ", " << (t.attained ? "attained" : "not attained")
            << "\n";
    Json meta = config_metadata(c, "triad");
    meta["format"] = to_string(OutputFormat::json);
    meta["noise_kind"] = to_string(kind);
    out.documents.push_back({to_string(kind), to_json(triad_table(t, std::move(meta))), OutputFormat::json});
  }
  out.summary = summary.str();
  return out;
}

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig1a", "fig1b", "fig1c", "fig2", "fig3"};
  return names;
}

// Runs a figure preset on top of `base` (state, budget, dt and output settings
// are taken from it). Document labels are prefixed with the preset name.
inline CommandResult cmd_preset(const std::string& name, ExperimentConfig base) {
  auto tag = [&](CommandResult r, const std::string& extra) {
    for (auto& d : r.documents) d.label = name + (extra.empty() ? "" : "_" + extra) + "_" + d.label;
    return r;
  };
  auto merge = [](CommandResult& into, CommandResult more) {
    for (auto& d : more.documents) into.documents.push_back(std::move(d));
    into.summary += more.summary;
  };

  CommandResult out;
  if (name == "fig1a") {
    base.noise = {NoiseKind::none, NoiseKind::adc, NoiseKind::pdc, NoiseKind::dpc};
    base.gamma = 0.4;
    if (!base.t_max) base.t_max = 3.0;
    out = tag(cmd_work_curve(base), "");
  } else if (name == "fig1b") {
    base.noise = {NoiseKind::adc, NoiseKind::pdc, NoiseKind::dpc};
    out = tag(cmd_gamma_sweep(base), "");
  } else if (name == "fig1c") {
    base.noise = {NoiseKind::none, NoiseKind::attractor};
    base.zeta = 5.0;
    base.psi = kPi / 8.0;
    if (!base.t_max) base.t_max = 20.0;
    ExperimentConfig geodesic = base;
    geodesic.beta = 0.5 * kPi;
    ExperimentConfig bisector = base;
    bisector.beta = 0.0;
    out.summary += "geodesic drive (beta = pi/2):\n";
    merge(out, tag(cmd_work_curve(geodesic), "geodesic"));
    out.summary += "bisector drive (beta = 0):\n";
    merge(out, tag(cmd_work_curve(bisector), "beta0"));
  } else if (name == "fig2") {
    base.noise = {NoiseKind::none, NoiseKind::adc, NoiseKind::pdc, NoiseKind::dpc};
    base.gamma = 0.25;
    out = tag(cmd_beta_scan(base), "");
  } else if (name == "fig3") {
    base.noise = {NoiseKind::attractor, NoiseKind::none};
    base.zeta = 5.0;
    base.psi = kPi / 8.0;
    out = tag(cmd_beta_scan(base), "");
  } else {
    std::string known;
    for (const auto& n : preset_names()) known += " " + n;
    throw Error(ErrorKind::invalid_argument, "unknown preset '" + name + "' (known:" + known + ")");
  }
  return out;
}

// ---------------------------------------------------------------------------

inline const char* extension(OutputFormat f) { return f == OutputFormat::csv ? ".csv" : ".json"; }

// Target files for a command's documents. "-" means standard output. A single
// document goes to `output` verbatim; several documents go to
// <stem>_<label><ext>, or into the directory `output` when `as_directory`.
inline std::vector<std::string> output_paths(const std::string& output, const std::vector<Document>& docs,
                                             bool as_directory = false) {
  namespace fs = std::filesystem;
  std::vector<std::string> paths;
  if (output == "-") return std::vector<std::string>(docs.size(), "-");
  if (as_directory) {
    for (const auto& d : docs) paths.push_back((fs::path(output) / (d.label + extension(d.format))).string());
    return paths;
  }
  if (docs.size() == 1) return {output};
  const fs::path p(output);
  for (const auto& d : docs) {
    fs::path target = p.parent_path() / (p.stem().string() + "_" + d.label + p.extension().string());
    if (!p.has_extension()) target += extension(d.format);
    paths.push_back(target.string());
  }
  return paths;
}

inline void write_documents(const std::vector<Document>& docs, const std::vector<std::string>& paths,
                            std::ostream& stdout_stream) {
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (paths[i] == "-") {
      stdout_stream << docs[i].content;
      continue;
    }
    std::ofstream f(paths[i], std::ios::binary);
    detail::require(static_cast<bool>(f), ErrorKind::io, "cannot open output file '" + paths[i] + "'");
    f << docs[i].content;
    f.close();
    detail::require(!f.fail(), ErrorKind::io, "failed writing output file '" + paths[i] + "'");
  }
}

}  // namespace ergodrive
