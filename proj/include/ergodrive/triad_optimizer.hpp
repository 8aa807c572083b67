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

// Operational ergotropy: maximise extracted work over time and over the plane
// family of pacifying drives, reporting the triad (W_O, t*, beta*).
//
// Per drive, the work maximum is read off the trajectory. Interior local maxima
// are refined with a three-point parabola so that revisits of the same peak in
// periodic trajectories compare equal to ~1e-13 rather than to the sampling
// resolution. The first peak within `peak_tol` of the global maximum defines t*.
// A maximum sitting on the final sample is reported as not attained.
//
// The drive is chosen in two stages: a coarse beta grid, then golden-section
// refinement on the winner's bracket. Drives are ranked by work, with ties
// (within `tie_tol`) broken by the earlier t*.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ergodrive/drive_geometry.hpp"
#include "ergodrive/golden_section.hpp"
#include "ergodrive/noisy_dynamics.hpp"
#include "ergodrive/parallel.hpp"

namespace ergodrive {

struct WorkMaximum {
  double work = 0.0;
  std::optional<double> time;  // empty when the maximum is not attained within the horizon
  bool attained = false;
  double final_slope = 0.0;
};

struct ExtractionTriad {
  double work = 0.0;             // W_O
  std::optional<double> t_star;  // empty = not attained
  double beta_star = 0.0;
  bool attained = false;
  double final_slope = 0.0;

  std::optional<double> power() const {
    if (!attained || !t_star || *t_star <= 0.0) return std::nullopt;
    return work / *t_star;
  }
};

struct BetaGrid {
  double lo = 0.0;
  double hi = 0.5 * kPi;
  int points = 181;

  std::vector<double> values() const {
    detail::require(points >= 1, ErrorKind::invalid_argument, "beta grid needs at least one point");
    detail::require(points == 1 || hi > lo, ErrorKind::invalid_argument, "beta grid must be increasing");
    (void)BetaParameter(lo);
    (void)BetaParameter(hi);
    std::vector<double> v(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
      v[static_cast<std::size_t>(i)] = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
    }
    v.back() = points == 1 ? lo : hi;
    return v;
  }
  double spacing() const { return points > 1 ? (hi - lo) / (points - 1) : 0.0; }
};

struct OptimizerConfig {
  BetaGrid grid;
  bool refine = true;
  double refine_width = 1e-4;
  double peak_tol = 1e-9;
  double tie_tol = 1e-8;
  double plateau_slope = 1e-6;
  unsigned threads = 0;
};

// ---------------------------------------------------------------------------

// Earliest time at which W >= level - tol, linearly interpolated between the
// bracketing samples.
inline std::optional<double> first_passage_time(const WorkTrajectory& traj, double level, double tol) {
  detail::require(!traj.samples.empty(), ErrorKind::invalid_argument, "first_passage_time: empty trajectory");
  detail::require(tol > 0.0, ErrorKind::invalid_argument, "first_passage_time: tol must be positive");
  const double threshold = level - tol;
  const auto& s = traj.samples;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].work >= threshold) {
      if (i == 0) return s[0].t;
      const double w0 = s[i - 1].work;
      const double w1 = s[i].work;
      const double frac = w1 > w0 ? std::clamp((threshold - w0) / (w1 - w0), 0.0, 1.0) : 1.0;
      return s[i - 1].t + frac * (s[i].t - s[i - 1].t);
    }
  }
  return std::nullopt;
}

namespace detail {

struct Peak {
  double t;
  double work;
};

inline Peak refine_peak(const TrajectorySample& a, const TrajectorySample& b, const TrajectorySample& c) {
  const double x0 = a.t - b.t;
  const double x2 = c.t - b.t;
  const double y0 = a.work - b.work;
  const double y2 = c.work - b.work;
  // y = p x + q x^2 through (x0, y0), (x2, y2)
  const double det = x0 * x2 * (x2 - x0);
  const double p = (y0 * x2 * x2 - y2 * x0 * x0) / det;
  const double q = (y2 * x0 - y0 * x2) / det;
  if (!(q < 0.0)) return {b.t, b.work};
  const double x = std::clamp(-p / (2.0 * q), x0, x2);
  return {b.t + x, std::max(b.work, b.work + p * x + q * x * x)};
}

}  // namespace detail

inline WorkMaximum maximum_work(const WorkTrajectory& traj, double peak_tol = 1e-9) {
  const auto& s = traj.samples;
  detail::require(!s.empty(), ErrorKind::invalid_argument, "maximum_work: empty trajectory");
  WorkMaximum out;
  if (s.size() == 1) {
    out.work = s[0].work;
    out.time = s[0].t;
    out.attained = true;
    return out;
  }
  const std::size_t last = s.size() - 1;
  out.final_slope = (s[last].work - s[last - 1].work) / (s[last].t - s[last - 1].t);

  // Candidates in time order; the flag marks the terminal sample.
  struct Candidate {
    detail::Peak peak;
    bool terminal;
  };
  std::vector<Candidate> candidates;
  if (s[0].work > s[1].work) candidates.push_back({{s[0].t, s[0].work}, false});
  for (std::size_t i = 1; i < last; ++i) {
    if (s[i].work >= s[i - 1].work && s[i].work > s[i + 1].work) {
      candidates.push_back({detail::refine_peak(s[i - 1], s[i], s[i + 1]), false});
    }
  }
  if (s[last].work >= s[last - 1].work) candidates.push_back({{s[last].t, s[last].work}, true});
  if (candidates.empty()) candidates.push_back({{s[0].t, s[0].work}, false});  // constant trajectory

  double best = -std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) best = std::max(best, c.peak.work);
  out.work = best;
  for (const auto& c : candidates) {
    if (c.peak.work >= best - peak_tol) {
      out.attained = !c.terminal;
      if (out.attained) out.time = c.peak.t;
      break;
    }
  }
  return out;
}

// The trajectory is classified as saturated when its maximum lies on the
// terminal sample and the final slope is below the plateau threshold.
inline bool is_saturated(const WorkMaximum& m, double plateau_slope = 1e-6) {
  return !m.attained && m.final_slope <= plateau_slope;
}

namespace detail {

struct DriveFamily {
  double theta0;
  double phi0;
};

inline DriveFamily drive_family(const DensityOperator& rho0) {
  const BlochVector v = bloch_from_density(rho0);
  require(v.norm() > 1e-12, ErrorKind::invalid_argument,
          "initial state is maximally mixed; no pacifying drive family exists");
  const double theta0 = v.polar();
  require(theta0 > 1e-12, ErrorKind::invalid_argument,
          "initial state is already passive; no pacifying drive family exists");
  return {theta0, v.azimuth()};
}

struct BetaEvaluation {
  double beta;
  WorkMaximum max;
};

inline bool better(const WorkMaximum& a, const WorkMaximum& b, double tie_tol) {
  if (a.work > b.work + tie_tol) return true;
  if (b.work > a.work + tie_tol) return false;
  const double ta = a.time.value_or(std::numeric_limits<double>::infinity());
  const double tb = b.time.value_or(std::numeric_limits<double>::infinity());
  return ta < tb;
}

inline IntegratorConfig horizon_for(const NoiseSpec& noise, const std::optional<IntegratorConfig>& config) {
  return config ? *config : IntegratorConfig::defaults_for(noise.kind());
}

}  // namespace detail

// Integrates the drive of the plane family at `beta` and reads off its work maximum.
inline WorkMaximum evaluate_drive(const DensityOperator& rho0, const NoiseSpec& noise, const EnergyBudget& budget,
                                  double beta, const IntegratorConfig& integrator, const OptimizerConfig& opt = {}) {
  const auto family = detail::drive_family(rho0);
  const DriveSpec drive = pacifying_drive(family.theta0, family.phi0, beta, budget);
  return maximum_work(integrate(rho0, drive, noise, integrator), opt.peak_tol);
}

inline ExtractionTriad triad_for_beta(const DensityOperator& rho0, const NoiseSpec& noise,
                                      const EnergyBudget& budget, double beta,
                                      const std::optional<IntegratorConfig>& integrator = std::nullopt,
                                      const OptimizerConfig& opt = {}) {
  const WorkMaximum m = evaluate_drive(rho0, noise, budget, beta, detail::horizon_for(noise, integrator), opt);
  return {m.work, m.time, beta, m.attained, m.final_slope};
}

inline ExtractionTriad operational_ergotropy(const DensityOperator& rho0, const NoiseSpec& noise,
                                             const EnergyBudget& budget, const OptimizerConfig& opt = {},
                                             const std::optional<IntegratorConfig>& integrator = std::nullopt) {
  const IntegratorConfig cfg = detail::horizon_for(noise, integrator);
  detail::drive_family(rho0);
  const std::vector<double> betas = opt.grid.values();

  const auto evals = parallel_map(betas.size(), opt.threads, [&](std::size_t i) {
    return detail::BetaEvaluation{betas[i], evaluate_drive(rho0, noise, budget, betas[i], cfg, opt)};
  });

  std::size_t win = 0;
  for (std::size_t i = 1; i < evals.size(); ++i) {
    if (detail::better(evals[i].max, evals[win].max, opt.tie_tol)) win = i;
  }
  detail::BetaEvaluation best = evals[win];

  if (opt.refine && betas.size() > 1) {
    const double lo = betas[win == 0 ? 0 : win - 1];
    const double hi = betas[std::min(win + 1, betas.size() - 1)];
    if (hi - lo > opt.refine_width) {
      const auto refined = golden_section_search(
          lo, hi, opt.refine_width,
          [&](double beta) { return evaluate_drive(rho0, noise, budget, beta, cfg, opt); },
          [&](const WorkMaximum& a, const WorkMaximum& b) { return detail::better(a, b, opt.tie_tol); });
      if (detail::better(refined.value, best.max, opt.tie_tol)) best = {refined.x, refined.value};
    }
  }
  return {best.max.work, best.max.time, best.beta, best.max.attained, best.max.final_slope};
}

// ---------------------------------------------------------------------------

enum class SweepVariable { gamma, beta };

inline const char* to_string(SweepVariable v) { return v == SweepVariable::gamma ? "gamma" : "beta"; }

struct SweepRow {
  double parameter = 0.0;
  double work = 0.0;
  std::optional<double> t_star;
  std::optional<double> power;
  double beta_star = 0.0;
  bool attained = false;
};

struct SweepTable {
  SweepVariable variable = SweepVariable::gamma;
  NoiseKind noise = NoiseKind::none;
  std::vector<SweepRow> rows;
  std::optional<std::size_t> best;  // beta scans: row with the smallest t_star
};

namespace detail {

inline void require_increasing(const std::vector<double>& grid, const char* what) {
  require(!grid.empty(), ErrorKind::invalid_argument, std::string(what) + " grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    require(grid[i] > grid[i - 1], ErrorKind::invalid_argument, std::string(what) + " grid must be strictly increasing");
  }
}

inline SweepRow row_from(double parameter, const ExtractionTriad& t) {
  return {parameter, t.work, t.t_star, t.power(), t.beta_star, t.attained};
}

}  // namespace detail

inline SweepTable gamma_sweep(const DensityOperator& rho0, NoiseKind kind, const std::vector<double>& gammas,
                              const EnergyBudget& budget, const OptimizerConfig& opt = {},
                              const std::optional<IntegratorConfig>& integrator = std::nullopt) {
  detail::require(is_markovian(kind), ErrorKind::invalid_argument,
                  std::string("gamma sweeps need a Markovian channel, got '") + to_string(kind) +
                      "'; use a beta scan for attractor noise");
  detail::require_increasing(gammas, "gamma");
  SweepTable table;
  table.variable = SweepVariable::gamma;
  table.noise = kind;
  for (double g : gammas) {
    const NoiseSpec noise = NoiseSpec::markovian(kind, g);
    table.rows.push_back(detail::row_from(g, operational_ergotropy(rho0, noise, budget, opt, integrator)));
  }
  return table;
}

// Per beta: work maximum of that drive and the first time it is reached.
inline SweepTable beta_scan(const DensityOperator& rho0, const NoiseSpec& noise, const std::vector<double>& betas,
                            const EnergyBudget& budget, const OptimizerConfig& opt = {},
                            const std::optional<IntegratorConfig>& integrator = std::nullopt) {
  detail::require_increasing(betas, "beta");
  for (double b : betas) (void)BetaParameter(b);
  const IntegratorConfig cfg = detail::horizon_for(noise, integrator);

  SweepTable table;
  table.variable = SweepVariable::beta;
  table.noise = noise.kind();
  const auto maxima = parallel_map(betas.size(), opt.threads, [&](std::size_t i) {
    return evaluate_drive(rho0, noise, budget, betas[i], cfg, opt);
  });
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const WorkMaximum& m = maxima[i];
    table.rows.push_back(detail::row_from(betas[i], {m.work, m.time, betas[i], m.attained, m.final_slope}));
    if (m.attained && m.time && (!table.best || *m.time < *table.rows[*table.best].t_star)) table.best = i;
  }
  return table;
}

}  // namespace ergodrive
