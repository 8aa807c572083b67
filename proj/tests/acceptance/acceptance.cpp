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

// Acceptance suite: one PASS/FAIL line per criterion, each with its measured
// values, its tolerance and its wall-clock budget. Exit status is non-zero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ergodrive/ergodrive.hpp"
#include "support/oracles.hpp"

using namespace ergodrive;

namespace {

const EnergyBudget kBudget(2.0);
constexpr double kDt = 1e-3;
const double kInvTwoRootTwo = 1.0 / (2.0 * std::sqrt(2.0));

DensityOperator plus_state() { return DensityOperator::pure(Eigen::Vector2cd(1.0, 1.0)); }
NoiseSpec paper_attractor() { return NoiseSpec::attractor_at_angle(kPi / 8.0, 5.0); }
double grid_width() { return OptimizerConfig{}.grid.spacing(); }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}
std::string num(const std::optional<double>& v) { return v ? num(*v) : std::string("none"); }

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [violated: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(const std::string& id, const std::string& title, double budget_s,
               const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.check(false, std::string("exception: ") + e.what());
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.check(elapsed < budget_s, "runtime " + num(elapsed) + " s exceeds " + num(budget_s) + " s");
  if (!o.ok) ++failures;
  std::printf("%s %-3s %s:%s (%.3f s, limit %g s)\n", o.ok ? "PASS" : "FAIL", id.c_str(), title.c_str(),
              o.detail.str().c_str(), elapsed, budget_s);
  std::fflush(stdout);
}

bool within(double v, double target, double tol) { return std::abs(v - target) <= tol; }

// ---------------------------------------------------------------------------

void noiseless_triad(Outcome& o) {
  const ExtractionTriad t = operational_ergotropy(plus_state(), NoiseSpec::none(), kBudget);
  o.detail << " W_O = " << num(t.work) << ", t* = " << num(t.t_star) << ", beta* = " << num(t.beta_star);
  o.check(within(t.work, 0.5, 1e-6), "W_O = 0.5 +- 1e-6");
  o.check(t.t_star && within(*t.t_star, kPi / 4.0, 2.0 * kDt), "t* = pi/4 +- 2 dt");
  o.check(within(t.beta_star, kPi / 2.0, grid_width()), "beta* = pi/2 +- grid width");
}

void closed_form_agreement(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double r = u(rng), theta = kPi * (0.001 + 0.999 * u(rng)), t = 0.01 + 4.0 * u(rng);
    const DensityOperator rho = density_from_bloch(BlochVector::spherical(r, theta, 0.0));
    IntegratorConfig c;
    c.dt = t / std::ceil(t / kDt);
    c.t_max = t;
    c.record_stride = static_cast<int>(std::lround(t / c.dt));
    const double w = integrate(rho, geodesic_drive(theta, 0.0, kBudget), NoiseSpec::none(), c).samples.back().work;
    const double half = 0.5 * kBudget.omega_max() * t;
    worst = std::max(worst, std::abs(w - r * std::sin(half) * std::sin(theta - half)));
  }
  o.detail << " max |W - closed form| = " << num(worst) << " over 1000 samples";
  o.check(worst <= 1e-8, "agreement within 1e-8");
}

void attractor_geodesic(Outcome& o) {
  IntegratorConfig c = IntegratorConfig::defaults_for(NoiseKind::attractor);
  const WorkTrajectory traj = integrate(plus_state(), drive_from_beta(BetaParameter(kPi / 2.0), kBudget),
                                        paper_attractor(), c);
  const double w20 = traj.samples.back().work;
  const auto passage = first_passage_time(traj, 0.5, 1e-4);
  o.detail << " W(20) = " << num(w20) << " (band [" << num(kInvTwoRootTwo - 1e-3) << ", " << num(kInvTwoRootTwo)
           << "]), first passage to 0.5: " << (passage ? num(*passage) : std::string("not attained"));
  o.check(w20 >= kInvTwoRootTwo - 1e-3 && w20 <= kInvTwoRootTwo, "W(20) within 1e-3 below 1/(2 sqrt 2)");
  o.check(!passage, "first passage to 0.5 not attained");
}

void attractor_bisector(Outcome& o) {
  const ExtractionTriad t = triad_for_beta(plus_state(), paper_attractor(), kBudget, 0.0);
  o.detail << " max W = " << num(t.work) << ", first-passage time to it = " << num(t.t_star);
  o.check(within(t.work, 0.5, 1e-4), "W reaches 0.5 +- 1e-4");
  o.check(t.t_star && within(*t.t_star, 3.026, 0.01), "t = 3.026 +- 0.01");
}

std::vector<double> paper_gammas() {
  std::vector<double> g;
  for (int i = 0; i <= 10; ++i) g.push_back(0.05 * i);
  return g;
}

std::vector<SweepTable> sweeps;

void markovian_monotonicity(Outcome& o) {
  for (NoiseKind k : {NoiseKind::adc, NoiseKind::pdc, NoiseKind::dpc}) {
    sweeps.push_back(gamma_sweep(plus_state(), k, paper_gammas(), kBudget));
    const SweepTable& s = sweeps.back();
    double worst_w = -INFINITY, worst_t = -INFINITY;
    for (std::size_t i = 1; i < s.rows.size(); ++i) {
      worst_w = std::max(worst_w, s.rows[i].work - s.rows[i - 1].work);
      if (s.rows[i].t_star && s.rows[i - 1].t_star) {
        worst_t = std::max(worst_t, *s.rows[i].t_star - *s.rows[i - 1].t_star);
      } else {
        o.check(false, std::string(to_string(k)) + " t* missing at gamma = " + num(s.rows[i].parameter));
      }
    }
    o.detail << " " << to_string(k) << ": max dW_O = " << num(worst_w) << ", max dt* = " << num(worst_t) << ";";
    o.check(worst_w <= 1e-8, std::string(to_string(k)) + " W_O nonincreasing");
    o.check(worst_t <= 1e-8, std::string(to_string(k)) + " t* nonincreasing");
  }
}

void power_reversal(Outcome& o) {
  o.check(sweeps.size() == 3, "sweeps from the monotonicity criterion available");
  for (const SweepTable& s : sweeps) {
    const bool rising = s.noise == NoiseKind::adc;
    double weakest = INFINITY;
    for (std::size_t i = 1; i < s.rows.size(); ++i) {
      if (!s.rows[i].power || !s.rows[i - 1].power) {
        o.check(false, std::string(to_string(s.noise)) + " P* missing");
        continue;
      }
      const double d = *s.rows[i].power - *s.rows[i - 1].power;
      weakest = std::min(weakest, rising ? d : -d);
    }
    o.detail << " " << to_string(s.noise) << ": P* " << num(*s.rows.front().power) << " -> "
             << num(*s.rows.back().power) << " (smallest step in the required direction " << num(weakest) << ");";
    o.check(weakest > 1e-8, std::string(to_string(s.noise)) + (rising ? " P* increasing" : " P* decreasing"));
  }
}

void beta_optimality(Outcome& o) {
  const std::vector<double> grid = OptimizerConfig{}.grid.values();
  for (const NoiseSpec& n : {NoiseSpec::adc(0.25), NoiseSpec::pdc(0.25), NoiseSpec::dpc(0.25), paper_attractor()}) {
    const SweepTable s = beta_scan(plus_state(), n, grid, kBudget);
    const double want = n.kind() == NoiseKind::attractor ? 0.0 : kPi / 2.0;
    if (!s.best) {
      o.check(false, std::string(to_string(n.kind())) + " has no attained row");
      continue;
    }
    const SweepRow& b = s.rows[*s.best];
    o.detail << " " << to_string(n.kind()) << ": argmin beta = " << num(b.parameter) << " (t = " << num(b.t_star)
             << ");";
    o.check(within(b.parameter, want, grid_width()),
            std::string(to_string(n.kind())) + " argmin beta = " + (want == 0.0 ? "0" : "pi/2") + " +- grid width");
  }
}

void property_suites(Outcome& o) {
  std::mt19937_64 rng(77);

  double passive_gap = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int d = 2 + i % 2;
    const ComplexMatrix rho = oracle::random_density(rng, d);
    const ComplexMatrix h = oracle::random_hermitian(rng, d);
    auto spectrum = [](const ComplexMatrix& m) {
      const Eigen::VectorXd v = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(m).eigenvalues();
      return std::vector<double>(v.data(), v.data() + v.size());
    };
    const double brute = oracle::brute_force_passive_energy(spectrum(rho), spectrum(h));
    const HermitianOperator hh(h);
    passive_gap = std::max(passive_gap, std::abs(energy(passive_state(DensityOperator(rho), hh), hh) - brute));
  }
  o.detail << " passive-state oracle gap " << num(passive_gap) << ";";
  o.check(passive_gap <= 1e-10, "passive state matches brute force within 1e-10");

  double trace_dev = 0.0, herm_dev = 0.0, min_eig = INFINITY;
  for (const NoiseSpec& n :
       {NoiseSpec::none(), NoiseSpec::adc(0.4), NoiseSpec::pdc(0.4), NoiseSpec::dpc(0.4), paper_attractor()}) {
    for (int rep = 0; rep < 3; ++rep) {
      const DensityOperator rho(oracle::random_density(rng, 2));
      const WorkTrajectory traj =
          integrate(rho, DriveSpec(oracle::random_unit(rng), 1.0), n, IntegratorConfig::defaults_for(n.kind()));
      for (const TrajectorySample& s : traj.samples) {
        trace_dev = std::max(trace_dev, std::abs(s.rho.trace().real() - 1.0));
        herm_dev = std::max(herm_dev, (s.rho - s.rho.adjoint()).cwiseAbs().maxCoeff());
        const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Matrix2>(0.5 * (s.rho + s.rho.adjoint())).eigenvalues();
        min_eig = std::min(min_eig, ev(0));
      }
    }
  }
  o.detail << " trace drift " << num(trace_dev) << ", hermiticity " << num(herm_dev) << ", min eigenvalue "
           << num(min_eig) << ";";
  o.check(trace_dev <= 1e-9, "trace preserved within 1e-9");
  o.check(herm_dev <= 1e-10, "hermiticity within 1e-10");
  o.check(min_eig >= -1e-8, "positivity within 1e-8");

  const double dt = 1e-4;
  IntegratorConfig c;
  c.dt = dt;
  c.t_max = 10.0;
  c.record_stride = 100;
  const DriveSpec bisector = drive_from_beta(BetaParameter(0.0), kBudget);
  const WorkTrajectory ode = integrate(plus_state(), bisector, paper_attractor(), c, AttractorScheme::ode);
  const WorkTrajectory map = integrate(plus_state(), bisector, paper_attractor(), c, AttractorScheme::discrete_map);
  double gap = 0.0;
  for (std::size_t i = 0; i < ode.samples.size(); ++i) {
    gap = std::max(gap, (ode.samples[i].bloch().vec() - map.samples[i].bloch().vec()).norm());
  }
  o.detail << " map vs ODE Bloch gap " << num(gap) << " (limit " << num(5.0 * dt) << ");";
  o.check(gap <= 5.0 * dt, "discrete map agrees with the ODE within 5 dt");

  double axis_err = 0.0, angle_err = 0.0;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < 100; ++i) {
    const double z = 1.0 - (i + 0.5) * 2.0 / 100.0;
    const double rr = std::sqrt(1.0 - z * z);
    const Vec3 n(rr * std::cos(golden * i), rr * std::sin(golden * i), z);
    const double angle = 0.1 + 2.9 * i / 99.0;
    const RotationGenerator g = generator_from_unitary(expm_su2(n, angle));
    axis_err = std::max(axis_err, (g.axis - n).norm());
    angle_err = std::max(angle_err, std::abs(g.angle - angle));
  }
  o.detail << " generator round trip axis " << num(axis_err) << ", angle " << num(angle_err);
  o.check(axis_err <= 1e-10 && angle_err <= 1e-10, "generator round trip within 1e-10");
}

void bisector_noiseless_time(Outcome& o) {
  const ExtractionTriad t = triad_for_beta(plus_state(), NoiseSpec::none(), kBudget, 0.0);
  o.detail << " t(beta = 0) = " << num(t.t_star) << " (pi/2 = " << num(kPi / 2.0) << ")";
  o.check(t.t_star && within(*t.t_star, kPi / 2.0, 2.0 * kDt), "t(beta = 0) = pi/2 +- 2 dt");
}

}  // namespace

int main() {
  std::printf("ergodrive acceptance suite (|+>, omega_max = 2, dt = %g, %u worker thread(s))\n", kDt,
              resolve_threads(threads_from_env()));
  criterion("1", "noiseless triad", 1.0, noiseless_triad);
  criterion("2", "closed-form agreement of the noiseless work curve", 5.0, closed_form_agreement);
  criterion("3a", "attractor, geodesic drive saturates below 1/(2 sqrt 2)", 10.0, attractor_geodesic);
  criterion("3b", "attractor, beta = 0 drive reaches 1/2", 10.0, attractor_bisector);
  criterion("4", "Markovian monotonicity of W_O and t*", 120.0, markovian_monotonicity);
  criterion("5", "power reversal across the gamma grid", 120.0, power_reversal);
  criterion("6", "beta optimality of the scans", 60.0, beta_optimality);
  criterion("7", "property suites", 60.0, property_suites);
  criterion("8", "noiseless beta = 0 pacification time", 10.0, bisector_noiseless_time);
  std::printf("%d criterion line(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
