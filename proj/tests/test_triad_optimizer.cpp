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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ergodrive/triad_optimizer.hpp"
#include "support/oracles.hpp"

using namespace ergodrive;

namespace {

const EnergyBudget kBudget(2.0);
constexpr double kDt = 1e-3;

DensityOperator plus_state() { return DensityOperator::pure(Eigen::Vector2cd(1.0, 1.0)); }

NoiseSpec paper_attractor() { return NoiseSpec::attractor_at_angle(kPi / 8.0, 5.0); }

WorkTrajectory synthetic(const std::vector<double>& t, const std::vector<double>& w) {
  WorkTrajectory traj;
  for (std::size_t i = 0; i < t.size(); ++i) traj.samples.push_back({t[i], w[i], Matrix2::Identity() * 0.5});
  return traj;
}

WorkTrajectory sampled(double (*f)(double), double dt, double t_max) {
  std::vector<double> t, w;
  for (long i = 0; i <= std::lround(t_max / dt); ++i) {
    t.push_back(i * dt);
    w.push_back(f(i * dt));
  }
  return synthetic(t, w);
}

// coarse grid for the sweeps so the unit suite stays quick; the acceptance binary uses the defaults
OptimizerConfig coarse() {
  OptimizerConfig c;
  c.grid.points = 31;
  return c;
}

std::vector<double> gamma_grid() { return {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}; }

}  // namespace

TEST(GoldenSection, MinimizesUnimodalScalar) {
  const auto r = golden_section_minimize([](double x) { return (x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-8);
  EXPECT_NEAR(r.x, 0.3, 1e-8);
  EXPECT_GT(r.evaluations, 10);
  EXPECT_THROW(golden_section_minimize([](double x) { return x; }, 1.0, 0.0, 1e-3), Error);
}

TEST(GoldenSection, ComparatorOrdersCompositeValues) {
  // maximise a plateau-topped function, break the tie towards small x
  const auto eval = [](double x) { return std::make_pair(std::min(1.0, 3.0 * x), -x); };
  const auto r = golden_section_search(0.0, 1.0, 1e-6, eval, [](const auto& a, const auto& b) { return a > b; });
  EXPECT_NEAR(r.x, 1.0 / 3.0, 1e-5);
}

TEST(FirstPassage, InterpolatesAndReportsMisses) {
  const WorkTrajectory traj = synthetic({0.0, 1.0, 2.0, 3.0}, {0.0, 0.2, 0.6, 0.4});
  ASSERT_TRUE(first_passage_time(traj, 0.4, 1e-12).has_value());
  EXPECT_NEAR(*first_passage_time(traj, 0.4, 1e-12), 1.5, 1e-9);
  EXPECT_FALSE(first_passage_time(traj, 0.7, 1e-9).has_value());
  EXPECT_THROW(first_passage_time(traj, 0.4, 0.0), Error);
  EXPECT_THROW(first_passage_time(WorkTrajectory{}, 0.4, 1e-9), Error);
}

TEST(MaximumWork, ParabolicRefinementIsExactForQuadratics) {
  const WorkTrajectory traj = sampled([](double t) { return 1.0 - (t - 0.3141) * (t - 0.3141); }, 0.01, 1.0);
  const WorkMaximum m = maximum_work(traj);
  EXPECT_TRUE(m.attained);
  ASSERT_TRUE(m.time.has_value());
  EXPECT_NEAR(*m.time, 0.3141, 1e-12);
  EXPECT_NEAR(m.work, 1.0, 1e-12);
}

TEST(MaximumWork, SinePeakTimeBeatsTheStep) {
  const WorkTrajectory traj = sampled([](double t) { return 0.5 * std::sin(2.0 * t); }, kDt, 10.0);
  const WorkMaximum m = maximum_work(traj);
  ASSERT_TRUE(m.time.has_value());
  // earliest of the periodic revisits, refined well below the step
  EXPECT_NEAR(*m.time, kPi / 4.0, 1e-6);
  EXPECT_NEAR(m.work, 0.5, 1e-12);
  EXPECT_LE(m.work, 0.5 + 1e-15);
}

TEST(MaximumWork, TerminalMaximumIsNotAttained) {
  const WorkTrajectory rising = synthetic({0.0, 1.0, 2.0, 3.0}, {0.0, 0.1, 0.15, 0.16});
  const WorkMaximum m = maximum_work(rising);
  EXPECT_FALSE(m.attained);
  EXPECT_FALSE(m.time.has_value());
  EXPECT_NEAR(m.work, 0.16, 1e-15);
  EXPECT_NEAR(m.final_slope, 0.01, 1e-15);
  EXPECT_FALSE(is_saturated(m));

  const WorkTrajectory flat = synthetic({0.0, 1.0, 2.0, 3.0}, {0.0, 0.3, 0.3 + 1e-8, 0.3 + 2e-8});
  EXPECT_TRUE(is_saturated(maximum_work(flat)));
}

TEST(OperationalErgotropy, NoiselessPlusState) {
  const ExtractionTriad t = operational_ergotropy(plus_state(), NoiseSpec::none(), kBudget);
  const double grid_width = OptimizerConfig{}.grid.spacing();
  EXPECT_NEAR(t.work, 0.5, 1e-6);
  ASSERT_TRUE(t.t_star.has_value());
  EXPECT_NEAR(*t.t_star, kPi / 4.0, 2.0 * kDt);
  EXPECT_NEAR(t.beta_star, kPi / 2.0, grid_width);
  EXPECT_TRUE(t.attained);
  ASSERT_TRUE(t.power().has_value());
  EXPECT_NEAR(*t.power(), 0.5 / (kPi / 4.0), 1e-4);
}

TEST(OperationalErgotropy, NoiselessConsistencyForGeneralStatesProperty) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 6; ++i) {
    const double r = 0.3 + 0.7 * u(rng), theta = 0.4 + 2.3 * u(rng), phi = 2.0 * kPi * u(rng);
    const DensityOperator rho = density_from_bloch(BlochVector::spherical(r, theta, phi));
    const ExtractionTriad t = operational_ergotropy(rho, NoiseSpec::none(), kBudget, coarse());
    EXPECT_NEAR(t.work, qubit_ergotropy_closed_form(r, theta), 1e-6);
    ASSERT_TRUE(t.t_star.has_value());
    EXPECT_NEAR(*t.t_star, theta / kBudget.omega_max(), 2.0 * kDt);
    EXPECT_NEAR(t.beta_star, kPi / 2.0, coarse().grid.spacing());
  }
}

TEST(OperationalErgotropy, AttractorPrefersTheBisectorPath) {
  const ExtractionTriad t = operational_ergotropy(plus_state(), paper_attractor(), kBudget);
  EXPECT_NEAR(t.work, 0.5, 1e-4);
  ASSERT_TRUE(t.t_star.has_value());
  EXPECT_NEAR(*t.t_star, 3.026, 0.01);
  EXPECT_NEAR(t.beta_star, 0.0, OptimizerConfig{}.grid.spacing());
}

TEST(OperationalErgotropy, AdcReducesWorkAndTime) {
  const ExtractionTriad t = operational_ergotropy(plus_state(), NoiseSpec::adc(0.4), kBudget, coarse());
  EXPECT_LT(t.work, 0.5);
  ASSERT_TRUE(t.t_star.has_value());
  EXPECT_LT(*t.t_star, kPi / 4.0);
}

TEST(OperationalErgotropy, NeverExceedsNoiselessErgotropyProperty) {
  for (const NoiseSpec& n : {NoiseSpec::adc(0.2), NoiseSpec::pdc(0.2), NoiseSpec::dpc(0.2), paper_attractor()}) {
    const ExtractionTriad t = operational_ergotropy(plus_state(), n, kBudget, coarse());
    EXPECT_LE(t.work, 0.5 + 1e-8) << to_string(n.kind());
  }
}

TEST(OperationalErgotropy, RejectsStatesWithoutADrive) {
  EXPECT_THROW(operational_ergotropy(density_from_bloch({0, 0, 0.5}), NoiseSpec::none(), kBudget), Error);
  EXPECT_THROW(operational_ergotropy(DensityOperator::maximally_mixed(2), NoiseSpec::none(), kBudget), Error);
}

TEST(OperationalErgotropy, ThreadCountDoesNotChangeResults) {
  OptimizerConfig one = coarse(), many = coarse();
  one.threads = 1;
  many.threads = 4;
  const ExtractionTriad a = operational_ergotropy(plus_state(), NoiseSpec::pdc(0.3), kBudget, one);
  const ExtractionTriad b = operational_ergotropy(plus_state(), NoiseSpec::pdc(0.3), kBudget, many);
  EXPECT_EQ(a.work, b.work);
  EXPECT_EQ(a.t_star, b.t_star);
  EXPECT_EQ(a.beta_star, b.beta_star);
}

TEST(OperationalErgotropy, GridRefinementStability) {
  OptimizerConfig base = coarse();
  base.refine = false;
  OptimizerConfig fine = base;
  fine.grid.points = 2 * base.grid.points - 1;
  for (const NoiseSpec& n : {NoiseSpec::adc(0.25), paper_attractor()}) {
    const double a = operational_ergotropy(plus_state(), n, kBudget, base).beta_star;
    const double b = operational_ergotropy(plus_state(), n, kBudget, fine).beta_star;
    EXPECT_LT(std::abs(a - b), base.grid.spacing()) << to_string(n.kind());
  }
}

TEST(GammaSweep, MonotoneWorkAndTime) {
  for (NoiseKind k : {NoiseKind::adc, NoiseKind::pdc, NoiseKind::dpc}) {
    const SweepTable table = gamma_sweep(plus_state(), k, gamma_grid(), kBudget, coarse());
    ASSERT_EQ(table.rows.size(), gamma_grid().size());
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
      EXPECT_LE(table.rows[i].work - table.rows[i - 1].work, 1e-8) << to_string(k) << " row " << i;
      ASSERT_TRUE(table.rows[i].t_star && table.rows[i - 1].t_star);
      EXPECT_LE(*table.rows[i].t_star - *table.rows[i - 1].t_star, 1e-8) << to_string(k) << " row " << i;
    }
  }
}

TEST(GammaSweep, PowerRisesOnlyUnderAmplitudeDamping) {
  for (NoiseKind k : {NoiseKind::adc, NoiseKind::pdc, NoiseKind::dpc}) {
    const SweepTable table = gamma_sweep(plus_state(), k, gamma_grid(), kBudget, coarse());
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
      const double d = *table.rows[i].power - *table.rows[i - 1].power;
      if (k == NoiseKind::adc) {
        EXPECT_GT(d, 1e-8) << "row " << i;
      } else {
        EXPECT_LT(d, -1e-8) << to_string(k) << " row " << i;
      }
    }
  }
}

TEST(GammaSweep, Validation) {
  EXPECT_THROW(gamma_sweep(plus_state(), NoiseKind::attractor, gamma_grid(), kBudget), Error);
  EXPECT_THROW(gamma_sweep(plus_state(), NoiseKind::none, gamma_grid(), kBudget), Error);
  EXPECT_THROW(gamma_sweep(plus_state(), NoiseKind::adc, {0.2, 0.1}, kBudget), Error);
  EXPECT_THROW(gamma_sweep(plus_state(), NoiseKind::adc, {}, kBudget), Error);
}

TEST(BetaScan, NoiselessEndpointTimes) {
  const SweepTable table = beta_scan(plus_state(), NoiseSpec::none(), {0.0, kPi / 2.0}, kBudget);
  ASSERT_EQ(table.rows.size(), 2u);
  ASSERT_TRUE(table.rows[0].t_star && table.rows[1].t_star);
  EXPECT_NEAR(*table.rows[0].t_star, kPi / 2.0, 2.0 * kDt);
  EXPECT_NEAR(*table.rows[1].t_star, kPi / 4.0, 2.0 * kDt);
  EXPECT_NEAR(table.rows[0].work, 0.5, 1e-6);
  ASSERT_TRUE(table.best.has_value());
  EXPECT_EQ(*table.best, 1u);
}

TEST(BetaScan, MarkovianOptimumIsGeodesic) {
  const auto grid = coarse().grid;
  for (const NoiseSpec& n : {NoiseSpec::adc(0.25), NoiseSpec::pdc(0.25), NoiseSpec::dpc(0.25)}) {
    const SweepTable table = beta_scan(plus_state(), n, grid.values(), kBudget);
    ASSERT_TRUE(table.best.has_value());
    EXPECT_NEAR(table.rows[*table.best].parameter, kPi / 2.0, grid.spacing()) << to_string(n.kind());
  }
}

TEST(BetaScan, AttractorReversesTheHierarchy) {
  const auto grid = coarse().grid;
  const SweepTable table = beta_scan(plus_state(), paper_attractor(), grid.values(), kBudget);
  ASSERT_TRUE(table.best.has_value());
  EXPECT_NEAR(table.rows[*table.best].parameter, 0.0, grid.spacing());
  EXPECT_NEAR(*table.rows[*table.best].t_star, 3.026, 0.01);
  // geodesic drive never gets there
  const SweepRow& geodesic = table.rows.back();
  EXPECT_FALSE(geodesic.attained);
  EXPECT_FALSE(geodesic.t_star.has_value());
  EXPECT_LT(geodesic.work, 0.5 - 1e-3);
}

TEST(BetaScan, RejectsOutOfRangeGrid) {
  EXPECT_THROW(beta_scan(plus_state(), NoiseSpec::none(), {0.0, 2.0}, kBudget), Error);
  EXPECT_THROW(beta_scan(plus_state(), NoiseSpec::none(), {0.5, 0.5}, kBudget), Error);
}

TEST(BetaGrid, ValuesAndSpacing) {
  const BetaGrid g;
  const auto v = g.values();
  ASSERT_EQ(v.size(), 181u);
  EXPECT_EQ(v.front(), 0.0);
  EXPECT_NEAR(v.back(), kPi / 2.0, 1e-15);
  EXPECT_NEAR(g.spacing(), kPi / 360.0, 1e-15);
}
