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

// Work extraction from |+> with the geodesic and the bisector drive, with and
// without the attractor noise.

#include <iostream>

#include "ergodrive/ergodrive.hpp"

int main() {
  using namespace ergodrive;
  const DensityOperator plus = density_from_bloch({1.0, 0.0, 0.0});
  const EnergyBudget budget(2.0);

  std::cout << "ergotropy of |+>: " << ergotropy(plus, qubit_reference_hamiltonian()) << "\n";
  for (double beta : {0.5 * kPi, 0.0}) {
    for (const NoiseSpec& noise : {NoiseSpec::none(), NoiseSpec::attractor_at_angle(kPi / 8.0, 5.0)}) {
      const ExtractionTriad t = triad_for_beta(plus, noise, budget, beta);
      std::cout << "beta = " << beta << ", noise = " << to_string(noise.kind()) << ": W = " << t.work
                << ", t = " << (t.t_star ? std::to_string(*t.t_star) : std::string("not attained")) << "\n";
    }
  }

  const ExtractionTriad best = operational_ergotropy(plus, NoiseSpec::attractor_at_angle(kPi / 8.0, 5.0), budget);
  std::cout << "attractor triad: (" << best.work << ", " << *best.t_star << ", beta = " << best.beta_star << ")\n";
}
