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

// Passive states, ergotropy and the phase-indexed family of pacifying unitaries.
//
// The passive state pairs the populations of rho, sorted in decreasing order,
// with the eigenvectors of H sorted by increasing energy. Ergotropy is the
// energy difference to that state. For degenerate spectra the passive state is
// not unique (the tie-break in eig_hermitian picks one) but its energy is.

#include <cmath>
#include <string>
#include <vector>

#include "ergodrive/quantum_core.hpp"

namespace ergodrive {

class EnergyBudget {
 public:
  explicit EnergyBudget(double omega_max) : omega_max_(omega_max) {
    detail::require(omega_max > 0.0 && std::isfinite(omega_max), ErrorKind::invalid_argument,
                    "energy budget omega_max must be positive, got " + std::to_string(omega_max));
  }
  double omega_max() const noexcept { return omega_max_; }

 private:
  double omega_max_;
};

// Phases mu_1..mu_{d-1}; mu_0 is fixed to zero.
class PhaseVector {
 public:
  explicit PhaseVector(std::vector<double> phases) : phases_(std::move(phases)) {
    for (double mu : phases_) {
      detail::require(mu >= 0.0 && mu < 2.0 * kPi, ErrorKind::invalid_argument,
                      "phase " + std::to_string(mu) + " outside [0, 2pi)");
    }
  }
  static PhaseVector zeros(Eigen::Index d) {
    return PhaseVector(std::vector<double>(static_cast<std::size_t>(d > 0 ? d - 1 : 0), 0.0));
  }

  std::size_t size() const noexcept { return phases_.size(); }
  // Phase attached to energy level k; level 0 carries no phase.
  double phase(std::size_t level) const { return level == 0 ? 0.0 : phases_.at(level - 1); }

 private:
  std::vector<double> phases_;
};

namespace detail {

inline void require_same_dim(const DensityOperator& rho, const HermitianOperator& h, const char* who) {
  require(rho.dim() == h.dim(), ErrorKind::dimension_mismatch,
          std::string(who) + ": state is " + std::to_string(rho.dim()) + "-dimensional, Hamiltonian is " +
              std::to_string(h.dim()) + "-dimensional");
}

}  // namespace detail

// Reference Hamiltonian |1><1| used for all qubit work bookkeeping.
inline HermitianOperator qubit_reference_hamiltonian() {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(1, 1) = 1.0;
  return HermitianOperator(std::move(h));
}

inline double energy(const DensityOperator& rho, const HermitianOperator& h) {
  detail::require_same_dim(rho, h, "energy");
  return (rho.matrix() * h.matrix()).trace().real();
}

inline DensityOperator passive_state(const DensityOperator& rho, const HermitianOperator& h) {
  detail::require_same_dim(rho, h, "passive_state");
  const SpectralDecomposition populations = eig_hermitian(rho.hermitian(), EigenOrder::descending);
  const SpectralDecomposition levels = eig_hermitian(h, EigenOrder::ascending);
  ComplexMatrix p = levels.vectors * populations.values.cast<Complex>().asDiagonal() * levels.vectors.adjoint();
  p = 0.5 * (p + p.adjoint());
  return DensityOperator(std::move(p));
}

inline double ergotropy(const DensityOperator& rho, const HermitianOperator& h) {
  detail::require_same_dim(rho, h, "ergotropy");
  const SpectralDecomposition populations = eig_hermitian(rho.hermitian(), EigenOrder::descending);
  const SpectralDecomposition levels = eig_hermitian(h, EigenOrder::ascending);
  const double passive_energy = populations.values.dot(levels.values);
  return std::max(0.0, energy(rho, h) - passive_energy);
}

// r sin^2(theta0 / 2) for H = |1><1|.
inline double qubit_ergotropy_closed_form(double r, double theta0) {
  detail::require(r >= 0.0 && r <= 1.0, ErrorKind::invalid_argument, "Bloch radius must lie in [0, 1]");
  detail::require(theta0 >= 0.0 && theta0 <= kPi, ErrorKind::invalid_argument, "polar angle must lie in [0, pi]");
  const double s = std::sin(0.5 * theta0);
  return r * s * s;
}

// sum_k exp(i mu_k) |e_k><r_k|; maps rho onto passive_state(rho, h) for every phase choice.
inline ComplexMatrix pacifying_unitary(const DensityOperator& rho, const HermitianOperator& h,
                                       const PhaseVector& phases) {
  detail::require_same_dim(rho, h, "pacifying_unitary");
  detail::require(phases.size() + 1 == static_cast<std::size_t>(rho.dim()), ErrorKind::dimension_mismatch,
                  "pacifying_unitary: expected " + std::to_string(rho.dim() - 1) + " phases");
  const SpectralDecomposition populations = eig_hermitian(rho.hermitian(), EigenOrder::descending);
  const SpectralDecomposition levels = eig_hermitian(h, EigenOrder::ascending);
  const Eigen::Index d = rho.dim();
  ComplexMatrix u = ComplexMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    u += std::exp(kI * phases.phase(static_cast<std::size_t>(k))) * levels.vectors.col(k) *
         populations.vectors.col(k).adjoint();
  }
  return u;
}

// |0><psi| + exp(i mu) |1><psi_perp| with |psi> = cos(theta0/2)|0> + exp(i phi0) sin(theta0/2)|1>.
inline Matrix2 qubit_pacifying_unitary(double theta0, double phi0, double mu) {
  detail::require(theta0 >= 0.0 && theta0 <= kPi, ErrorKind::invalid_argument, "theta0 must lie in [0, pi]");
  detail::require(phi0 >= 0.0 && phi0 < 2.0 * kPi, ErrorKind::invalid_argument, "phi0 must lie in [0, 2pi)");
  detail::require(mu >= 0.0 && mu < 2.0 * kPi, ErrorKind::invalid_argument, "mu must lie in [0, 2pi)");
  const double c = std::cos(0.5 * theta0);
  const double s = std::sin(0.5 * theta0);
  const Complex e = std::exp(kI * phi0);
  Eigen::Vector2cd psi(c, e * s);
  Eigen::Vector2cd perp(s, -e * c);
  const Eigen::Vector2cd ket0(1.0, 0.0);
  const Eigen::Vector2cd ket1(0.0, 1.0);
  return ket0 * psi.adjoint() + std::exp(kI * mu) * ket1 * perp.adjoint();
}

}  // namespace ergodrive
