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

// Drive construction on the Bloch sphere. A drive K n.sigma with K = omega_max/2
// saturates the trace-norm budget and rotates the Bloch vector about n at
// angular speed 2K = omega_max.

#include <cmath>
#include <optional>
#include <string>

#include "ergodrive/ergotropy.hpp"
#include "ergodrive/quantum_core.hpp"

namespace ergodrive {

struct DriveSpec {
  Vec3 axis = Vec3::UnitZ();
  double coupling = 1.0;
  std::optional<double> duration;

  DriveSpec() = default;
  DriveSpec(const Vec3& n, double k, std::optional<double> tau = std::nullopt)
      : axis(n), coupling(k), duration(tau) {
    detail::require(std::abs(axis.norm() - 1.0) <= Tolerances::unit_axis, ErrorKind::invalid_argument,
                    "drive axis is not a unit vector");
    detail::require(coupling > 0.0, ErrorKind::invalid_argument, "drive coupling must be positive");
    detail::require(!duration || *duration >= 0.0, ErrorKind::invalid_argument,
                    "drive duration must be non-negative");
  }

  Matrix2 generator() const { return coupling * pauli_dot(axis); }
  double angular_speed() const noexcept { return 2.0 * coupling; }
  bool within(const EnergyBudget& budget) const {
    return 2.0 * coupling <= budget.omega_max() * (1.0 + 1e-12);
  }
};

class BetaParameter {
 public:
  explicit BetaParameter(double beta) : beta_(beta) {
    detail::require(beta >= -0.5 * kPi - 1e-15 && beta <= 0.5 * kPi + 1e-15, ErrorKind::invalid_argument,
                    "beta " + std::to_string(beta) + " outside [-pi/2, pi/2]");
  }
  double value() const noexcept { return beta_; }

 private:
  double beta_;
};

// Unit normal of the great circle through V_rho and the north pole: (sin phi0, -cos phi0, 0).
inline Vec3 geodesic_axis(double theta0, double phi0) {
  detail::require(theta0 > 0.0 && theta0 <= kPi, ErrorKind::invalid_argument,
                  "geodesic_axis needs 0 < theta0 <= pi; theta0 = 0 is already passive");
  return {std::sin(phi0), -std::cos(phi0), 0.0};
}

// Unit bisector of V_rho and V_rho_p. For antipodal points any vector normal to
// the chord works; the one orthogonal to the geodesic axis is returned.
inline Vec3 bisector_axis(double theta0, double phi0) {
  detail::require(theta0 > 0.0 && theta0 <= kPi, ErrorKind::invalid_argument,
                  "bisector_axis needs 0 < theta0 <= pi");
  const Vec3 sum = BlochVector::spherical(1.0, theta0, phi0).vec() + Vec3::UnitZ();
  if (sum.norm() < 1e-12) return {std::cos(phi0), std::sin(phi0), 0.0};
  return sum.normalized();
}

// Axes of every rotation carrying V_rho onto V_rho_p form the great circle
// normal to the chord; beta = pi/2 is the geodesic, beta = 0 the bisector.
inline Vec3 pacifying_axis(double theta0, double phi0, double beta) {
  const BetaParameter b(beta);
  return (std::cos(b.value()) * bisector_axis(theta0, phi0) + std::sin(b.value()) * geodesic_axis(theta0, phi0))
      .normalized();
}

// The |+> -> |0> plane family: (cos b / sqrt2, -sin b, cos b / sqrt2).
inline Vec3 beta_axis(const BetaParameter& beta) {
  const double b = beta.value();
  return {std::cos(b) / std::sqrt(2.0), -std::sin(b), std::cos(b) / std::sqrt(2.0)};
}

inline double minimal_pacification_time(double theta0, const EnergyBudget& budget) {
  detail::require(theta0 >= 0.0 && theta0 <= kPi, ErrorKind::invalid_argument, "theta0 must lie in [0, pi]");
  return theta0 / budget.omega_max();
}

// Right-handed rotation angle in [0, 2pi) about `axis` that carries `from` onto `to`.
inline double pacification_angle(const Vec3& from, const Vec3& to, const Vec3& axis) {
  const Vec3 n = axis.normalized();
  const Vec3 a = from - from.dot(n) * n;
  const Vec3 b = to - to.dot(n) * n;
  detail::require(std::abs(from.dot(n) - to.dot(n)) <= 1e-9 && std::abs(a.norm() - b.norm()) <= 1e-9,
                  ErrorKind::invalid_argument, "pacification_angle: no rotation about this axis joins the points");
  if (a.norm() < 1e-12) return 0.0;
  double angle = std::atan2(n.dot(a.cross(b)), a.dot(b));
  if (angle < 0.0) angle += 2.0 * kPi;
  return angle;
}

struct RotationGenerator {
  Vec3 axis;
  double angle;  // in [0, pi]
};

// Axis and angle of a 2x2 unitary, modulo global phase. The phase is fixed by
// making the identity coefficient real non-negative; when it vanishes (angle pi)
// the first non-zero axis component is made positive instead.
inline RotationGenerator generator_from_unitary(const ComplexMatrix& u) {
  detail::require(u.rows() == 2 && u.cols() == 2, ErrorKind::dimension_mismatch,
                  "generator_from_unitary: expected a 2x2 matrix");
  detail::require((u * u.adjoint() - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-10,
                  ErrorKind::invalid_argument, "generator_from_unitary: matrix is not unitary");
  const PauliCoefficients c = pauli_decompose(u);

  Complex phase(1.0, 0.0);
  if (std::abs(c[0]) > 1e-10) {
    phase = std::conj(c[0]) / std::abs(c[0]);
  } else {
    for (std::size_t k = 1; k < 4; ++k) {
      if (std::abs(c[k]) > 1e-10) {
        // choose phase so that i * phase * c_k is real positive
        phase = std::conj(kI * c[k]) / std::abs(c[k]);
        break;
      }
    }
  }
  const double cos_half = (phase * c[0]).real();
  Vec3 s;
  for (int k = 0; k < 3; ++k) s(k) = (kI * phase * c[static_cast<std::size_t>(k + 1)]).real();
  const double sin_half = s.norm();
  detail::require(sin_half > 1e-10, ErrorKind::no_rotation_axis,
                  "unitary is a global phase times the identity");
  return {s / sin_half, 2.0 * std::atan2(sin_half, std::max(0.0, cos_half))};
}

// W(t) = r sin(omega t / 2) sin(theta0 - omega t / 2) for the geodesic drive.
inline double noiseless_work_curve(double r, double theta0, const EnergyBudget& budget, double t) {
  detail::require(t >= 0.0, ErrorKind::invalid_argument, "time must be non-negative");
  const double half = 0.5 * budget.omega_max() * t;
  return r * std::sin(half) * std::sin(theta0 - half);
}

inline DriveSpec drive_from_beta(const BetaParameter& beta, const EnergyBudget& budget) {
  return DriveSpec(beta_axis(beta), 0.5 * budget.omega_max());
}

inline DriveSpec geodesic_drive(double theta0, double phi0, const EnergyBudget& budget) {
  return DriveSpec(geodesic_axis(theta0, phi0), 0.5 * budget.omega_max());
}

inline DriveSpec pacifying_drive(double theta0, double phi0, double beta, const EnergyBudget& budget) {
  return DriveSpec(pacifying_axis(theta0, phi0, beta), 0.5 * budget.omega_max());
}

}  // namespace ergodrive
