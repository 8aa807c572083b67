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

// Driven qubit dynamics under amplitude damping, phase damping, depolarising
// noise and the overlap-controlled attractor map, with work recording against
// the reference Hamiltonian |1><1|.

#include <cctype>
#include <cmath>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ergodrive/drive_geometry.hpp"
#include "ergodrive/quantum_core.hpp"

namespace ergodrive {

enum class NoiseKind { none, adc, pdc, dpc, attractor };

inline const char* to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::none: return "none";
    case NoiseKind::adc: return "adc";
    case NoiseKind::pdc: return "pdc";
    case NoiseKind::dpc: return "dpc";
    case NoiseKind::attractor: return "attractor";
  }
  return "none";
}

inline NoiseKind parse_noise_kind(std::string_view name) {
  std::string s(name);
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (s == "none" || s == "noiseless") return NoiseKind::none;
  if (s == "adc") return NoiseKind::adc;
  if (s == "pdc") return NoiseKind::pdc;
  if (s == "dpc") return NoiseKind::dpc;
  if (s == "attractor") return NoiseKind::attractor;
  throw Error(ErrorKind::invalid_argument, "unknown noise kind '" + s + "'");
}

inline bool is_markovian(NoiseKind kind) {
  return kind == NoiseKind::adc || kind == NoiseKind::pdc || kind == NoiseKind::dpc;
}

class NoiseSpec {
 public:
  NoiseSpec() = default;

  static NoiseSpec none() { return {}; }
  static NoiseSpec markovian(NoiseKind kind, double gamma) {
    detail::require(is_markovian(kind), ErrorKind::invalid_argument,
                    std::string("'") + to_string(kind) + "' is not a Markovian channel");
    detail::require(gamma >= 0.0 && std::isfinite(gamma), ErrorKind::invalid_argument,
                    "decay rate gamma must be non-negative");
    NoiseSpec n;
    n.kind_ = kind;
    n.gamma_ = gamma;
    return n;
  }
  static NoiseSpec adc(double gamma) { return markovian(NoiseKind::adc, gamma); }
  static NoiseSpec pdc(double gamma) { return markovian(NoiseKind::pdc, gamma); }
  static NoiseSpec dpc(double gamma) { return markovian(NoiseKind::dpc, gamma); }

  // Attractor at the pure state with Bloch vector `target`.
  static NoiseSpec attractor(const BlochVector& target, double zeta) {
    detail::require(std::abs(target.norm() - 1.0) <= 1e-10, ErrorKind::unphysical_state,
                    "attractor must be a pure state (unit Bloch vector)");
    detail::require(zeta > 0.0 && std::isfinite(zeta), ErrorKind::invalid_argument, "zeta must be positive");
    NoiseSpec n;
    n.kind_ = NoiseKind::attractor;
    n.target_ = target;
    n.zeta_ = zeta;
    return n;
  }
  // Attractor cos(psi)|0> + sin(psi)|1>.
  static NoiseSpec attractor_at_angle(double psi, double zeta) {
    return attractor(BlochVector(std::sin(2.0 * psi), 0.0, std::cos(2.0 * psi)), zeta);
  }

  NoiseKind kind() const noexcept { return kind_; }
  double gamma() const noexcept { return gamma_; }
  double zeta() const noexcept { return zeta_; }
  const BlochVector& target() const noexcept { return target_; }
  DensityOperator target_state() const { return density_from_bloch(target_); }

 private:
  NoiseKind kind_ = NoiseKind::none;
  double gamma_ = 0.0;
  BlochVector target_{0.0, 0.0, 1.0};
  double zeta_ = 1.0;
};

enum class AttractorScheme { ode, discrete_map };

struct IntegratorConfig {
  double dt = 1e-3;
  double t_max = 10.0;
  int record_stride = 1;

  void validate() const {
    detail::require(dt > 0.0 && std::isfinite(dt), ErrorKind::invalid_argument, "dt must be positive");
    detail::require(t_max >= dt, ErrorKind::invalid_argument, "t_max must be at least dt");
    detail::require(record_stride >= 1, ErrorKind::invalid_argument, "record_stride must be >= 1");
  }
  long steps() const { return std::lround(t_max / dt); }

  static IntegratorConfig defaults_for(NoiseKind kind) {
    IntegratorConfig c;
    c.t_max = kind == NoiseKind::attractor ? 20.0 : 10.0;
    return c;
  }
};

struct TrajectorySample {
  double t = 0.0;
  double work = 0.0;
  Matrix2 rho = Matrix2::Zero();

  BlochVector bloch() const {
    return {(rho(0, 1) + rho(1, 0)).real(), (kI * (rho(0, 1) - rho(1, 0))).real(), (rho(0, 0) - rho(1, 1)).real()};
  }
  double purity() const { return (rho * rho).trace().real(); }
};

struct WorkTrajectory {
  std::vector<TrajectorySample> samples;
  DriveSpec drive;
  NoiseSpec noise;
  IntegratorConfig config;
};

// ---------------------------------------------------------------------------
// Fixed-size kernels used by the integrators.

namespace detail {

inline Matrix2 commutator_term(const Matrix2& generator, const Matrix2& rho) {
  return -kI * (generator * rho - rho * generator);
}

inline Matrix2 dissipator(const Matrix2& r, NoiseKind kind, double gamma) {
  Matrix2 out;
  switch (kind) {
    case NoiseKind::adc:
      out << 2.0 * r(1, 1), -r(0, 1), -r(1, 0), -2.0 * r(1, 1);
      return gamma * out;
    case NoiseKind::pdc:
      out << 0.0, -2.0 * r(0, 1), -2.0 * r(1, 0), 0.0;
      return gamma * out;
    case NoiseKind::dpc:
      return gamma * (r.trace() * Matrix2::Identity() - 2.0 * r);
    default:
      throw Error(ErrorKind::invalid_argument, std::string("'") + to_string(kind) + "' has no Lindblad dissipator");
  }
}

inline double overlap(const Matrix2& r, const BlochVector& target) {
  const TrajectorySample s{0.0, 0.0, r};
  return 0.5 * (r.trace().real() + s.bloch().vec().dot(target.vec()));
}

inline double attractor_probability(double overlap, double zeta) {
  return 1.0 - std::exp(-zeta * (1.0 - overlap));
}

inline Matrix2 rhs(const Matrix2& r, const Matrix2& generator, const NoiseSpec& noise) {
  switch (noise.kind()) {
    case NoiseKind::none:
      return commutator_term(generator, r);
    case NoiseKind::attractor:
      return attractor_probability(overlap(r, noise.target()), noise.zeta()) * commutator_term(generator, r);
    default:
      return commutator_term(generator, r) + dissipator(r, noise.kind(), noise.gamma());
  }
}

inline double min_eigenvalue(const Matrix2& r) {
  const double a = r(0, 0).real();
  const double d = r(1, 1).real();
  const double off = std::abs(0.5 * (r(0, 1) + std::conj(r(1, 0))));
  return 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + off * off);
}

inline double work(const Matrix2& rho0, const Matrix2& rho) { return rho0(1, 1).real() - rho(1, 1).real(); }

inline Matrix2 attractor_map(const Matrix2& r, const Matrix2& step_unitary, const NoiseSpec& noise) {
  const double p = attractor_probability(overlap(r, noise.target()), noise.zeta());
  return p * (step_unitary * r * step_unitary.adjoint()) + (1.0 - p) * r;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline HermitianOperator dissipator(const DensityOperator& rho, const NoiseSpec& noise) {
  detail::require(rho.dim() == 2, ErrorKind::dimension_mismatch, "dissipator: qubit states only");
  return HermitianOperator(detail::dissipator(rho.matrix(), noise.kind(), noise.gamma()));
}

inline HermitianOperator lindblad_rhs(const DensityOperator& rho, const DriveSpec& drive, const NoiseSpec& noise) {
  detail::require(rho.dim() == 2, ErrorKind::dimension_mismatch, "lindblad_rhs: qubit states only");
  detail::require(noise.kind() != NoiseKind::attractor, ErrorKind::invalid_argument,
                  "lindblad_rhs: attractor noise is not a Lindblad generator, use attractor_rhs");
  return HermitianOperator(detail::rhs(rho.matrix(), drive.generator(), noise));
}

// 1 - exp(-zeta (1 - f)), f = Tr(rho sigma) = (1 + r.s) / 2.
inline double attractor_probability(const DensityOperator& rho, const NoiseSpec& noise) {
  detail::require(noise.kind() == NoiseKind::attractor, ErrorKind::invalid_argument,
                  "attractor_probability: noise is not of attractor kind");
  detail::require(rho.dim() == 2, ErrorKind::dimension_mismatch, "attractor_probability: qubit states only");
  return detail::attractor_probability(detail::overlap(rho.matrix(), noise.target()), noise.zeta());
}

inline HermitianOperator attractor_rhs(const DensityOperator& rho, const DriveSpec& drive, const NoiseSpec& noise) {
  detail::require(noise.kind() == NoiseKind::attractor, ErrorKind::invalid_argument,
                  "attractor_rhs: noise is not of attractor kind");
  detail::require(rho.dim() == 2, ErrorKind::dimension_mismatch, "attractor_rhs: qubit states only");
  return HermitianOperator(detail::rhs(rho.matrix(), drive.generator(), noise));
}

inline DensityOperator attractor_step_discrete(const DensityOperator& rho, const DriveSpec& drive,
                                               const NoiseSpec& noise, double dt) {
  detail::require(noise.kind() == NoiseKind::attractor, ErrorKind::invalid_argument,
                  "attractor_step_discrete: noise is not of attractor kind");
  detail::require(dt > 0.0, ErrorKind::invalid_argument, "attractor_step_discrete: dt must be positive");
  detail::require(rho.dim() == 2, ErrorKind::dimension_mismatch, "attractor_step_discrete: qubit states only");
  const Matrix2 u = expm_su2(drive.axis, drive.angular_speed() * dt);
  return DensityOperator(detail::attractor_map(rho.matrix(), u, noise));
}

// Fixed-step classic RK4 (or the discrete attractor map when requested).
// W_i = Tr(H rho_0) - Tr(H rho_i) with H = |1><1|.
inline WorkTrajectory integrate(const DensityOperator& rho0, const DriveSpec& drive, const NoiseSpec& noise,
                                const IntegratorConfig& config,
                                AttractorScheme scheme = AttractorScheme::ode) {
  config.validate();
  detail::require(rho0.dim() == 2, ErrorKind::dimension_mismatch, "integrate: qubit states only");
  const bool discrete = scheme == AttractorScheme::discrete_map && noise.kind() == NoiseKind::attractor;

  WorkTrajectory traj;
  traj.drive = drive;
  traj.noise = noise;
  traj.config = config;

  const long n = config.steps();
  const double dt = config.dt;
  const Matrix2 g = drive.generator();
  const Matrix2 step_unitary = expm_su2(drive.axis, drive.angular_speed() * dt);
  const Matrix2 start = rho0.matrix();
  Matrix2 r = start;

  traj.samples.reserve(static_cast<std::size_t>(n / config.record_stride + 2));
  traj.samples.push_back({0.0, 0.0, r});

  for (long i = 1; i <= n; ++i) {
    if (discrete) {
      r = detail::attractor_map(r, step_unitary, noise);
    } else {
      const Matrix2 k1 = detail::rhs(r, g, noise);
      const Matrix2 k2 = detail::rhs(r + 0.5 * dt * k1, g, noise);
      const Matrix2 k3 = detail::rhs(r + 0.5 * dt * k2, g, noise);
      const Matrix2 k4 = detail::rhs(r + dt * k3, g, noise);
      r += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    const double lo = detail::min_eigenvalue(r);
    if (!(lo >= -Tolerances::runtime_psd)) {
      std::ostringstream msg;
      msg << "state lost positivity at step " << i << " (t = " << static_cast<double>(i) * dt
          << ", smallest eigenvalue " << lo << "); try a smaller dt";
      throw Error(ErrorKind::numerical_failure, msg.str());
    }
    if (i % config.record_stride == 0 || i == n) {
      traj.samples.push_back({static_cast<double>(i) * dt, detail::work(start, r), r});
    }
  }
  return traj;
}

}  // namespace ergodrive
