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

// Dense complex linear algebra for qubits and small qudits: validated operator
// wrappers, Pauli arithmetic, SU(2) exponentials and Hermitian spectra.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "ergodrive/error.hpp"
#include "ergodrive/tolerances.hpp"

namespace ergodrive {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;
using Vec3 = Eigen::Vector3d;

inline constexpr Complex kI{0.0, 1.0};

// Pauli matrices, index 0 is the identity.
inline const Matrix2& pauli(int k) {
  static const std::array<Matrix2, 4> basis = [] {
    std::array<Matrix2, 4> s;
    s[0] << 1, 0, 0, 1;
    s[1] << 0, 1, 1, 0;
    s[2] << 0, Complex(0, -1), Complex(0, 1), 0;
    s[3] << 1, 0, 0, -1;
    return s;
  }();
  return basis.at(static_cast<std::size_t>(k));
}

// n.sigma for a real 3-vector.
inline Matrix2 pauli_dot(const Vec3& n) {
  Matrix2 m;
  m << Complex(n.z(), 0), Complex(n.x(), -n.y()), Complex(n.x(), n.y()), Complex(-n.z(), 0);
  return m;
}

namespace detail {

inline double max_hermiticity_error(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline void require_square(const ComplexMatrix& m, const char* who) {
  require(m.rows() == m.cols() && m.rows() >= 1, ErrorKind::dimension_mismatch,
          std::string(who) + ": expected a non-empty square matrix, got " + std::to_string(m.rows()) +
              "x" + std::to_string(m.cols()));
}

}  // namespace detail

class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
    detail::require_square(m_, "HermitianOperator");
    const double err = detail::max_hermiticity_error(m_);
    detail::require(err <= Tolerances::herm, ErrorKind::not_hermitian,
                    "max |A - A^dagger| = " + std::to_string(err));
  }

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix m);

  const ComplexMatrix& matrix() const noexcept { return op_.matrix(); }
  const HermitianOperator& hermitian() const noexcept { return op_; }
  Eigen::Index dim() const noexcept { return op_.dim(); }
  double purity() const { return (matrix() * matrix()).trace().real(); }

  static DensityOperator maximally_mixed(Eigen::Index d) {
    return DensityOperator(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
  }
  static DensityOperator pure(const ComplexVector& psi) {
    const ComplexVector u = psi.normalized();
    return DensityOperator(u * u.adjoint());
  }

 private:
  HermitianOperator op_;
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  BlochVector() = default;
  BlochVector(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}
  explicit BlochVector(const Vec3& v) : x(v.x()), y(v.y()), z(v.z()) {}

  Vec3 vec() const { return {x, y, z}; }
  double norm() const { return vec().norm(); }
  double polar() const { return norm() == 0.0 ? 0.0 : std::acos(std::clamp(z / norm(), -1.0, 1.0)); }
  double azimuth() const {
    const double phi = std::atan2(y, x);
    return phi < 0.0 ? phi + 2.0 * kPi : phi;
  }

  static BlochVector spherical(double r, double theta, double phi) {
    return {r * std::sin(theta) * std::cos(phi), r * std::sin(theta) * std::sin(phi),
            r * std::cos(theta)};
  }
};

inline double distance(const BlochVector& a, const BlochVector& b) { return (a.vec() - b.vec()).norm(); }

struct PauliCoefficients {
  std::array<Complex, 4> a{};

  Complex operator[](std::size_t k) const { return a[k]; }
  Matrix2 reconstruct() const {
    Matrix2 m = Matrix2::Zero();
    for (int k = 0; k < 4; ++k) m += a[static_cast<std::size_t>(k)] * pauli(k);
    return m;
  }
};

enum class EigenOrder { ascending, descending };

struct SpectralDecomposition {
  Eigen::VectorXd values;
  ComplexMatrix vectors;  // columns, paired with values
  EigenOrder order = EigenOrder::ascending;

  ComplexMatrix reconstruct() const {
    return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
  }
};

// ---------------------------------------------------------------------------

inline PauliCoefficients pauli_decompose(const ComplexMatrix& m) {
  detail::require(m.rows() == 2 && m.cols() == 2, ErrorKind::dimension_mismatch,
                  "pauli_decompose: expected a 2x2 matrix");
  PauliCoefficients c;
  for (int k = 0; k < 4; ++k) c.a[static_cast<std::size_t>(k)] = 0.5 * (pauli(k) * m).trace();
  return c;
}

inline BlochVector bloch_from_density(const DensityOperator& rho) {
  detail::require(rho.dim() == 2, ErrorKind::dimension_mismatch,
                  "bloch_from_density: expected a qubit state");
  const Matrix2 m = rho.matrix();
  return {(m * pauli(1)).trace().real(), (m * pauli(2)).trace().real(), (m * pauli(3)).trace().real()};
}

inline Matrix2 density_matrix_from_bloch(const Vec3& v) { return 0.5 * (pauli(0) + pauli_dot(v)); }

inline DensityOperator density_from_bloch(const BlochVector& v) {
  detail::require(v.norm() <= 1.0 + Tolerances::bloch, ErrorKind::unphysical_state,
                  "Bloch vector has length " + std::to_string(v.norm()) + " > 1");
  return DensityOperator(density_matrix_from_bloch(v.vec()));
}

namespace detail {

// Fixes the phase of each column so its first non-negligible entry is real positive.
inline void normalize_phases(ComplexMatrix& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      const double mag = std::abs(vectors(i, j));
      if (mag > 1e-12) {
        vectors.col(j) *= std::conj(vectors(i, j)) / mag;
        vectors(i, j) = Complex(vectors(i, j).real(), 0.0);
        break;
      }
    }
  }
}

inline bool lexicographically_less(const ComplexVector& a, const ComplexVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a(i).real() - b(i).real()) > 1e-12) return a(i).real() < b(i).real();
    if (std::abs(a(i).imag() - b(i).imag()) > 1e-12) return a(i).imag() < b(i).imag();
  }
  return false;
}

}  // namespace detail

inline SpectralDecomposition eig_hermitian(const HermitianOperator& a, EigenOrder order) {
  const Eigen::Index d = a.dim();
  detail::require(d <= 16, ErrorKind::invalid_argument,
                  "eig_hermitian: dimension " + std::to_string(d) + " exceeds the small-dense limit 16");
  // Solve on the exactly symmetrised matrix; delta is within the Hermitian tolerance.
  const ComplexMatrix sym = 0.5 * (a.matrix() + a.matrix().adjoint());
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  detail::require(solver.info() == Eigen::Success, ErrorKind::numerical_failure,
                  "eig_hermitian: eigensolver did not converge");

  ComplexMatrix vecs = solver.eigenvectors();
  detail::normalize_phases(vecs);
  const Eigen::VectorXd& vals = solver.eigenvalues();

  std::vector<Eigen::Index> idx(static_cast<std::size_t>(d));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  const bool asc = order == EigenOrder::ascending;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return asc ? vals(i) < vals(j) : vals(i) > vals(j); });
  // Degenerate groups are ordered by their eigenvector components.
  for (std::size_t begin = 0; begin < idx.size();) {
    std::size_t end = begin + 1;
    while (end < idx.size() && std::abs(vals(idx[end]) - vals(idx[begin])) <= Tolerances::eig_tie) ++end;
    std::sort(idx.begin() + static_cast<std::ptrdiff_t>(begin), idx.begin() + static_cast<std::ptrdiff_t>(end),
              [&](Eigen::Index i, Eigen::Index j) {
                return detail::lexicographically_less(vecs.col(i), vecs.col(j));
              });
    begin = end;
  }

  SpectralDecomposition out;
  out.order = order;
  out.values.resize(d);
  out.vectors.resize(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    out.values(k) = vals(idx[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = vecs.col(idx[static_cast<std::size_t>(k)]);
  }
  return out;
}

inline DensityOperator::DensityOperator(ComplexMatrix m) : op_(std::move(m)) {
  const double tr_err = std::abs(op_.matrix().trace() - Complex(1.0, 0.0));
  detail::require(tr_err <= Tolerances::trace, ErrorKind::unphysical_state,
                  "density operator trace deviates from 1 by " + std::to_string(tr_err));
  const ComplexMatrix sym = 0.5 * (op_.matrix() + op_.matrix().adjoint());
  const double lo = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(sym, Eigen::EigenvaluesOnly).eigenvalues()(0);
  detail::require(lo >= -Tolerances::psd, ErrorKind::unphysical_state,
                  "density operator has eigenvalue " + std::to_string(lo));
}

// Rotation of the Bloch sphere by `angle` about `axis`: cos(a/2) I - i sin(a/2) n.sigma.
inline Matrix2 expm_su2(const Vec3& axis, double angle) {
  detail::require(std::abs(axis.norm() - 1.0) <= Tolerances::unit_axis, ErrorKind::invalid_argument,
                  "expm_su2: axis is not a unit vector");
  return std::cos(0.5 * angle) * pauli(0) - kI * std::sin(0.5 * angle) * pauli_dot(axis);
}

// exp(-i G t) for a Hermitian generator of any small dimension.
inline ComplexMatrix unitary_from_generator(const HermitianOperator& generator, double t) {
  const SpectralDecomposition s = eig_hermitian(generator, EigenOrder::ascending);
  ComplexVector phases(s.values.size());
  for (Eigen::Index k = 0; k < s.values.size(); ++k) phases(k) = std::exp(-kI * s.values(k) * t);
  return s.vectors * phases.asDiagonal() * s.vectors.adjoint();
}

inline double trace_norm(const ComplexMatrix& a) {
  detail::require_square(a, "trace_norm");
  return Eigen::JacobiSVD<ComplexMatrix>(a).singularValues().sum();
}

}  // namespace ergodrive
