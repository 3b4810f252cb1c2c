// Copyright 2026 The colltherm Authors
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

#include <algorithm>
#include <array>
#include <vector>

#include <Eigen/Eigenvalues>

#include "colltherm/model.hpp"

namespace colltherm {

/// Column-stacking vectorization: vec(X)[i + d*j] = X(i, j).
inline Eigen::VectorXcd vectorize(const ComplexMatrix& x) {
  return Eigen::Map<const Eigen::VectorXcd>(x.data(), x.size());
}

inline ComplexMatrix unvectorize(const Eigen::VectorXcd& v, Eigen::Index dim) {
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

/// Matrix of a linear map on column-vectorized operators.
struct Superoperator {
  ComplexMatrix mat;

  /// Operator-space dimension (4 for a qubit).
  Eigen::Index dim() const noexcept { return mat.rows(); }
  /// Hilbert-space dimension of the operators it acts on.
  Eigen::Index hilbert_dim() const noexcept {
    return static_cast<Eigen::Index>(std::lround(std::sqrt(static_cast<double>(mat.rows()))));
  }

  ComplexMatrix apply(const ComplexMatrix& x) const {
    return unvectorize(mat * vectorize(x), hilbert_dim());
  }

  /// Largest |vec(I)^T Phi - vec(I)^T| entry.
  double trace_preservation_defect() const {
    const Eigen::VectorXcd id = vectorize(ComplexMatrix::Identity(hilbert_dim(), hilbert_dim()));
    return (id.transpose() * mat - id.transpose()).cwiseAbs().maxCoeff();
  }

  /// Eigenvalue moduli, descending.
  std::vector<double> spectrum_moduli() const {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(mat, false);
    std::vector<double> mod(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) mod[i] = std::abs(es.eigenvalues()(i));
    std::sort(mod.begin(), mod.end(), std::greater<>());
    return mod;
  }
};

/// One collision followed by rethermalization, applied to a raw system
/// operator: tr_A[ E_S( U (x (x) rho_A) U^dagger ) ].
template <class ThermalMap = ExactThermalMap>
ComplexMatrix collide_and_thermalize(const ComplexMatrix& system_op, const ModelParams& params,
                                     const ThermalMap& thermal_map = {}) {
  ComplexMatrix joint = kron(system_op, prep_matrix(params.ancilla_prep));
  conjugate_two_qubit(joint, 2, 0, 1, partial_swap_unitary(params.g_tau_sa));
  thermal_map(joint, 2, 0, params);
  const std::array<int, 1> keep{0};
  return partial_trace(joint, 2, keep);
}

/// The stroboscopic one-collision channel Phi on the system qubit.
template <class ThermalMap = ExactThermalMap>
Superoperator build_stroboscopic_channel(const ModelParams& params,
                                         const ThermalMap& thermal_map = {}) {
  params.validate();
  Superoperator phi{ComplexMatrix::Zero(4, 4)};
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) {
      ComplexMatrix basis = ComplexMatrix::Zero(2, 2);
      basis(i, j) = 1.0;
      phi.mat.col(i + 2 * j) = vectorize(collide_and_thermalize(basis, params, thermal_map));
    }
  }
  return phi;
}

struct FixedPoint {
  DensityMatrix state;
  double spectral_gap;  // 1 - |lambda_2|
};

/// Unique fixed point of a trace-preserving channel, from the nullspace of
/// (Phi - I) under the unit-trace constraint.
inline FixedPoint fixed_point(const Superoperator& phi) {
  const Eigen::Index n = phi.dim();
  const Eigen::Index d = phi.hilbert_dim();
  if (d * d != n) throw DimensionMismatch("fixed_point: superoperator is not on a square space");

  Eigen::ComplexEigenSolver<ComplexMatrix> es(phi.mat, false);
  if (es.info() != Eigen::Success) throw EigensolverFailure("channel eigensolver failed", 30 * n);
  int unit_multiplicity = 0;
  std::vector<double> moduli;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex lambda = es.eigenvalues()(i);
    if (std::abs(lambda - 1.0) <= 1e-9) ++unit_multiplicity;
    moduli.push_back(std::abs(lambda));
  }
  if (unit_multiplicity > 1) throw DegenerateFixedPoint(unit_multiplicity);
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  const double gap = 1.0 - (n > 1 ? moduli[1] : 0.0);

  // [Phi - I; vec(I)^T] x = [0; 1]
  ComplexMatrix system(n + 1, n);
  system.topRows(n) = phi.mat - ComplexMatrix::Identity(n, n);
  system.row(n) = vectorize(ComplexMatrix::Identity(d, d)).transpose();
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n + 1);
  rhs(n) = 1.0;
  const auto qr = system.colPivHouseholderQr();
  Eigen::VectorXcd x = qr.solve(rhs);
  x += qr.solve(rhs - system * x);  // one refinement step

  return FixedPoint{validate_state(unvectorize(x, d), 1e-10), gap};
}

}  // namespace colltherm
