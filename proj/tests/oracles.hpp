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

// Independent reference computations used only by the tests. None of these
// call the library's channel code: states, unitaries and dissipators are
// rebuilt from full dense matrices.

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "colltherm/colltherm.hpp"

namespace oracle {

using colltherm::Complex;
using colltherm::ComplexMatrix;

inline ComplexMatrix pauli_x() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

// sigma_- = |g><e|, sigma_+ = |e><g| with |g> = index 0.
inline ComplexMatrix lowering() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

/// Entry-by-entry Kronecker product from the definition.
inline ComplexMatrix kron_by_definition(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      out(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
    }
  }
  return out;
}

/// Single-qubit operator embedded at `qubit` of an n-qubit register.
inline ComplexMatrix embed(const ComplexMatrix& op, int num_qubits, int qubit) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int q = 0; q < num_qubits; ++q) {
    out = kron_by_definition(out, q == qubit ? op : ComplexMatrix::Identity(2, 2));
  }
  return out;
}

/// Lindbladian gamma(n+1) D[s-] + gamma n D[s+] on one qubit of a register,
/// integrated with RK4 over unit time with rate gamma = gamma_tau_se.
inline ComplexMatrix lindblad_rk4(const ComplexMatrix& rho, int num_qubits, int qubit,
                                  const colltherm::ModelParams& p, int steps = 4000) {
  const ComplexMatrix sm = embed(lowering(), num_qubits, qubit);
  const ComplexMatrix sp = sm.adjoint();
  const double nb = p.n_bar();
  const double down = p.gamma_tau_se * (nb + 1.0);
  const double up = p.gamma_tau_se * nb;
  const ComplexMatrix spsm = sp * sm, smsp = sm * sp;
  auto rhs = [&](const ComplexMatrix& r) -> ComplexMatrix {
    return down * (sm * r * sp - 0.5 * (spsm * r + r * spsm)) +
           up * (sp * r * sm - 0.5 * (smsp * r + r * smsp));
  };
  ComplexMatrix r = rho;
  const double h = 1.0 / steps;
  for (int s = 0; s < steps; ++s) {
    const ComplexMatrix k1 = rhs(r);
    const ComplexMatrix k2 = rhs(r + 0.5 * h * k1);
    const ComplexMatrix k3 = rhs(r + 0.5 * h * k2);
    const ComplexMatrix k4 = rhs(r + h * k3);
    r += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return r;
}

/// exp(-i theta (s+ a- + s- a+)) by dense matrix exponential.
inline ComplexMatrix partial_swap_by_expm(double theta) {
  const ComplexMatrix sm = lowering();
  const ComplexMatrix v = kron_by_definition(sm.adjoint(), sm) + kron_by_definition(sm, sm.adjoint());
  const ComplexMatrix gen = Complex(0.0, -theta) * v;
  return gen.exp();
}

/// Partial trace over the last qubit of a 2-qubit operator, by definition.
inline ComplexMatrix trace_out_second(const ComplexMatrix& m) {
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) out(i, j) += m(2 * i + k, 2 * j + k);
  return out;
}

/// One stroboscopic step rho_S -> tr_A[E_S(U (rho_S x rho_A) U^dag)] with
/// dense matrices and the RK4-integrated master equation.
inline ComplexMatrix dense_collision_step(const ComplexMatrix& rho_s,
                                          const colltherm::ModelParams& p) {
  const ComplexMatrix u = partial_swap_by_expm(p.g_tau_sa);
  ComplexMatrix joint = kron_by_definition(rho_s, colltherm::prep_matrix(p.ancilla_prep));
  joint = u * joint * u.adjoint();
  joint = lindblad_rk4(joint, 2, 0, p);
  return trace_out_second(joint);
}

/// Repeated application of the channel from a seed state.
inline ComplexMatrix power_iteration(const colltherm::Superoperator& phi, ComplexMatrix seed,
                                     int steps) {
  for (int s = 0; s < steps; ++s) seed = phi.apply(seed);
  return seed;
}

/// d/dT of the Gibbs excited population 1/(1 + e^{omega/T}).
inline double thermal_population_derivative(double omega, double t) {
  const double x = omega / t;
  const double ex = std::exp(x);
  return (omega / (t * t)) * ex / ((1.0 + ex) * (1.0 + ex));
}

inline ComplexMatrix random_complex(std::mt19937_64& rng, Eigen::Index d) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  return g;
}

inline ComplexMatrix random_state(std::mt19937_64& rng, int num_qubits) {
  const ComplexMatrix g = random_complex(rng, Eigen::Index{1} << num_qubits);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

inline ComplexMatrix random_pure_state(std::mt19937_64& rng, int num_qubits) {
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  const Eigen::VectorXcd v = random_complex(rng, d).col(0).normalized();
  return v * v.adjoint();
}

inline ComplexMatrix random_unitary(std::mt19937_64& rng, Eigen::Index d) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_complex(rng, d));
  return qr.householderQ() * ComplexMatrix::Identity(d, d);
}

inline ComplexMatrix random_hermitian_traceless(std::mt19937_64& rng, Eigen::Index d) {
  const ComplexMatrix g = random_complex(rng, d);
  ComplexMatrix h = 0.5 * (g + g.adjoint());
  h -= (h.trace() / static_cast<double>(d)) * ComplexMatrix::Identity(d, d);
  return h;
}

/// Random POVM: Pi_k = S^{-1/2} A_k^dag A_k S^{-1/2} with S = sum A_k^dag A_k.
inline colltherm::Povm random_povm(std::mt19937_64& rng, Eigen::Index d, int outcomes) {
  std::vector<ComplexMatrix> raw;
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < outcomes; ++k) {
    const ComplexMatrix a = random_complex(rng, d);
    raw.push_back(a.adjoint() * a);
    total += raw.back();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(total);
  const ComplexMatrix inv_sqrt = es.eigenvectors() *
                                 es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                 es.eigenvectors().adjoint();
  std::vector<ComplexMatrix> elements;
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const ComplexMatrix& r : raw) {
    ComplexMatrix e = inv_sqrt * r * inv_sqrt;
    e = 0.5 * (e + e.adjoint()).eval();
    elements.push_back(e);
    sum += e;
  }
  // Fold the rounding residue into the last element.
  elements.back() += ComplexMatrix::Identity(d, d) - sum;
  return colltherm::Povm(std::move(elements));
}

}  // namespace oracle
