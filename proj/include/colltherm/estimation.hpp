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

#include <cmath>
#include <concepts>
#include <utility>
#include <vector>

#include "colltherm/chain.hpp"

namespace colltherm {

/// Quantum Fisher information of temperature plus numerical diagnostics.
struct QfiResult {
  double value = 0.0;
  long n_truncated_pairs = 0;  // eigenvalue pairs dropped by the support cutoff
  double derivative_step = 0.0;
  double richardson_error_estimate = 0.0;
};

struct TemperatureDerivative {
  ComplexMatrix value;      // Hermitian, traceless
  double step = 0.0;        // delta T of the coarse level
  double richardson_error = 0.0;
};

template <class F>
concept StateBuilder = std::invocable<const F&, double> &&
    std::convertible_to<std::invoke_result_t<const F&, double>, DensityMatrix>;

/// d rho / dT by central differences at steps delta = rel_step * t and
/// delta/2, combined with one Richardson level. The error estimate is the
/// max-norm gap between the extrapolated and the fine-step derivative.
template <StateBuilder Builder>
TemperatureDerivative temperature_derivative(const Builder& state_builder, double t,
                                             double rel_step = 1e-5) {
  const double delta = rel_step * t;
  if (!(rel_step > 0.0) || !(rel_step < 1.0) || !(t > 0.0) || !(delta < 0.1)) {
    throw StepTooLarge("temperature step " + std::to_string(delta) + " at T = " +
                       std::to_string(t) + " is not in (0, min(T, 0.1))");
  }
  auto central = [&](double h) -> ComplexMatrix {
    const DensityMatrix up = state_builder(t + h);
    const DensityMatrix down = state_builder(t - h);
    return (up.matrix() - down.matrix()) / (2.0 * h);
  };
  const ComplexMatrix coarse = central(delta);
  const ComplexMatrix fine = central(0.5 * delta);
  ComplexMatrix extrapolated = (4.0 * fine - coarse) / 3.0;
  extrapolated = 0.5 * (extrapolated + extrapolated.adjoint()).eval();
  const Eigen::Index d = extrapolated.rows();
  extrapolated -= (extrapolated.trace() / static_cast<double>(d)) * ComplexMatrix::Identity(d, d);

  const double err = max_abs(extrapolated - fine);
  // Below ~1e-5 the differences are dominated by rounding (eps / delta).
  const double scale = std::max(max_abs(extrapolated), 1e-5);
  if (err / scale > 1e-4) throw NonSmooth(err / scale);
  return {std::move(extrapolated), delta, err};
}

/// QFI = sum_{ij} 2 |<i|drho|j>|^2 / (lambda_i + lambda_j) over the eigenbasis
/// of rho, i.e. tr(rho L^2) for the symmetric logarithmic derivative L.
/// Pairs with lambda_i + lambda_j <= support_cutoff * lambda_max are dropped;
/// any such pair carrying derivative weight above 1e-6 raises SupportLeak.
inline QfiResult qfi(const DensityMatrix& rho, const ComplexMatrix& drho,
                     double support_cutoff = 1e-12) {
  if (drho.rows() != rho.dim() || drho.cols() != rho.dim()) {
    throw DimensionMismatch("qfi: derivative and state dimensions differ");
  }
  const double herm = hermiticity_defect(drho);
  if (herm > 1e-8) throw HermiticityViolation(herm);
  const double tr = std::abs(drho.trace());
  if (tr > 1e-8) throw InvalidParameter("qfi: derivative is not traceless (" + std::to_string(tr) + ")");

  const HermitianEigen eig = hermitian_eig(rho.matrix());
  const RealVector& lambda = eig.eigenvalues;
  if (lambda.minCoeff() < -1e-9) throw NegativityViolation(-lambda.minCoeff());
  const ComplexMatrix d = eig.eigenvectors.adjoint() * drho * eig.eigenvectors;

  const double threshold = support_cutoff * lambda.maxCoeff();
  const Eigen::Index n = rho.dim();
  QfiResult result;
  double value = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double denom = lambda(i) + lambda(j);
      const double mag = std::abs(d(i, j));
      if (denom <= threshold) {
        if (mag > 1e-6) throw SupportLeak(mag);
        ++result.n_truncated_pairs;
        continue;
      }
      value += 2.0 * mag * mag / denom;
    }
  }
  result.value = value;
  return result;
}

struct QfiOptions {
  double rel_step = 1e-5;
  double support_cutoff = 1e-12;
};

/// QFI of the N-ancilla steady-state block with respect to temperature.
template <class ThermalMap = ExactThermalMap>
QfiResult qfi_chain(const ChainConfig& config, const QfiOptions& options = {},
                    const ThermalMap& thermal_map = {}) {
  config.validate();
  auto builder = [&](double t) {
    ChainConfig shifted = config;
    shifted.params.temperature = t;
    return build_chain_state(shifted, thermal_map);
  };
  const double t = config.params.temperature;
  const DensityMatrix rho = builder(t);
  const TemperatureDerivative deriv = temperature_derivative(builder, t, options.rel_step);
  QfiResult result = qfi(rho, deriv.value, options.support_cutoff);
  result.derivative_step = deriv.step;
  result.richardson_error_estimate = deriv.richardson_error;
  return result;
}

/// Positive operator-valued measure on a fixed dimension.
class Povm {
 public:
  /// Validates positivity (min eigenvalue >= -1e-10) and completeness
  /// (sum = I to 1e-10).
  explicit Povm(std::vector<ComplexMatrix> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw InvalidParameter("POVM needs at least one element");
    const Eigen::Index d = elements_.front().rows();
    ComplexMatrix total = ComplexMatrix::Zero(d, d);
    for (const ComplexMatrix& e : elements_) {
      if (e.rows() != d || e.cols() != d) throw DimensionMismatch("POVM elements differ in size");
      const double min_eig = hermitian_eig(e).eigenvalues.minCoeff();
      if (min_eig < -1e-10) throw NegativityViolation(-min_eig);
      total += e;
    }
    const double completeness = max_abs(total - ComplexMatrix::Identity(d, d));
    if (completeness > 1e-10) {
      throw InvalidParameter("POVM elements do not sum to identity (defect " +
                             std::to_string(completeness) + ")");
    }
  }

  const std::vector<ComplexMatrix>& elements() const noexcept { return elements_; }
  Eigen::Index dim() const { return elements_.front().rows(); }

 private:
  std::vector<ComplexMatrix> elements_;
};

/// Projective measurement in the computational (energy) basis.
inline Povm computational_basis_povm(int num_qubits) {
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  std::vector<ComplexMatrix> elements;
  for (Eigen::Index i = 0; i < d; ++i) {
    ComplexMatrix p = ComplexMatrix::Zero(d, d);
    p(i, i) = 1.0;
    elements.push_back(std::move(p));
  }
  return Povm(std::move(elements));
}

/// Classical Fisher information sum_x (d_T p(x))^2 / p(x) of a POVM.
inline double classical_fisher_information(const Povm& povm, const DensityMatrix& rho,
                                           const ComplexMatrix& drho) {
  if (povm.dim() != rho.dim() || drho.rows() != rho.dim() || drho.cols() != rho.dim()) {
    throw DimensionMismatch("classical_fisher_information: POVM, state and derivative "
                            "dimensions differ");
  }
  double fi = 0.0;
  for (const ComplexMatrix& element : povm.elements()) {
    // tr(A B) = sum_ij A_ij B_ji
    const double p = (element.cwiseProduct(rho.matrix().transpose())).sum().real();
    if (p <= 1e-14) continue;
    const double dp = (element.cwiseProduct(drho.transpose())).sum().real();
    fi += dp * dp / p;
  }
  return fi;
}

/// Closed-form F_1 / F_th for full swaps with ground-state ancillas.
/// The Gamma -> 0 limit is 0.
inline double analytic_f1_ratio(double n_bar, double big_gamma) {
  if (big_gamma < 0.0) throw InvalidParameter("Gamma must be non-negative");
  if (big_gamma == 0.0) return 0.0;
  // Numerator and denominator scaled by e^{-2 Gamma}.
  const double em = std::exp(-big_gamma);
  const double lead = -std::expm1(-big_gamma) + 2.0 * n_bar * big_gamma * em;
  const double num = (n_bar + 1.0) * lead * lead;
  const double den = -(n_bar + 1.0) * std::expm1(-2.0 * big_gamma) + em * std::expm1(-big_gamma);
  return num / den;
}

/// Weak-coupling F_2 / (2 F_1) for ground-state ancillas, to zeroth order in
/// the collision angle: 1 + (nbar Gamma)^2 / (e^Gamma - 1).
inline double analytic_pair_ratio_weak(double n_bar, double big_gamma) {
  if (big_gamma < 0.0) throw InvalidParameter("Gamma must be non-negative");
  if (big_gamma == 0.0) return 1.0;
  const double x = n_bar * big_gamma;
  return 1.0 + x * x / std::expm1(big_gamma);
}

/// Maximizer of a unimodal function on [lo, hi]: coarse grid then golden
/// section on the bracketing cell.
template <class F>
std::pair<double, double> maximize_scalar(const F& f, double lo, double hi, int grid = 400) {
  double best_x = lo, best_f = f(lo);
  const double h = (hi - lo) / grid;
  for (int i = 1; i <= grid; ++i) {
    const double x = lo + i * h;
    const double v = f(x);
    if (v > best_f) {
      best_f = v;
      best_x = x;
    }
  }
  double a = std::max(lo, best_x - h), b = std::min(hi, best_x + h);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * (1.0 + std::abs(best_x)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace colltherm
