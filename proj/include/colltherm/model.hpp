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
#include <numbers>
#include <string>
#include <variant>

#include "colltherm/linalg.hpp"

namespace colltherm {

// Units: hbar = k_B = 1. Temperatures are k_B T / (hbar Omega) when omega = 1.

struct GroundPrep {};
struct ExcitedPrep {};
struct PlusPrep {};
struct CustomPrep {
  DensityMatrix rho;  // one qubit
};

/// Initial state of every ancilla in the stream.
using AncillaPrep = std::variant<GroundPrep, ExcitedPrep, PlusPrep, CustomPrep>;

inline CustomPrep make_custom_prep(const ComplexMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) {
    throw DimensionMismatch("custom ancilla preparation must be a single-qubit state");
  }
  return CustomPrep{validate_state(rho, 1e-10)};
}

inline ComplexMatrix prep_matrix(const AncillaPrep& prep) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  std::visit(
      [&m](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, GroundPrep>) {
          m(0, 0) = 1.0;
        } else if constexpr (std::is_same_v<P, ExcitedPrep>) {
          m(1, 1) = 1.0;
        } else if constexpr (std::is_same_v<P, PlusPrep>) {
          m.setConstant(0.5);
        } else {
          m = p.rho.matrix();
        }
      },
      prep);
  return m;
}

inline std::string prep_label(const AncillaPrep& prep) {
  switch (prep.index()) {
    case 0: return "g";
    case 1: return "e";
    case 2: return "plus";
    default: return "custom";
  }
}

inline bool is_ground(const AncillaPrep& prep) {
  return std::holds_alternative<GroundPrep>(prep);
}

/// Physical parameters of the collisional model.
struct ModelParams {
  double omega = 1.0;
  double temperature = 2.0;
  double gamma_tau_se = 0.1;  // gamma * tau_SE
  double g_tau_sa = std::numbers::pi / 2;  // g * tau_SA, partial-swap angle
  AncillaPrep ancilla_prep = GroundPrep{};

  /// Bose occupation 1/(e^{omega/T} - 1).
  double n_bar() const { return 1.0 / std::expm1(omega / temperature); }

  /// Effective relaxation strength gamma (2 nbar + 1) tau_SE. Written as
  /// gamma tau_SE coth(omega / 2T) for stability at large nbar.
  double big_gamma() const { return gamma_tau_se / std::tanh(omega / (2.0 * temperature)); }

  ModelParams with_temperature(double t) const {
    ModelParams copy = *this;
    copy.temperature = t;
    return copy;
  }

  void validate() const {
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
      throw InvalidParameter("temperature must be positive, got " + std::to_string(temperature));
    }
    if (!(omega > 0.0) || !std::isfinite(omega)) {
      throw InvalidParameter("omega must be positive, got " + std::to_string(omega));
    }
    if (!(gamma_tau_se >= 0.0) || !std::isfinite(gamma_tau_se)) {
      throw InvalidParameter("gamma_tau_se must be non-negative, got " +
                             std::to_string(gamma_tau_se));
    }
    if (!(g_tau_sa >= 0.0 && g_tau_sa <= std::numbers::pi / 2 + 1e-12)) {
      throw InvalidParameter("g_tau_sa must lie in [0, pi/2], got " + std::to_string(g_tau_sa));
    }
  }
};

inline double mean_occupation(const ModelParams& params) {
  if (!(params.temperature > 0.0)) throw InvalidParameter("temperature must be positive");
  return params.n_bar();
}

/// Excited-state population of the Gibbs qubit, nbar/(2 nbar + 1).
inline double thermal_excited_population(const ModelParams& params) {
  // Fermi form of nbar/(2 nbar + 1); finite for T -> 0 and T -> infinity.
  return 1.0 / (1.0 + std::exp(params.omega / params.temperature));
}

inline DensityMatrix thermal_qubit_state(const ModelParams& params) {
  if (!(params.temperature > 0.0)) throw InvalidParameter("temperature must be positive");
  const double pe = thermal_excited_population(params);
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0 - pe;
  m(1, 1) = pe;
  return validate_state(m, 1e-12, false);
}

/// Exact integrated thermal channel exp(L_S tau_SE) on one qubit of a
/// register: populations relax at rate Gamma towards the Gibbs populations and
/// coherences decay at Gamma/2 (interaction picture, resonant). Acts linearly
/// on arbitrary operators, in place, in O(dim^2).
struct ExactThermalMap {
  void operator()(ComplexMatrix& m, int num_qubits, int qubit, const ModelParams& params) const {
    detail::require_qubit(num_qubits, qubit, "apply_thermal_map");
    const double decay = std::exp(-params.big_gamma());
    const double coherence = std::exp(-0.5 * params.big_gamma());
    apply(m, num_qubits, qubit, decay, coherence, thermal_excited_population(params));
  }

  static void apply(ComplexMatrix& m, int num_qubits, int qubit, double decay, double coherence,
                    double pe) {
    const Eigen::Index dim = m.rows();
    const std::int64_t b = detail::bit_of(num_qubits, qubit);
    const double feed = 1.0 - decay;
    for (Eigen::Index c = 0; c < dim; ++c) {
      if (c & b) continue;
      Complex* cg = m.col(c).data();
      Complex* ce = m.col(c | b).data();
      for (Eigen::Index r = 0; r < dim; ++r) {
        if (r & b) continue;
        const Complex gg = cg[r], ee = ce[r | b];
        const Complex pop = gg + ee;
        cg[r] = decay * gg + feed * (1.0 - pe) * pop;
        ce[r | b] = decay * ee + feed * pe * pop;
        ce[r] *= coherence;
        cg[r | b] *= coherence;
      }
    }
  }
};

inline DensityMatrix apply_thermal_map(const DensityMatrix& rho, int system_qubit,
                                       const ModelParams& params) {
  ComplexMatrix m = rho.matrix();
  ExactThermalMap{}(m, rho.num_qubits(), system_qubit, params);
  return validate_state(m, 1e-10, false);
}

/// exp(-i theta (s+ a- + s- a+)) on (system, ancilla), basis |s a>.
inline Eigen::Matrix4cd partial_swap_unitary(double theta) {
  const Complex c{std::cos(theta), 0.0};
  const Complex s{0.0, -std::sin(theta)};
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u(0, 0) = 1.0;
  u(3, 3) = 1.0;
  u(1, 1) = c;
  u(2, 2) = c;
  u(1, 2) = s;
  u(2, 1) = s;
  return u;
}

/// Thermal Fisher information of a Gibbs qubit, Var(H)/T^4 with
/// H = omega sigma_z / 2, i.e. (omega/2T^2)^2 sech^2(omega/2T).
inline double thermal_fisher_information(const ModelParams& params) {
  if (!(params.temperature > 0.0)) throw InvalidParameter("temperature must be positive");
  const double t = params.temperature;
  const double x = params.omega / (2.0 * t);
  const double sech = 1.0 / std::cosh(x);
  const double pref = params.omega / (2.0 * t * t);
  return pref * pref * sech * sech;
}

}  // namespace colltherm
