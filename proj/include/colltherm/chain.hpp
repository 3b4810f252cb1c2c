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
#include <numeric>
#include <vector>

#include "colltherm/steady_state.hpp"

namespace colltherm {

/// Block of N consecutive ancillas at steady state.
struct ChainConfig {
  ModelParams params;
  int n_ancillas = 1;
  int max_ancillas = 12;  // dense register is 2^(N+1) wide during construction

  void validate() const {
    params.validate();
    if (n_ancillas < 1) throw InvalidParameter("n_ancillas must be at least 1");
    if (n_ancillas > max_ancillas) throw ExceedsAncillaCap(n_ancillas, max_ancillas);
  }
};

/// Joint state of N ancillas and the system, register order A_1 .. A_N S,
/// before the system is traced out.
struct ChainRegister {
  ComplexMatrix matrix;
  int num_qubits;
  DensityMatrix system_fixed_point;
};

/// Starting from the stroboscopic fixed point, attaches N fresh ancillas one
/// at a time; each is collided with S and followed by the thermal map on S.
template <class ThermalMap = ExactThermalMap>
ChainRegister build_chain_register(const ChainConfig& config, const ThermalMap& thermal_map = {}) {
  config.validate();
  const ModelParams& p = config.params;
  FixedPoint fp = fixed_point(build_stroboscopic_channel(p, thermal_map));

  const ComplexMatrix ancilla = prep_matrix(p.ancilla_prep);
  const Eigen::Matrix4cd u = partial_swap_unitary(p.g_tau_sa);
  ComplexMatrix reg = fp.state.matrix();
  int n = 1;  // S is always the last qubit
  for (int k = 0; k < config.n_ancillas; ++k) {
    reg = insert_qubit(reg, n, n - 1, ancilla);
    ++n;
    const int sys = n - 1;
    conjugate_two_qubit(reg, n, sys, sys - 1, u);
    thermal_map(reg, n, sys, p);
  }
  return ChainRegister{std::move(reg), n, std::move(fp.state)};
}

/// rho_{A_1..A_N} at steady state (system traced out last).
template <class ThermalMap = ExactThermalMap>
DensityMatrix build_chain_state(const ChainConfig& config, const ThermalMap& thermal_map = {}) {
  ChainRegister reg = build_chain_register(config, thermal_map);
  std::vector<int> keep(config.n_ancillas);
  std::iota(keep.begin(), keep.end(), 0);
  ComplexMatrix reduced = partial_trace(reg.matrix, reg.num_qubits, keep);
  // Outputs of CPTP maps on a valid state; positivity holds by construction.
  return validate_state(reduced, 1e-9, false);
}

namespace detail {
inline void require_ground(const ModelParams& params, const char* who) {
  if (!is_ground(params.ancilla_prep)) {
    throw UnsupportedPrep(std::string(who) + " has a closed form only for ground-state ancillas");
  }
}
}  // namespace detail

/// <e|rho_{A_1}|e> at steady state, ground-state ancillas.
inline double single_ancilla_population(const ModelParams& params) {
  detail::require_ground(params, "single_ancilla_population");
  params.validate();
  const double decay = std::exp(-params.big_gamma());
  const double s = std::sin(params.g_tau_sa);
  const double c = std::cos(params.g_tau_sa);
  const double denom = 1.0 - decay * c * c;
  // No thermalization and no collision: every state is stationary.
  if (denom == 0.0) throw DegenerateFixedPoint(4);
  // nbar/(2 nbar + 1) is the Gibbs excited population.
  return thermal_excited_population(params) * (1.0 - decay) * s * s / denom;
}

/// <ge|rho_{A_1 A_2}|eg> at steady state, ground-state ancillas.
inline Complex pair_coherence(const ModelParams& params) {
  detail::require_ground(params, "pair_coherence");
  return std::exp(-0.5 * params.big_gamma()) * std::cos(params.g_tau_sa) *
         single_ancilla_population(params);
}

}  // namespace colltherm
