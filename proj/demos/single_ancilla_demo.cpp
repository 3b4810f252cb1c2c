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

// Prints the steady state of the system qubit and the QFI of small ancilla
// blocks for a ground-state stream at k_B T = 2 hbar omega.

#include <cstdio>
#include <numbers>

#include "colltherm/colltherm.hpp"

int main() {
  using namespace colltherm;
  ModelParams params;
  params.temperature = 2.0;
  params.gamma_tau_se = 0.1;
  params.g_tau_sa = std::numbers::pi / 100;
  params.ancilla_prep = GroundPrep{};

  const FixedPoint fp = fixed_point(build_stroboscopic_channel(params));
  const double f_th = thermal_fisher_information(params);
  std::printf("nbar = %.6f  Gamma = %.6f  F_th = %.6g\n", params.n_bar(), params.big_gamma(), f_th);
  std::printf("steady-state excited population %.6g (Gibbs %.6g), spectral gap %.4g\n",
              fp.state(1, 1).real(), thermal_excited_population(params), fp.spectral_gap);

  double f1 = 0.0;
  for (int n = 1; n <= 4; ++n) {
    const QfiResult r = qfi_chain(ChainConfig{params, n});
    if (n == 1) f1 = r.value;
    std::printf("N = %d  F_N = %.6g  F_N/F_th = %.6g  F_N/(N F_1) = %.4f\n", n, r.value,
                r.value / f_th, r.value / (n * f1));
  }
  return 0;
}
