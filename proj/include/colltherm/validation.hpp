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

// Analytic-versus-numeric consistency checks behind `colltherm validate`.
//
// Every check runs the numerical pipeline against a closed form or a
// structural property and reports the worst deviation it saw next to the
// tolerance it must stay under. The pipeline is parameterized on the thermal
// map so that a deliberately broken map can be injected and shown to fail.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "colltherm/estimation.hpp"

namespace colltherm {

struct ValidationCheck {
  std::string name;
  bool pass = false;
  double deviation = 0.0;
  double tolerance = 0.0;
  std::string note;  // set when the check threw
};

inline nlohmann::json to_json(const std::vector<ValidationCheck>& checks) {
  nlohmann::json report;
  report["checks"] = nlohmann::json::array();
  bool all = true;
  for (const ValidationCheck& c : checks) {
    nlohmann::json j{{"name", c.name}, {"pass", c.pass}, {"tolerance", c.tolerance}};
    // JSON has no NaN/Inf; a failed computation reports null.
    if (std::isfinite(c.deviation)) j["deviation"] = c.deviation;
    else j["deviation"] = nullptr;
    if (!c.note.empty()) j["error"] = c.note;
    report["checks"].push_back(std::move(j));
    all = all && c.pass;
  }
  report["all_pass"] = all;
  return report;
}

namespace detail {

/// Runs `measure` (returning the worst deviation) and compares it with tol.
inline ValidationCheck run_check(std::string name, double tol,
                                 const std::function<double()>& measure) {
  ValidationCheck c{std::move(name), false, std::numeric_limits<double>::infinity(), tol, {}};
  try {
    c.deviation = measure();
    c.pass = std::isfinite(c.deviation) && c.deviation <= tol;
  } catch (const std::exception& e) {
    c.note = e.what();
  }
  return c;
}

inline ModelParams params_at_nbar(double n_bar, double big_gamma) {
  ModelParams p;
  p.temperature = p.omega / std::log1p(1.0 / n_bar);
  p.gamma_tau_se = big_gamma / (2.0 * n_bar + 1.0);
  return p;
}

inline ComplexMatrix random_state(std::mt19937_64& rng, int num_qubits) {
  std::normal_distribution<double> normal;
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  ComplexMatrix g(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  }
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

}  // namespace detail

struct ValidationOptions {
  bool quick = false;
};

template <class ThermalMap = ExactThermalMap>
std::vector<ValidationCheck> run_validation(const ValidationOptions& options = {},
                                            const ThermalMap& thermal_map = {}) {
  using detail::run_check;
  constexpr double pi = std::numbers::pi;
  const bool quick = options.quick;
  std::vector<ValidationCheck> checks;

  ModelParams base;  // T = 2, omega = 1

  checks.push_back(run_check("tfi_anchor", 5e-4, [&] {
    return std::abs(thermal_fisher_information(base) - 0.0147);
  }));

  checks.push_back(run_check("single_ancilla_full_swap_closed_form", 1e-6, [&] {
    const std::vector<double> gammas = quick ? std::vector<double>{0.4, 1.6, 5}
                                             : std::vector<double>{0.1, 0.4, 0.8, 1.6, 3, 5};
    const std::vector<double> nbars = quick ? std::vector<double>{1.5415}
                                            : std::vector<double>{0.5, 1.5415, 5};
    double worst = 0.0;
    for (double nb : nbars) {
      for (double g : gammas) {
        ModelParams p = detail::params_at_nbar(nb, g);
        p.g_tau_sa = pi / 2;
        const double f1 = qfi_chain(ChainConfig{p, 1}, {}, thermal_map).value;
        const double expected = analytic_f1_ratio(p.n_bar(), p.big_gamma()) *
                                thermal_fisher_information(p);
        worst = std::max(worst, std::abs(f1 / expected - 1.0));
      }
    }
    return worst;
  }));

  checks.push_back(run_check("pair_coherence_and_population", 1e-10, [&] {
    double worst = 0.0;
    for (double gts : {0.1, 0.4, 1.0}) {
      for (double theta : {pi / 100, pi / 8, pi / 2 - 0.01}) {
        ModelParams p = base;
        p.gamma_tau_se = gts;
        p.g_tau_sa = theta;
        const DensityMatrix one = build_chain_state(ChainConfig{p, 1}, thermal_map);
        const DensityMatrix two = build_chain_state(ChainConfig{p, 2}, thermal_map);
        worst = std::max(worst, std::abs(one(1, 1).real() - single_ancilla_population(p)));
        // |ge> = index 1, |eg> = index 2
        worst = std::max(worst, std::abs(two(1, 2) - pair_coherence(p)));
      }
    }
    return worst;
  }));

  checks.push_back(run_check("weak_coupling_pair_ratio", 1e-2, [&] {
    const std::vector<double> gammas =
        quick ? std::vector<double>{0.8, 1.6} : std::vector<double>{0.4, 0.8, 1.6, 3};
    double worst = 0.0;
    for (double g : gammas) {
      ModelParams p = base;
      p.g_tau_sa = pi / 100;
      p.gamma_tau_se = g / (2.0 * p.n_bar() + 1.0);
      const double f1 = qfi_chain(ChainConfig{p, 1}, {}, thermal_map).value;
      const double f2 = qfi_chain(ChainConfig{p, 2}, {}, thermal_map).value;
      const double expected = analytic_pair_ratio_weak(p.n_bar(), g);
      worst = std::max(worst, std::abs(f2 / (2.0 * f1) / expected - 1.0));
    }
    return worst;
  }));

  checks.push_back(run_check("weak_coupling_enhancement_maximum", 2e-2, [&] {
    // (nbar Gamma)^2/(e^Gamma - 1) per nbar^2 peaks at 0.647.
    const auto [arg, peak] = maximize_scalar(
        [](double g) { return analytic_pair_ratio_weak(1.0, g) - 1.0; }, 0.01, 10.0);
    if (std::abs(arg - 1.59) > 0.05) return std::numeric_limits<double>::infinity();
    return std::abs(peak / 0.647 - 1.0);
  }));

  checks.push_back(run_check("single_ancilla_ratio_at_T2", 2e-2, [&] {
    return std::abs(analytic_f1_ratio(base.n_bar(), 0.8) / 3.93 - 1.0);
  }));

  checks.push_back(run_check("single_ancilla_high_temperature_peak", 0.1, [&] {
    const double nb = base.with_temperature(20.0).n_bar();
    const auto [arg, peak] =
        maximize_scalar([nb](double g) { return analytic_f1_ratio(nb, g); }, 0.01, 20.0);
    if (std::abs(arg - 0.8) > 0.05) return std::numeric_limits<double>::infinity();
    return std::abs(peak / (0.65 * 400.0) - 1.0);
  }));

  checks.push_back(run_check("thermalization_limit", 1e-3, [&] {
    ModelParams p = base;
    p.gamma_tau_se = 20.0;
    p.g_tau_sa = pi / 2;
    const FixedPoint fp = fixed_point(build_stroboscopic_channel(p, thermal_map));
    const double state_dev = max_abs(fp.state.matrix() - thermal_qubit_state(p).matrix());
    if (state_dev > 1e-6) return std::numeric_limits<double>::infinity();
    const double f1 = qfi_chain(ChainConfig{p, 1}, {}, thermal_map).value;
    return std::abs(f1 / thermal_fisher_information(p) - 1.0);
  }));

  checks.push_back(run_check("decorrelation_limit", 1e-3, [&] {
    ModelParams p = base;
    p.gamma_tau_se = 20.0;
    p.g_tau_sa = pi / 2;
    const double f1 = qfi_chain(ChainConfig{p, 1}, {}, thermal_map).value;
    double worst = 0.0;
    for (int n = 2; n <= (quick ? 2 : 4); ++n) {
      const double fn = qfi_chain(ChainConfig{p, n}, {}, thermal_map).value;
      worst = std::max(worst, std::abs(fn / (n * f1) - 1.0));
    }
    return worst;
  }));

  checks.push_back(run_check("superadditivity_and_monotonicity", 0.0, [&] {
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> temp(0.5, 5.0), gts(0.05, 2.0), theta(0.05, pi / 2);
    const int samples = quick ? 2 : 6;
    const int n_max = quick ? 3 : 6;
    double worst = 0.0;  // largest relative violation
    for (int s = 0; s < samples; ++s) {
      ModelParams p;
      p.temperature = temp(rng);
      p.gamma_tau_se = gts(rng);
      p.g_tau_sa = theta(rng);
      for (AncillaPrep prep : {AncillaPrep{GroundPrep{}}, AncillaPrep{ExcitedPrep{}},
                               AncillaPrep{PlusPrep{}}}) {
        p.ancilla_prep = prep;
        const double f1 = qfi_chain(ChainConfig{p, 1}, {}, thermal_map).value;
        double prev = f1;
        for (int n = 2; n <= n_max; ++n) {
          const double fn = qfi_chain(ChainConfig{p, n}, {}, thermal_map).value;
          const double linear = n * f1 * (1.0 - 1e-9);
          if (fn < linear) worst = std::max(worst, (linear - fn) / linear);
          if (fn < prev * (1.0 - 1e-9)) worst = std::max(worst, (prev - fn) / prev);
          prev = fn;
        }
      }
    }
    return worst;
  }));

  checks.push_back(run_check("thermal_map_semigroup", 1e-12, [&] {
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const ComplexMatrix rho = detail::random_state(rng, 2);
      ModelParams a = base, b = base, ab = base;
      a.gamma_tau_se = 0.15;
      b.gamma_tau_se = 0.6;
      ab.gamma_tau_se = 0.75;
      ComplexMatrix twice = rho, once = rho;
      thermal_map(twice, 2, trial % 2, a);
      thermal_map(twice, 2, trial % 2, b);
      thermal_map(once, 2, trial % 2, ab);
      worst = std::max(worst, max_abs(twice - once));
    }
    return worst;
  }));

  checks.push_back(run_check("partial_swap_unitarity_and_excitation", 1e-12, [&] {
    ComplexMatrix sz_total = ComplexMatrix::Zero(4, 4);
    // sigma_z^S + sigma_z^A; the overall sign does not affect the commutator.
    sz_total.diagonal() << 2.0, 0.0, 0.0, -2.0;
    double worst = 0.0;
    for (double theta : {0.0, 0.3, pi / 4, pi / 2, 1.234}) {
      const ComplexMatrix u = partial_swap_unitary(theta);
      worst = std::max(worst, max_abs(u * u.adjoint() - ComplexMatrix::Identity(4, 4)));
      worst = std::max(worst, max_abs(u * sz_total - sz_total * u));
    }
    return worst;
  }));

  checks.push_back(run_check("channel_trace_preservation", 1e-10, [&] {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> gts(0.0, 3.0), theta(0.0, pi / 2);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      ModelParams p = base;
      p.gamma_tau_se = gts(rng);
      p.g_tau_sa = theta(rng);
      p.ancilla_prep = trial % 3 == 0 ? AncillaPrep{PlusPrep{}} : AncillaPrep{GroundPrep{}};
      worst = std::max(worst, build_stroboscopic_channel(p, thermal_map).trace_preservation_defect());
    }
    return worst;
  }));

  if (!quick) {
    checks.push_back(run_check("block_ratios_n10", 0.2, [&] {
      ModelParams p = base;
      p.g_tau_sa = pi / 100;
      p.gamma_tau_se = 0.1;
      const std::pair<AncillaPrep, double> targets[] = {
          {GroundPrep{}, 4.0}, {ExcitedPrep{}, 10.0}, {PlusPrep{}, 14.0}};
      double worst = 0.0;
      for (const auto& [prep, target] : targets) {
        p.ancilla_prep = prep;
        const double f1 = qfi_chain(ChainConfig{p, 1}, {}, thermal_map).value;
        const double f10 = qfi_chain(ChainConfig{p, 10}, {}, thermal_map).value;
        worst = std::max(worst, std::abs(f10 / (10.0 * f1) / target - 1.0));
      }
      return worst;
    }));
  }

  return checks;
}

}  // namespace colltherm
