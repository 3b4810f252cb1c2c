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

#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "colltherm/chain.hpp"
#include "oracles.hpp"

namespace colltherm {
namespace {

constexpr double kPi = std::numbers::pi;

ModelParams make(double t, double gts, double theta, AncillaPrep prep = GroundPrep{}) {
  ModelParams p;
  p.temperature = t;
  p.gamma_tau_se = gts;
  p.g_tau_sa = theta;
  p.ancilla_prep = prep;
  return p;
}

const AncillaPrep kPreps[] = {GroundPrep{}, ExcitedPrep{}, PlusPrep{}};

TEST(ChainStateTest, FullSwapFullThermalizationGivesGibbsAncilla) {
  const ModelParams p = make(2.0, 20.0, kPi / 2);
  const DensityMatrix one = build_chain_state(ChainConfig{p, 1});
  EXPECT_LE(max_abs(one.matrix() - thermal_qubit_state(p).matrix()), 1e-6);
}

TEST(ChainStateTest, NoInteractionLeavesProductOfPreparations) {
  for (const AncillaPrep& prep : kPreps) {
    const ModelParams p = make(2.0, 0.3, 0.0, prep);
    for (int n = 1; n <= 4; ++n) {
      ComplexMatrix expected = prep_matrix(prep);
      for (int k = 1; k < n; ++k) expected = kron(expected, prep_matrix(prep));
      EXPECT_LE(max_abs(build_chain_state(ChainConfig{p, n}).matrix() - expected), 1e-15);
    }
  }
}

TEST(ChainStateTest, PairCoherenceMatchesClosedForm) {
  const ModelParams p = make(2.0, 0.4, kPi / 100);
  const DensityMatrix two = build_chain_state(ChainConfig{p, 2});
  // |ge> is index 1 and |eg> index 2 with A_1 the most significant qubit.
  EXPECT_LE(std::abs(two(1, 2) - pair_coherence(p)), 1e-10);
  EXPECT_GT(std::abs(pair_coherence(p)), 1e-5);
}

TEST(ChainStateTest, SingleAncillaPopulationMatchesClosedForm) {
  for (double gts : {0.1, 0.4, 1.0}) {
    for (double theta : {kPi / 100, kPi / 8, kPi / 2 - 0.01}) {
      const ModelParams p = make(2.0, gts, theta);
      const DensityMatrix one = build_chain_state(ChainConfig{p, 1});
      EXPECT_LE(std::abs(one(1, 1).real() - single_ancilla_population(p)), 1e-10);
      const DensityMatrix two = build_chain_state(ChainConfig{p, 2});
      EXPECT_LE(std::abs(two(1, 2) - pair_coherence(p)), 1e-10);
    }
  }
}

TEST(ClosedFormTest, PopulationLimits) {
  // Full swap with rapid rethermalization approaches the Gibbs population.
  const ModelParams hot = make(2.0, 40.0, kPi / 2);
  EXPECT_NEAR(single_ancilla_population(hot), hot.n_bar() / (2 * hot.n_bar() + 1), 1e-12);
  // Zeno limit.
  EXPECT_EQ(single_ancilla_population(make(2.0, 0.0, 0.3)), 0.0);
}

TEST(ClosedFormTest, CoherenceLimits) {
  EXPECT_LT(std::abs(pair_coherence(make(2.0, 60.0, 0.3))), 1e-20);
  EXPECT_LT(std::abs(pair_coherence(make(2.0, 0.5, kPi / 2))), 1e-16);
}

TEST(ClosedFormTest, RequireGroundStateAncillas) {
  EXPECT_THROW(single_ancilla_population(make(2.0, 0.5, 0.3, ExcitedPrep{})), UnsupportedPrep);
  EXPECT_THROW(pair_coherence(make(2.0, 0.5, 0.3, PlusPrep{})), UnsupportedPrep);
}

TEST(ChainStateTest, TranslationInvariantMarginals) {
  std::mt19937_64 rng(30);
  for (const AncillaPrep& prep : kPreps) {
    const ModelParams p = make(1.7, 0.35, 0.6, prep);
    const DensityMatrix chain = build_chain_state(ChainConfig{p, 5});
    const DensityMatrix first = partial_trace(chain, {0});
    for (int k = 1; k < 5; ++k) {
      EXPECT_LE(max_abs(partial_trace(chain, {k}).matrix() - first.matrix()), 1e-10);
    }
    // Adjacent pairs as well.
    const DensityMatrix pair = partial_trace(chain, {0, 1});
    EXPECT_LE(max_abs(partial_trace(chain, {3, 4}).matrix() - pair.matrix()), 1e-10);
  }
}

TEST(ChainStateTest, MarginalConsistencyAcrossBlockLengths) {
  for (const AncillaPrep& prep : kPreps) {
    const ModelParams p = make(2.0, 0.2, 0.4, prep);
    for (int n = 2; n <= 5; ++n) {
      const DensityMatrix longer = build_chain_state(ChainConfig{p, n});
      const DensityMatrix shorter = build_chain_state(ChainConfig{p, n - 1});
      std::vector<int> keep(n - 1);
      std::iota(keep.begin(), keep.end(), 0);
      EXPECT_LE(max_abs(partial_trace(longer, keep).matrix() - shorter.matrix()), 1e-10);
    }
  }
}

TEST(ChainStateTest, OutputsAreValidStates) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> t(0.5, 5.0), g(0.0, 2.0), th(0.0, kPi / 2);
  for (int trial = 0; trial < 10; ++trial) {
    ModelParams p = make(t(rng), g(rng), th(rng), kPreps[trial % 3]);
    if (p.gamma_tau_se == 0.0 && p.g_tau_sa == 0.0) continue;
    EXPECT_NO_THROW(validate_state(build_chain_state(ChainConfig{p, 4}).matrix(), 1e-9));
  }
}

TEST(ChainStateTest, ExcitationNumberBlocksInFullRegister) {
  for (const AncillaPrep& prep : {AncillaPrep{GroundPrep{}}, AncillaPrep{ExcitedPrep{}}}) {
    const ModelParams p = make(2.0, 0.3, 0.7, prep);
    const ChainRegister reg = build_chain_register(ChainConfig{p, 4});
    double worst = 0.0;
    for (Eigen::Index i = 0; i < reg.matrix.rows(); ++i) {
      for (Eigen::Index j = 0; j < reg.matrix.cols(); ++j) {
        if (std::popcount(static_cast<unsigned>(i)) != std::popcount(static_cast<unsigned>(j))) {
          worst = std::max(worst, std::abs(reg.matrix(i, j)));
        }
      }
    }
    EXPECT_LE(worst, 1e-12);
  }
}

TEST(ChainStateTest, MatchesDenseUnrolledConstruction) {
  // Rebuild N = 3 with full matrices: rho_S* (x) rho_A^3, then collisions.
  const ModelParams p = make(1.4, 0.25, 0.8, PlusPrep{});
  const ChainRegister reg = build_chain_register(ChainConfig{p, 3});
  const ComplexMatrix sys = reg.system_fixed_point.matrix();
  const ComplexMatrix a = prep_matrix(p.ancilla_prep);
  // Dense register order S A1 A2 A3, converted to the library's A1 A2 A3 S.
  ComplexMatrix state = oracle::kron_by_definition(
      oracle::kron_by_definition(oracle::kron_by_definition(sys, a), a), a);
  const ComplexMatrix u2 = oracle::partial_swap_by_expm(p.g_tau_sa);
  for (int k = 1; k <= 3; ++k) {
    // Two-qubit gate on (S = qubit 0, A_k = qubit k) in a 4-qubit register.
    ComplexMatrix full = ComplexMatrix::Zero(16, 16);
    for (int i = 0; i < 16; ++i) {
      for (int j = 0; j < 16; ++j) {
        const int rest_mask = 0xF & ~(8 | (8 >> k));
        if ((i & rest_mask) != (j & rest_mask)) continue;
        const int si = (i >> 3) & 1, ai = (i >> (3 - k)) & 1;
        const int sj = (j >> 3) & 1, aj = (j >> (3 - k)) & 1;
        full(i, j) = u2(2 * si + ai, 2 * sj + aj);
      }
    }
    state = full * state * full.adjoint();
    state = oracle::lindblad_rk4(state, 4, 0, p, 1000);
  }
  const std::array<int, 4> order{1, 2, 3, 0};
  const ComplexMatrix reordered = partial_trace(state, 4, order);
  EXPECT_LE(max_abs(reordered - reg.matrix), 1e-11);
}

TEST(ChainConfigTest, RejectsBadBlockLengths) {
  const ModelParams p = make(2.0, 0.2, 0.4);
  EXPECT_THROW(build_chain_state(ChainConfig{p, 0}), InvalidParameter);
  EXPECT_THROW(build_chain_state(ChainConfig{p, 13}), ExceedsAncillaCap);
  EXPECT_THROW(build_chain_state(ChainConfig{p, 4, 3}), ExceedsAncillaCap);
}

TEST(ChainConfigTest, PropagatesDegenerateFixedPoint) {
  EXPECT_THROW(build_chain_state(ChainConfig{make(2.0, 0.0, 0.0), 2}), DegenerateFixedPoint);
}

}  // namespace
}  // namespace colltherm
