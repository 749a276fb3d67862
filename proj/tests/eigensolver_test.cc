// Copyright 2026 The QHES Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qhes/eigensolver.h"

#include <gtest/gtest.h>

#include <bit>
#include <numbers>
#include <set>

#include "qhes/errors.h"
#include "test_util.h"

namespace qhes {
namespace {

using std::numbers::pi;

// Z-diagonal Hamiltonian carrying `values` on the computational basis.
PauliHamiltonian diagonal_hamiltonian(const std::vector<double>& values) {
  int d = static_cast<int>(values.size());
  int n = 0;
  while ((1 << n) < d) ++n;
  double mean = 0.0;
  for (double v : values) mean += v / d;
  PauliHamiltonian h(n, {}, mean);
  for (int m = 1; m < d; ++m) {
    double c = 0.0;
    for (int i = 0; i < d; ++i) {
      c += values[i] * (std::popcount(static_cast<unsigned>(i & m)) % 2 ? -1.0 : 1.0);
    }
    std::string p(n, 'I');
    for (int q = 0; q < n; ++q) {
      if ((m >> (n - 1 - q)) & 1) p[q] = 'Z';
    }
    h.add_term(p, c / d);
  }
  return h;
}

NormalizedHamiltonian as_normalized(const PauliHamiltonian& h) {
  return {h, {1.0, 0.0}};
}

TEST(DeriveSeedTest, DeterministicAndSpread) {
  EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
  std::set<std::uint64_t> seen;
  for (std::uint64_t base : {0ull, 1ull, 2ull}) {
    for (std::uint64_t s = 0; s < 100; ++s) seen.insert(derive_seed(base, s));
  }
  EXPECT_EQ(seen.size(), 300u);
}

TEST(DiagonalHamiltonianTest, HelperReproducesValues) {
  std::vector<double> v{0.1, -0.4, 2.0, 0.7};
  SpectrumReference ref(diagonal_hamiltonian(v));
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::real(ref.matrix()(i, i)), v[i], 1e-14);
}

TEST(QuantumJudgeTest, SeparatesBelowFromAboveThreshold) {
  const int R = 4;
  FilterConfig f = FilterConfig::defaults(1, R);
  JudgeOptions o;
  o.p_min = 1.0 / 32.0;
  for (std::uint64_t seed : {1, 2, 3}) {
    o.seed = seed;
    JudgeVerdict yes = quantum_judge(
        as_normalized(diagonal_hamiltonian({pi - f.eps - 0.1, pi + 1.0})), f, o);
    EXPECT_EQ(yes.decision, Decision::kBelowThresholdExists) << seed;
    EXPECT_GE(yes.mark0_probability, 0.9);
    JudgeVerdict no = quantum_judge(
        as_normalized(diagonal_hamiltonian({pi + 0.2, pi + 1.5})), f, o);
    EXPECT_EQ(no.decision, Decision::kNoneBelow) << seed;
    EXPECT_LE(no.mark0_probability, 0.01);
    EXPECT_EQ(static_cast<int>(no.per_shift.size()), f.W);
  }
}

TEST(QuantumJudgeTest, ThresholdMapsBackToRawUnits) {
  PauliHamiltonian h = diagonal_hamiltonian({0.3, 0.9});
  FilterConfig f = FilterConfig::defaults(1, 4);
  NormalizedHamiltonian hn = normalize_for_threshold(h, {0.0, 1.0}, 0.6, f.R);
  JudgeVerdict v = quantum_judge(hn, f, JudgeOptions{});
  EXPECT_NEAR(v.threshold_raw, 0.6, 1e-12);
  EXPECT_GT(v.oracle_calls, 0);
}

TEST(QuantumJudgeTest, ShotsAreSeedDeterministic) {
  FilterConfig f = FilterConfig::defaults(1, 3);
  JudgeOptions o;
  o.shots = 200;
  o.seed = 5;
  auto h = as_normalized(diagonal_hamiltonian({1.0, 2.0}));
  JudgeVerdict a = quantum_judge(h, f, o);
  JudgeVerdict b = quantum_judge(h, f, o);
  EXPECT_EQ(a.per_shift, b.per_shift);
  for (double p : a.per_shift) EXPECT_DOUBLE_EQ(p * 200, std::round(p * 200));
}

TEST(QuantumJudgeTest, RejectsBadOptions) {
  FilterConfig f = FilterConfig::defaults(1, 3);
  JudgeOptions o;
  o.decision_cut = 1.0;
  auto h = as_normalized(diagonal_hamiltonian({1.0, 2.0}));
  EXPECT_THROW(quantum_judge(h, f, o), ConfigError);
  o = JudgeOptions{};
  o.delta = 0.0;
  EXPECT_THROW(quantum_judge(h, f, o), ConfigError);
}

TEST(BandJudgeTest, IgnoresEigenvaluesBelowTheBand) {
  PauliHamiltonian h = diagonal_hamiltonian({0.1, 0.9});
  FilterConfig f = FilterConfig::defaults(1, 6);
  JudgeOptions o;
  o.p_min = 1.0 / 32.0;
  SpectrumInterval b{0.0, 1.0};
  // Band (0.4, 0.95] contains 0.9; band (0.4, 0.6] holds nothing.
  EXPECT_EQ(band_judge(h, 0.4, 0.95, b, f, o).decision,
            Decision::kBelowThresholdExists);
  EXPECT_EQ(band_judge(h, 0.4, 0.6, b, f, o).decision, Decision::kNoneBelow);
  EXPECT_THROW(band_judge(h, 0.6, 0.4, b, f, o), ValidationError);
}

TEST(DichotomyTest, IterationCount) {
  EXPECT_EQ(dichotomy_iterations(1.0, 0.1), 4);
  EXPECT_EQ(dichotomy_iterations(1.0, 0.25), 2);
  EXPECT_EQ(dichotomy_iterations(0.1, 1.0), 0);
  EXPECT_THROW(dichotomy_iterations(1.0, 0.0), ConfigError);
}

TEST(DichotomyTest, FindsLowestEigenvalueWithinResolution) {
  PauliHamiltonian h = diagonal_hamiltonian({0.3, 0.9});
  FilterConfig f = FilterConfig::defaults(1, 8);
  DichotomyOptions d;
  d.bounds = SpectrumInterval{0.0, 1.0};
  d.eps = 0.01;
  d.judge.p_min = 1.0 / 32.0;
  DichotomyTrace t = dichotomy_lowest(h, f, d);
  EXPECT_EQ(t.iterations, 7);
  EXPECT_EQ(t.brackets.size(), 8u);
  EXPECT_NEAR(t.E_c, 0.3, t.resolution + d.eps);
  for (std::size_t i = 1; i < t.brackets.size(); ++i) {
    EXPECT_NEAR(t.brackets[i].hi - t.brackets[i].lo,
                0.5 * (t.brackets[i - 1].hi - t.brackets[i - 1].lo), 1e-15);
  }
}

TEST(DichotomyTest, MajorityVoteUsesEveryRepeat) {
  PauliHamiltonian h = diagonal_hamiltonian({0.3, 0.9});
  FilterConfig f = FilterConfig::defaults(1, 4);
  DichotomyOptions d;
  d.bounds = SpectrumInterval{0.0, 1.0};
  d.eps = 0.25;
  d.repeats = 3;
  DichotomyTrace t = dichotomy_lowest(h, f, d);
  EXPECT_EQ(t.verdicts.size(), 6u);
  d.repeats = 0;
  EXPECT_THROW(dichotomy_lowest(h, f, d), ConfigError);
}

TEST(DichotomyTest, NextEigenvalueAboveFoundOne) {
  PauliHamiltonian h = diagonal_hamiltonian({0.3, 0.9});
  FilterConfig f = FilterConfig::defaults(1, 7);
  DichotomyOptions d;
  d.bounds = SpectrumInterval{0.0, 1.0};
  d.eps = 0.02;
  d.judge.p_min = 1.0 / 32.0;
  DichotomyTrace t = dichotomy_next(h, 0.3, 0.1, f, d);
  EXPECT_NEAR(t.E_c, 0.9, t.resolution + d.eps);
  EXPECT_THROW(dichotomy_next(h, 0.95, 0.1, f, d), DomainError);
}

TEST(QuantumSelectorTest, ProjectsOntoTargetEigenspace) {
  PauliHamiltonian h = ising_chain(2);
  SpectrumReference ref(h);
  SelectorOptions o;
  o.seed = 3;
  SelectorResult r = quantum_selector(h, -1.0, o, &ref);
  EXPECT_LT(r.eps_s, 1e-12);
  EXPECT_NEAR(r.physical_state.norm_squared(), 1.0, 1e-10);
  EXPECT_GT(r.postselection_probability, 0.0);
  EXPECT_LE(r.coin.M, 1 << (r.coin.K - 1));
  EXPECT_DOUBLE_EQ(r.gap_used, 2.0);
  double total = 0.0;
  for (double x : r.lambda_overlaps) total += x;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(QuantumSelectorTest, SelectsInteriorEigenvalue) {
  PauliHamiltonian h = diagonal_hamiltonian({-0.8, 0.1, 0.5, 1.2});
  SpectrumReference ref(h);
  SelectorOptions o;
  o.seed = 2;
  SelectorResult r = quantum_selector(h, 0.1, o, &ref);
  EXPECT_LT(r.eps_s, 1e-10);
  EXPECT_NEAR(std::norm(r.physical_state[1]), 1.0, 1e-10);
}

TEST(QuantumSelectorTest, CapacityAndGapErrors) {
  PauliHamiltonian h = ising_chain(2);
  SpectrumReference ref(h);
  SelectorOptions o;
  o.K = 1;
  EXPECT_THROW(quantum_selector(h, -1.0, o, &ref), CapacityError);
  EXPECT_THROW(quantum_selector(h, -1.0, SelectorOptions{}), ConfigError);
  SelectorOptions with_gap;
  with_gap.gap = 2.0;
  SelectorResult r = quantum_selector(h, -1.0, with_gap);
  EXPECT_TRUE(std::isnan(r.eps_s));
}

TEST(ErrorMetricsTest, ComplementWeightAndValueError) {
  PauliHamiltonian h = diagonal_hamiltonian({0.0, 1.0});
  SpectrumReference ref(h);
  StateVector s({std::sqrt(0.9), std::sqrt(0.1)});
  ErrorMetrics m = error_metrics(0.05, s, ref, 0.0);
  EXPECT_DOUBLE_EQ(m.eps_v, 0.05);
  EXPECT_NEAR(m.eps_s, 0.1, 1e-15);
}

}  // namespace
}  // namespace qhes
