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

#ifndef QHES_EIGENSOLVER_H_
#define QHES_EIGENSOLVER_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "qhes/amplification.h"
#include "qhes/dirac_coin.h"
#include "qhes/hamiltonian.h"
#include "qhes/heaviside.h"
#include "qhes/reference.h"
#include "qhes/state_vector.h"

namespace qhes {

// Deterministic stream splitting (splitmix64 of base and stream).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

struct JudgeOptions {
  std::uint64_t seed = 1;
  double delta = 0.1;
  // 0 selects 1/(4 chi).
  double p_min = 0.0;
  double decision_cut = 0.5;
  // 0 reads probabilities exactly; otherwise binomial estimates.
  int shots = 0;
  AmplificationMode mode = AmplificationMode::kFixedPoint;
};

enum class Decision { kBelowThresholdExists, kNoneBelow };

struct JudgeVerdict {
  double mark0_probability = 0.0;
  Decision decision = Decision::kNoneBelow;
  double threshold_raw = 0.0;
  int shift_index = 0;
  std::vector<double> per_shift;
  int oracle_calls = 0;
};

// Decides whether the normalized Hamiltonian has an eigenvalue below pi.
// For each shift H_w the random initial state is amplified with the frozen
// Heaviside oracle, the oracle is applied once more and the mark read out;
// the verdict keeps the largest probability. Estimates outside
// [x_min, 2^{R-1}) are rejected.
JudgeVerdict quantum_judge(const NormalizedHamiltonian& normalized,
                           const FilterConfig& config,
                           const JudgeOptions& options, Index x_min = 0);

// Judge restricted to eigenvalues in (lo_threshold, hi_threshold) of the raw
// Hamiltonian; `bounds` must contain the spectrum.
JudgeVerdict band_judge(const PauliHamiltonian& h, double lo_threshold,
                        double hi_threshold, SpectrumInterval bounds,
                        const FilterConfig& config, const JudgeOptions& options);

struct DichotomyOptions {
  // Target bracket width in raw units.
  double eps = 0.01;
  // Defaults to crude_bounds(h).
  std::optional<SpectrumInterval> bounds;
  // Judge calls per step, decided by majority.
  int repeats = 1;
  JudgeOptions judge;
};

struct DichotomyTrace {
  std::vector<SpectrumInterval> brackets;  // brackets[0] is the initial one
  std::vector<JudgeVerdict> verdicts;
  double E_c = 0.0;
  double eps_v = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  // Judge resolution eps / scale in raw units at the last step.
  double resolution = 0.0;
};

// ceil(log2(width / eps)).
int dichotomy_iterations(double width, double eps);

// Bisection on the threshold driven by quantum_judge.
DichotomyTrace dichotomy_lowest(const PauliHamiltonian& h,
                                const FilterConfig& config,
                                const DichotomyOptions& options);
// Next eigenvalue above `found`: bisection over (found + margin, hi] with the
// band judge.
DichotomyTrace dichotomy_next(const PauliHamiltonian& h, double found,
                              double margin, const FilterConfig& config,
                              const DichotomyOptions& options);

struct SelectorOptions {
  // 0 picks the smallest counter that holds M.
  int K = 0;
  double eps = 1e-7;
  // Raw spectral gap at the target; 0 defers to the reference.
  double gap = 0.0;
  std::uint64_t seed = 1;
  double delta = 0.1;
  // 0 selects 1/(4 chi).
  double p_min = 0.0;
  std::optional<SpectrumInterval> bounds;
};

struct SelectorResult {
  StateVector physical_state{1};
  double eps_s = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> lambda_overlaps;
  CoinConfig coin;
  double gap_used = 0.0;
  double postselection_probability = 0.0;
  int oracle_calls = 0;
};

// Extracts the eigenstates of `target_energy` with the frozen Dirac oracle.
// `reference`, when given, supplies the gap fallback, the seed overlaps and
// eps_s against the eigenspace nearest to the target.
SelectorResult quantum_selector(const PauliHamiltonian& h, double target_energy,
                                const SelectorOptions& options,
                                const SpectrumReference* reference = nullptr);

struct ErrorMetrics {
  double eps_v = 0.0;
  double eps_s = 0.0;
};

// eps_v = |E_c - E_g|; eps_s = weight of `state` outside the eigenspace of
// E_g, summed over the complement for accuracy.
ErrorMetrics error_metrics(double E_c, const StateVector& state,
                           const SpectrumReference& reference, double E_g,
                           double tol = 1e-9);

}  // namespace qhes

#endif  // QHES_EIGENSOLVER_H_
