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

#ifndef QHES_EXPERIMENT_H_
#define QHES_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qhes/eigensolver.h"
#include "qhes/hamiltonian.h"
#include "qhes/heaviside.h"
#include "qhes/reference.h"

namespace qhes {

// Run configuration. The text form has four sections:
//
//   [hamiltonian]   n_qubits = 2 | term = -1.0 ZZ | offset = 0.5
//                   | file = model.ham | model = ising
//   [filter]        R, Q, W, C, eps
//   [coin]          K, eps, gap, target
//   [run]           seed, delta, p_min, decision_cut, shots, dichotomy_eps,
//                   repeats, bounds = <lo> <hi>
//
// A document starting with '{' is read as JSON with the same sections as
// objects; terms are given as {"coefficient": c, "paulis": "ZZ"}.
struct ExperimentConfig {
  std::optional<PauliHamiltonian> hamiltonian;

  std::optional<int> R, Q, W, C;
  std::optional<double> filter_eps;

  std::optional<int> K;
  double coin_eps = 1e-7;
  std::optional<double> gap;
  std::optional<double> target;

  std::uint64_t seed = 1;
  double delta = 0.1;
  double p_min = 0.0;
  double decision_cut = 0.5;
  int shots = 0;
  std::optional<double> dichotomy_eps;
  int repeats = 1;
  std::optional<SpectrumInterval> bounds;

  // Defaults for the Hamiltonian's size, overridden by the explicit keys.
  FilterConfig filter_config() const;
  const PauliHamiltonian& require_hamiltonian() const;
};

ExperimentConfig parse_config(std::string_view text,
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

struct ExperimentRecord {
  std::string experiment;
  int N = 0;
  int R_or_K = 0;
  int Q = 0;
  int W = 0;
  int M = 0;
  std::uint64_t seed = 0;
  double E_c = 0.0;
  double E_g = 0.0;
  double error = 0.0;
  double wall_time_ms = 0.0;
  int shots = 0;
};

inline constexpr std::string_view kCsvHeader =
    "experiment,N,R_or_K,Q,W,M,seed,E_c,E_g,error,wall_time_ms,shots";

// Shortest round-trip-safe text with 17 significant digits; "nan" for NaN.
std::string format_number(double v);
std::string csv_row(const ExperimentRecord& r);
void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);
std::string record_json(const ExperimentRecord& r);

struct JudgeRun {
  ExperimentRecord record;
  DichotomyTrace trace;
};

// Dichotomy for the lowest eigenvalue. The reference fills E_g and the
// error when the Hamiltonian is small enough to diagonalize.
JudgeRun run_judge(const ExperimentConfig& config);

struct SelectRun {
  ExperimentRecord record;
  SelectorResult result;
};

// Quantum selector at the configured target (or, without one, at the
// dichotomy estimate).
SelectRun run_select(const ExperimentConfig& config);

enum class SweepKind { kJudge, kSelector };

struct SweepSpec {
  SweepKind kind = SweepKind::kJudge;
  std::vector<int> n_values;
  // R for judge sweeps, K for selector sweeps.
  std::vector<int> second_values;
  std::vector<std::uint64_t> seeds{1};
  int threads = 1;
  int shots = 0;
};

// One record per (N, R or K, seed), ordered by grid position then seed.
// Selector cells whose counter is too small carry error = nan.
std::vector<ExperimentRecord> run_sweep(const SweepSpec& spec);
ExperimentRecord run_judge_cell(int N, int R, std::uint64_t seed, int shots);
ExperimentRecord run_selector_cell(int N, int K, std::uint64_t seed);

struct VerifyOptions {
  std::uint64_t seed = 2026;
  // Mutation canary: replaces e^{iH} by e^{-iH} in every circuit.
  bool flip_evolution_sign = false;
};

// Unitarity, kappa bounds, QPE-vs-kappa, coin equivalences and filter
// predictions on small random instances.
VerifyReport run_verify_suite(const VerifyOptions& options);
std::string report_text(const VerifyReport& report);
std::string report_json(const VerifyReport& report);

}  // namespace qhes

#endif  // QHES_EXPERIMENT_H_
