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

#ifndef QHES_AMPLIFICATION_H_
#define QHES_AMPLIFICATION_H_

#include <numbers>
#include <optional>

#include "qhes/circuit.h"
#include "qhes/state_vector.h"

namespace qhes {

// A circuit U whose marked outcome is `mark_qubit` reading 0. The marked
// projector on the input side is P = U^dagger Pi_{mark=0} U.
struct MarkingOracle {
  RegisterLayout layout;
  Circuit circuit;
  int mark_qubit = 0;
};

// U_I (I - (1 - e^{i phase}) |0..0><0..0|) U_I^dagger, with U_I acting on
// the physical register. phase = pi gives I - 2|psi_r><psi_r|.
void reflect_initial(StateVector& state, const RegisterLayout& layout,
                     const Matrix& init_unitary,
                     double phase = std::numbers::pi);

// U^dagger (I - (1 - e^{i phase}) Pi_{mark=0}) U; phase = pi gives I - 2P.
void reflect_marked(StateVector& state, const MarkingOracle& oracle,
                    double phase = std::numbers::pi);

// Probability that `mark_qubit` reads 0.
double marked_probability(const StateVector& state, int mark_qubit);
// Marked probability after applying the oracle to a copy of `state`.
double marked_probability(const StateVector& state, const MarkingOracle& oracle);

enum class AmplificationMode { kFixedPoint, kKnownP };

struct FixedPointConfig {
  double delta = 0.1;
  double p_min = 0.05;
  int L = 1;  // odd; L = 2l + 1 uses l generalized Grover iterations
  AmplificationMode mode = AmplificationMode::kFixedPoint;

  // Smallest odd L >= ln(2/delta) / sqrt(p_min).
  static FixedPointConfig fixed_point(double delta, double p_min);
  static FixedPointConfig known_p();
  void validate() const;
  int iterations() const { return (L - 1) / 2; }
};

// Phase pairs of the fixed-point schedule: alpha_j = -beta_{l-j+1} =
// 2 arccot(tan(2 pi j / L) sqrt(1 - gamma^2)), 1/gamma = T_{1/L}(1/delta).
struct FixedPointPhases {
  std::vector<double> alpha, beta;
};
FixedPointPhases fixed_point_phases(double delta, int L);
// 1 - delta^2 T_L(T_{1/L}(1/delta) sqrt(1 - p))^2.
double fixed_point_success(double p, double delta, int L);
// floor(pi / (4 arcsin sqrt(p))).
int grover_iterations(double p);

struct AmplificationResult {
  StateVector state;
  int oracle_calls = 0;
  int iterations = 0;
};

// Amplifies U_I|0..0> toward the marked subspace of `oracle`.
AmplificationResult fixed_point_amplify(const Matrix& init_unitary,
                                        const MarkingOracle& oracle,
                                        const FixedPointConfig& config);

}  // namespace qhes

#endif  // QHES_AMPLIFICATION_H_
