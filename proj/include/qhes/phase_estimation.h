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

#ifndef QHES_PHASE_ESTIMATION_H_
#define QHES_PHASE_ESTIMATION_H_

#include <string_view>
#include <vector>

#include "qhes/circuit.h"
#include "qhes/hamiltonian.h"
#include "qhes/state_vector.h"

namespace qhes {

inline constexpr int kMaxRepresentationQubits = 16;

enum class FourierDirection { kForward, kInverse };

// Forward: |x> -> 2^{-R/2} sum_k e^{+2 pi i x k / 2^R} |k>; the inverse
// carries the opposite sign. `qubits` lists the register, most significant
// first.
Circuit qft_circuit(int num_qubits, const std::vector<int>& qubits,
                    FourierDirection direction);
void qft(StateVector& state, const RegisterLayout& layout,
         std::string_view group, FourierDirection direction);

// Hadamards on `rep_group`, controlled powers e^{i 2^j H} on the physical
// register (the qubit of weight 2^j triggers e^{i 2^j H}), then the inverse
// Fourier transform. Every operation also carries `controls`.
Circuit qpe_circuit(const RegisterLayout& layout, const UnitEvolution& evolution,
                    std::string_view rep_group,
                    const std::vector<Control>& controls = {});

void qpe_apply(StateVector& state, const RegisterLayout& layout,
               const UnitEvolution& evolution, std::string_view rep_group);
void qpe_inverse_apply(StateVector& state, const RegisterLayout& layout,
                       const UnitEvolution& evolution,
                       std::string_view rep_group);
// QPE (or its inverse) on the subspace where `controls` match.
void controlled_qpe(StateVector& state, const RegisterLayout& layout,
                    const UnitEvolution& evolution, std::string_view rep_group,
                    const std::vector<Control>& controls,
                    FourierDirection direction = FourierDirection::kForward);

// Amplitude of |x> after QPE on an eigenstate of eigenvalue `e`:
// 2^{-R} sum_{k<2^R} e^{i k (e - 2 pi x / 2^R)}.
Complex kappa_analytic(double e, Index x, int R);

// Integer n in [0, 2^R) nearest to y * 2^R; ties round up.
Index nearest_binary(double y, int R);

}  // namespace qhes

#endif  // QHES_PHASE_ESTIMATION_H_
