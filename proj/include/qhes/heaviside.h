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

#ifndef QHES_HEAVISIDE_H_
#define QHES_HEAVISIDE_H_

#include <numbers>
#include <vector>

#include "qhes/circuit.h"
#include "qhes/hamiltonian.h"
#include "qhes/state_vector.h"

namespace qhes {

// Heaviside filter parameters: R representation qubits, Q filtering rounds,
// W Hamiltonian shifts, C counting qubits, indeterminate band eps below the
// threshold theta (normalized units).
struct FilterConfig {
  int R = 4;
  int Q = 1;
  int W = 1;
  int C = 2;
  double eps = 0.0;
  double theta = std::numbers::pi;

  // Q = ceil(2.8 N), W = ceil(sqrt(Q)), eps = 2 pi / 2^{R-1} and the
  // smallest C that holds Q rounds.
  static FilterConfig defaults(int num_physical, int R);
  // Smallest C with 2Q <= 2^{C-1}.
  static int min_counting_qubits(int Q);

  // Throws ConfigError on a broken invariant, CapacityError when the
  // counter cannot hold Q rounds.
  void validate() const;
  void validate_capacity() const;
};

enum class FilterVariant { kPrimary, kFrozen };

// physical, representation0..Q-1, mark.
RegisterLayout heaviside_primary_layout(int num_physical, int Q, int R);
// physical, representation0, counting, mark.
RegisterLayout heaviside_frozen_layout(int num_physical, int R, int C);

// One QPE per representation group, all sharing the physical register.
Circuit multi_qpe_circuit(const RegisterLayout& layout,
                          const UnitEvolution& evolution, int Q);
void multi_qpe(StateVector& state, const RegisterLayout& layout,
               const UnitEvolution& evolution, int Q);

// X(mark), Q QPEs, then X on the mark where every group's first qubit
// reads 0.
Circuit heaviside_primary_circuit(const RegisterLayout& layout,
                                  const UnitEvolution& evolution, int Q);
void heaviside_primary(StateVector& state, const RegisterLayout& layout,
                       const UnitEvolution& evolution, const FilterConfig& config);

// Counter-controlled QPE, freeze where the estimate is rejected, inverse
// QPE, freeze where the representation register is not all zeros. The
// estimate x is rejected when x >= 2^{R-1} or x < x_min.
Circuit qpe_filter_unit_circuit(const RegisterLayout& layout,
                                const UnitEvolution& evolution, Index x_min = 0);
void qpe_filter_unit(StateVector& state, const RegisterLayout& layout,
                     const UnitEvolution& evolution, Index x_min = 0);

// X on counter and mark, Q filter units, then X on the mark where the first
// counting qubit reads 1.
Circuit heaviside_frozen_circuit(const RegisterLayout& layout,
                                 const UnitEvolution& evolution, int Q,
                                 Index x_min = 0);
void heaviside_frozen(StateVector& state, const RegisterLayout& layout,
                      const UnitEvolution& evolution, const FilterConfig& config,
                      Index x_min = 0);

struct ShiftResult {
  int w = 0;
  double offset = 0.0;
  double mark0_probability = 0.0;
};

// Runs the filter on `physical_input` once per shifted Hamiltonian H_w.
std::vector<ShiftResult> shift_sweep_filter(const StateVector& physical_input,
                                            const PauliHamiltonian& h0,
                                            const FilterConfig& config,
                                            FilterVariant variant,
                                            Index x_min = 0);

}  // namespace qhes

#endif  // QHES_HEAVISIDE_H_
