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

#ifndef QHES_DIRAC_COIN_H_
#define QHES_DIRAC_COIN_H_

#include <functional>
#include <string>
#include <vector>

#include "qhes/circuit.h"
#include "qhes/hamiltonian.h"
#include "qhes/state_vector.h"

namespace qhes {

// Coin-toss parameters. `delta` is the spectral gap at the target and
// `eps0` the tolerated error of the target eigenvalue, both in normalized
// units; `eps` is the target state error.
struct CoinConfig {
  int M = 1;
  int K = 1;
  double delta = 0.0;
  double eps0 = 0.0;
  double eps = 1e-7;
  int num_physical = 1;

  // Chooses eps0 and the smallest M meeting both coin restraints. K = 0
  // picks the smallest counter that holds M; a positive K is checked.
  static CoinConfig derive(double delta, double eps, int num_physical,
                           int K = 0);
  // 1 + ceil(log2 M).
  static int min_counting_qubits(int M);

  // Throws ConfigError on a broken restraint and CapacityError when
  // M > 2^{K-1}.
  void validate() const;
  void validate_capacity() const;
};

// Layouts: physical, coins (M), mark for the primary circuit; physical,
// counting (K), coins (1) for the frozen one, where the coin is the mark.
RegisterLayout dirac_primary_layout(int num_physical, int M);
RegisterLayout dirac_frozen_layout(int num_physical, int K);

// B U_e B on `coin`, restricted by `controls`.
void append_flip(Circuit& circuit, const RegisterLayout& layout,
                 const UnitEvolution& evolution, int coin,
                 const std::vector<Control>& controls = {});
void flip_operator(StateVector& state, const RegisterLayout& layout,
                   const UnitEvolution& evolution, int coin);

// One flip per qubit of the coins group.
void multi_coin_toss(StateVector& state, const RegisterLayout& layout,
                     const UnitEvolution& evolution);

// X(mark), then every coin flipped, then X on the mark where all coins
// read 0.
Circuit dirac_primary_circuit(const RegisterLayout& layout,
                              const UnitEvolution& evolution);
void dirac_primary(StateVector& state, const RegisterLayout& layout,
                   const UnitEvolution& evolution);

// |x> -> |x + 1 mod 2^K> on `group`.
void increment(StateVector& state, const RegisterLayout& layout,
               std::string_view group);

// What a freezing operator watches.
struct MonitoredCondition {
  enum class Kind { kQubitIsOne, kGroupNotZero, kPredicate };
  Kind kind = Kind::kQubitIsOne;
  int qubit = 0;
  std::vector<int> group;
  std::function<bool(Index)> predicate;  // on the value of `group`

  static MonitoredCondition qubit_is_one(int qubit);
  static MonitoredCondition group_not_zero(std::vector<int> group);
  static MonitoredCondition group_satisfies(std::vector<int> group,
                                            std::function<bool(Index)> pred);
};

// Increments `counter` exactly where `condition` holds.
void append_freezing(Circuit& circuit, const MonitoredCondition& condition,
                     const std::vector<int>& counter);
void freezing_operator(StateVector& state, const RegisterLayout& layout,
                       const MonitoredCondition& condition,
                       std::string_view counting_group);

// X on the counter, then M rounds of [flip controlled by the first counting
// qubit, increment where the coin reads 1].
Circuit dirac_frozen_circuit(const RegisterLayout& layout,
                             const UnitEvolution& evolution, int M);
void dirac_frozen(StateVector& state, const RegisterLayout& layout,
                  const UnitEvolution& evolution, const CoinConfig& config);

}  // namespace qhes

#endif  // QHES_DIRAC_COIN_H_
