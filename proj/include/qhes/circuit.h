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

#ifndef QHES_CIRCUIT_H_
#define QHES_CIRCUIT_H_

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qhes/state_vector.h"

namespace qhes {

// Requires `qubit` to read `value`.
struct Control {
  int qubit = 0;
  bool value = true;
};

// Unitary block on `targets` (first target is the most significant row bit),
// applied where every control matches.
class GateOp {
 public:
  static GateOp single(int target, Matrix m, std::string name = "u");
  static GateOp block(std::vector<int> targets, Matrix m,
                      std::vector<Control> controls = {},
                      std::string name = "block");
  static GateOp controlled(std::vector<Control> controls, int target, Matrix m,
                           std::string name = "cu");
  static GateOp mcx(std::vector<Control> controls, int target);

  const std::vector<int>& targets() const { return targets_; }
  const std::vector<Control>& controls() const { return controls_; }
  const Matrix& matrix() const { return matrix_; }
  const std::string& name() const { return name_; }
  bool diagonal() const { return diagonal_; }

  GateOp adjoint() const;
  GateOp with_controls(const std::vector<Control>& extra) const;

 private:
  GateOp(std::vector<int> targets, Matrix m, std::vector<Control> controls,
         std::string name);

  std::vector<int> targets_;
  std::vector<Control> controls_;
  Matrix matrix_;
  std::string name_;
  bool diagonal_ = false;
};

// Adds `delta` (mod 2^size) to the counter register wherever the controls
// match and, if set, `predicate` holds for the value of the `watched`
// qubits. The watched qubits and controls must be disjoint from the counter.
struct CounterShift {
  std::vector<int> counter;
  int delta = 1;
  std::vector<Control> controls;
  std::vector<int> watched;
  std::function<bool(Index)> predicate;
  std::string name = "add";

  CounterShift inverse() const;
};

using CircuitOp = std::variant<GateOp, CounterShift>;

class Circuit {
 public:
  explicit Circuit(int num_qubits) : num_qubits_(num_qubits) {}

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return ops_.size(); }
  const std::vector<CircuitOp>& ops() const { return ops_; }

  Circuit& append(GateOp op);
  Circuit& append(CounterShift op);
  Circuit& append(const Circuit& other);

  // Every operation gains the extra controls.
  Circuit controlled(const std::vector<Control>& extra) const;
  Circuit inverse() const;

  void apply(StateVector& state) const;
  void apply_inverse(StateVector& state) const;

  // Operation counts keyed by name.
  std::map<std::string, int> counts() const;

 private:
  void check(const std::vector<int>& qubits) const;

  int num_qubits_;
  std::vector<CircuitOp> ops_;
};

void apply_gate(StateVector& state, const GateOp& op);
// Applies `block` to `targets` on the subspace where every control matches.
void apply_controlled_block(StateVector& state,
                            const std::vector<Control>& controls,
                            const std::vector<int>& targets,
                            const Matrix& block);
void apply_counter_shift(StateVector& state, const CounterShift& op);
// Multiplies every amplitude whose listed qubits match `pattern` by `phase`.
void apply_pattern_phase(StateVector& state, const std::vector<Control>& pattern,
                         Complex phase);

// Dense matrix of a circuit, column j being the image of basis state j.
Matrix circuit_matrix(const Circuit& circuit);

namespace gates {
Matrix h();
Matrix x();
Matrix y();
Matrix z();
Matrix phase(double angle);
}  // namespace gates

}  // namespace qhes

#endif  // QHES_CIRCUIT_H_
