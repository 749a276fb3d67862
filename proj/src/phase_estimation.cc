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

#include "qhes/phase_estimation.h"

#include <cmath>
#include <numbers>

#include "qhes/errors.h"

namespace qhes {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Matrix swap_matrix() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
  return m;
}

void check_register(int size) {
  if (size < 1 || size > kMaxRepresentationQubits) {
    throw ValidationError("representation size " + std::to_string(size) +
                          " outside [1, " +
                          std::to_string(kMaxRepresentationQubits) + "]");
  }
}

}  // namespace

Circuit qft_circuit(int num_qubits, const std::vector<int>& qubits,
                    FourierDirection direction) {
  int r = static_cast<int>(qubits.size());
  check_register(r);
  Circuit c(num_qubits);
  for (int i = 0; i < r; ++i) {
    c.append(GateOp::single(qubits[i], gates::h(), "h"));
    for (int j = i + 1; j < r; ++j) {
      double angle = kTwoPi / std::ldexp(1.0, j - i + 1);
      c.append(GateOp::controlled({{qubits[j], true}}, qubits[i],
                                  gates::phase(angle), "cphase"));
    }
  }
  for (int i = 0; i < r / 2; ++i) {
    c.append(GateOp::block({qubits[i], qubits[r - 1 - i]}, swap_matrix(), {},
                           "swap"));
  }
  return direction == FourierDirection::kForward ? c : c.inverse();
}

void qft(StateVector& state, const RegisterLayout& layout,
         std::string_view group, FourierDirection direction) {
  qft_circuit(state.num_qubits(), layout.qubits(group), direction).apply(state);
}

Circuit qpe_circuit(const RegisterLayout& layout, const UnitEvolution& evolution,
                    std::string_view rep_group,
                    const std::vector<Control>& controls) {
  std::vector<int> rep = layout.qubits(rep_group);
  std::vector<int> phys = layout.qubits(kPhysical);
  int r = static_cast<int>(rep.size());
  check_register(r);
  if (static_cast<int>(phys.size()) != evolution.num_qubits()) {
    throw LayoutError("physical register does not match the Hamiltonian");
  }
  for (const Control& c : controls) {
    for (int q : rep) {
      if (q == c.qubit) throw ValidationError("control overlaps the QPE register");
    }
    for (int q : phys) {
      if (q == c.qubit) throw ValidationError("control overlaps the QPE register");
    }
  }
  Circuit c(layout.total());
  for (int q : rep) c.append(GateOp::single(q, gates::h(), "h"));
  for (int i = 0; i < r; ++i) {
    c.append(GateOp::block(phys, evolution.power_of_two(r - 1 - i),
                           {{rep[i], true}}, "evolve"));
  }
  c.append(qft_circuit(layout.total(), rep, FourierDirection::kInverse));
  return controls.empty() ? c : c.controlled(controls);
}

void qpe_apply(StateVector& state, const RegisterLayout& layout,
               const UnitEvolution& evolution, std::string_view rep_group) {
  qpe_circuit(layout, evolution, rep_group).apply(state);
}

void qpe_inverse_apply(StateVector& state, const RegisterLayout& layout,
                       const UnitEvolution& evolution,
                       std::string_view rep_group) {
  qpe_circuit(layout, evolution, rep_group).apply_inverse(state);
}

void controlled_qpe(StateVector& state, const RegisterLayout& layout,
                    const UnitEvolution& evolution, std::string_view rep_group,
                    const std::vector<Control>& controls,
                    FourierDirection direction) {
  Circuit c = qpe_circuit(layout, evolution, rep_group, controls);
  if (direction == FourierDirection::kForward) {
    c.apply(state);
  } else {
    c.apply_inverse(state);
  }
}

Complex kappa_analytic(double e, Index x, int R) {
  double d = std::ldexp(1.0, R);
  double phi = e - kTwoPi * static_cast<double>(x) / d;
  double turns = phi / kTwoPi;
  if (std::abs(turns - std::round(turns)) <= 1e-12) return 1.0;
  Complex num = 1.0 - std::polar(1.0, d * phi);
  Complex den = 1.0 - std::polar(1.0, phi);
  return num / den / d;
}

Index nearest_binary(double y, int R) {
  double d = std::ldexp(1.0, R);
  if (!(y >= 0.0 && y <= 1.0 - 1.0 / d)) {
    throw DomainError("nearest_binary: y = " + std::to_string(y) +
                      " outside [0, 1 - 2^-R]");
  }
  return static_cast<Index>(std::floor(y * d + 0.5));
}

}  // namespace qhes
