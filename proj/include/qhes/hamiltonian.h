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

#ifndef QHES_HAMILTONIAN_H_
#define QHES_HAMILTONIAN_H_

#include <string>
#include <string_view>
#include <vector>

#include "qhes/circuit.h"
#include "qhes/state_vector.h"

namespace qhes {

struct PauliTerm {
  std::string paulis;  // one of I, X, Y, Z per qubit, qubit 0 first
  double coefficient = 0.0;
};

class PauliHamiltonian {
 public:
  explicit PauliHamiltonian(int num_qubits, std::vector<PauliTerm> terms = {},
                            double offset = 0.0);

  int num_qubits() const { return num_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  double offset() const { return offset_; }

  PauliHamiltonian& add_term(std::string paulis, double coefficient);
  // scale * H + shift * I.
  PauliHamiltonian scaled_and_shifted(double scale, double shift) const;
  PauliHamiltonian shifted(double shift) const;
  // Sum of |coefficients| plus |offset|; bounds the spectral radius.
  double coefficient_bound() const;

 private:
  int num_qubits_;
  std::vector<PauliTerm> terms_;
  double offset_;
};

// Text format, one directive per line, '#' starts a comment:
//   n_qubits <N>            (must precede every term)
//   <coefficient> <paulis>  e.g. "-0.5 ZZI"
//   offset <value>
PauliHamiltonian parse_hamiltonian(std::string_view text);
// Parses "<coefficient> <paulis>" starting at (line, column) for error
// reporting.
PauliTerm parse_pauli_term(std::string_view text, int num_qubits, int line,
                           int column);
std::string format_hamiltonian(const PauliHamiltonian& h);

// -(1/(N-1)) sum_n Z_n Z_{n+1}.
PauliHamiltonian ising_chain(int num_qubits);

inline constexpr int kMaxDenseQubits = 12;
Matrix dense_matrix(const PauliHamiltonian& h, int cap = kMaxDenseQubits);

// E -> scale * E + shift with scale > 0.
struct AffineSpectrumMap {
  double scale = 1.0;
  double shift = 0.0;

  double apply(double e) const { return scale * e + shift; }
  double inverse(double e) const { return (e - shift) / scale; }
};

struct SpectrumInterval {
  double lo = 0.0;
  double hi = 0.0;
};

struct NormalizedHamiltonian {
  PauliHamiltonian hamiltonian;
  AffineSpectrumMap map;
};

// [-B, B] with B = coefficient_bound(h).
SpectrumInterval crude_bounds(const PauliHamiltonian& h);

// Fraction of the target interval the normalized spectrum may occupy.
inline constexpr double kNormalizationMargin = 0.95;

// Maps `bounds` affinely into the middle 95% of `target`.
NormalizedHamiltonian normalize_spectrum(const PauliHamiltonian& h,
                                         SpectrumInterval bounds,
                                         SpectrumInterval target);
// Maps `threshold` to pi and `bounds` inside [0, 2pi - 2 * 2pi/2^R].
NormalizedHamiltonian normalize_for_threshold(const PauliHamiltonian& h,
                                              SpectrumInterval bounds,
                                              double threshold, int R);
// Maps `target_energy` to 0 and `bounds` inside (-pi/2, pi/2).
NormalizedHamiltonian normalize_for_target(const PauliHamiltonian& h,
                                           SpectrumInterval bounds,
                                           double target_energy);

// exp(sign * i * H) by Hermitian eigendecomposition.
Matrix unit_evolution(const PauliHamiltonian& h, int sign);

// e^{iH} together with cached powers e^{i 2^j H}, each obtained by squaring
// the previous one so that every power is a product of unit evolutions.
class UnitEvolution {
 public:
  explicit UnitEvolution(const PauliHamiltonian& h);
  static UnitEvolution from_matrix(Matrix forward);

  int num_qubits() const { return num_qubits_; }
  const Matrix& forward() const { return powers_.front(); }
  Matrix backward() const { return forward().adjoint(); }
  // e^{i 2^j H}.
  const Matrix& power_of_two(int j) const;

 private:
  UnitEvolution() = default;

  int num_qubits_ = 0;
  mutable std::vector<Matrix> powers_;
};

// e^{+iH} on the physical register where `coin` reads 0 and e^{-iH} where
// it reads 1, further restricted by `controls`.
void append_coin_controlled_evolution(Circuit& circuit,
                                      const RegisterLayout& layout,
                                      const UnitEvolution& evolution, int coin,
                                      const std::vector<Control>& controls = {});
void coin_controlled_evolution(StateVector& state, const RegisterLayout& layout,
                               const UnitEvolution& evolution, int coin);

// Applies e^{sign * iH} to the physical register `k` times.
void power_evolution(StateVector& state, const RegisterLayout& layout,
                     const UnitEvolution& evolution, int k, int sign);

// H_w = H_0 + (w / W)(pi / 2^{R-1}) I for w = 0..W-1.
std::vector<PauliHamiltonian> hamiltonian_set(const PauliHamiltonian& h0, int W,
                                              int R);
double shift_offset(int w, int W, int R);

}  // namespace qhes

#endif  // QHES_HAMILTONIAN_H_
