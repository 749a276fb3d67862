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

#ifndef QHES_STATE_VECTOR_H_
#define QHES_STATE_VECTOR_H_

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qhes {

using Complex = std::complex<double>;
using Index = std::uint64_t;
using Matrix = Eigen::MatrixXcd;

// Largest register the dense simulator will allocate.
inline constexpr int kMaxSimulatedQubits = 26;

// Group names used by the circuit builders.
inline constexpr std::string_view kPhysical = "physical";
inline constexpr std::string_view kCounting = "counting";
inline constexpr std::string_view kCoins = "coins";
inline constexpr std::string_view kMark = "mark";
std::string representation_group(int q);

struct QubitGroup {
  std::string name;
  int offset = 0;
  int size = 0;
};

// Named, disjoint qubit groups laid out in insertion order. Qubit 0 is the
// most significant bit of the basis index, and inside a group index 0 is the
// highest-order qubit, so a basis index is the big-endian concatenation of
// the groups.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  RegisterLayout(std::initializer_list<std::pair<std::string, int>> groups);

  RegisterLayout& add(std::string name, int size);

  int total() const { return total_; }
  const std::vector<QubitGroup>& groups() const { return groups_; }
  bool contains(std::string_view name) const;
  const QubitGroup& group(std::string_view name) const;
  int qubit(std::string_view name, int i = 0) const;
  std::vector<int> qubits(std::string_view name) const;

  // Bit position of qubit `q` inside a basis index.
  int bit(int q) const { return total_ - 1 - q; }
  // Value of `group` encoded in `basis_index`.
  Index value(Index basis_index, const QubitGroup& group) const;

 private:
  std::vector<QubitGroup> groups_;
  int total_ = 0;
};

enum class NormFlag { kNormalized, kSubNormalized };

class StateVector {
 public:
  // |0...0> on `num_qubits` qubits.
  explicit StateVector(int num_qubits);
  explicit StateVector(std::vector<Complex> amplitudes,
                       NormFlag flag = NormFlag::kNormalized);

  int num_qubits() const { return num_qubits_; }
  Index dim() const { return amplitudes_.size(); }
  std::span<Complex> amplitudes() { return amplitudes_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex& operator[](Index i) { return amplitudes_[i]; }
  const Complex& operator[](Index i) const { return amplitudes_[i]; }

  NormFlag norm_flag() const { return flag_; }
  void set_norm_flag(NormFlag flag) { flag_ = flag; }

  double norm_squared() const;
  bool is_zero() const { return norm_squared() == 0.0; }
  // Rescales to unit norm. Throws DegenerateInputError on the zero vector.
  void normalize();

 private:
  std::vector<Complex> amplitudes_;
  int num_qubits_;
  NormFlag flag_;
};

Complex inner_product(const StateVector& a, const StateVector& b);
// |<a|b>|^2. Both operands must have the same dimension.
double fidelity(const StateVector& a, const StateVector& b);

// Basis state with the given bit string (one character per qubit, '0'/'1').
StateVector basis_state(const RegisterLayout& layout, std::string_view bits);

// Probability that `group` reads `bits`.
double pattern_probability(const StateVector& state,
                           const RegisterLayout& layout,
                           std::string_view group, std::string_view bits);

// Zeroes every amplitude whose `group` does not read `bits`. The result is
// flagged sub-normalized; the zero vector is a legal outcome.
void project_pattern(StateVector& state, const RegisterLayout& layout,
                     std::string_view group, std::string_view bits);

// Copies the amplitudes of `group` with every other group pinned to the
// given basis values (one bit string per other group, keyed by name; groups
// not listed are pinned to zero).
StateVector extract_group(
    const StateVector& state, const RegisterLayout& layout,
    std::string_view group,
    const std::vector<std::pair<std::string, std::string>>& pinned = {});

// Embeds a state of `group` into `layout` with all other qubits at |0>.
StateVector embed(const StateVector& group_state, const RegisterLayout& layout,
                  std::string_view group);

// Haar-distributed unitary of the given dimension, deterministic in `seed`.
Matrix random_unitary(int dim, std::uint64_t seed);

// U_I |0...0> on the physical register with every ancilla at |0>; U_I is
// random_unitary(2^N, seed).
StateVector random_init_state(const RegisterLayout& layout, std::uint64_t seed);

// Binomial estimate of a probability from `shots` draws. shots == 0 returns
// `probability` unchanged.
double sample_probability(double probability, int shots, std::uint64_t seed);

bool is_unitary(const Matrix& m, double tol = 1e-12);

}  // namespace qhes

#endif  // QHES_STATE_VECTOR_H_
