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

#include "qhes/state_vector.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "qhes/errors.h"

namespace qhes {
namespace {

void check_bits(std::string_view bits, int expected, std::string_view what) {
  if (static_cast<int>(bits.size()) != expected) {
    throw LayoutError(std::string(what) + ": expected " +
                      std::to_string(expected) + " bits, got " +
                      std::to_string(bits.size()));
  }
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw LayoutError(std::string(what) + ": invalid bit character '" +
                        std::string(1, c) + "'");
    }
  }
}

// Mask and value selecting basis indices where `group` reads `bits`.
std::pair<Index, Index> pattern_mask(const RegisterLayout& layout,
                                     const QubitGroup& group,
                                     std::string_view bits) {
  check_bits(bits, group.size, "pattern for group '" + group.name + "'");
  Index mask = 0;
  Index value = 0;
  for (int i = 0; i < group.size; ++i) {
    Index b = Index{1} << layout.bit(group.offset + i);
    mask |= b;
    if (bits[i] == '1') value |= b;
  }
  return {mask, value};
}

}  // namespace

std::string representation_group(int q) {
  return "representation" + std::to_string(q);
}

RegisterLayout::RegisterLayout(
    std::initializer_list<std::pair<std::string, int>> groups) {
  for (const auto& [name, size] : groups) add(name, size);
}

RegisterLayout& RegisterLayout::add(std::string name, int size) {
  if (size <= 0) {
    throw LayoutError("group '" + name + "' must have a positive size");
  }
  if (contains(name)) throw LayoutError("duplicate group '" + name + "'");
  groups_.push_back({std::move(name), total_, size});
  total_ += size;
  return *this;
}

bool RegisterLayout::contains(std::string_view name) const {
  return std::any_of(groups_.begin(), groups_.end(),
                     [&](const QubitGroup& g) { return g.name == name; });
}

const QubitGroup& RegisterLayout::group(std::string_view name) const {
  for (const auto& g : groups_) {
    if (g.name == name) return g;
  }
  throw LayoutError("unknown register group '" + std::string(name) + "'");
}

int RegisterLayout::qubit(std::string_view name, int i) const {
  const QubitGroup& g = group(name);
  if (i < 0 || i >= g.size) {
    throw LayoutError("qubit " + std::to_string(i) + " out of range for group '" +
                      g.name + "'");
  }
  return g.offset + i;
}

std::vector<int> RegisterLayout::qubits(std::string_view name) const {
  const QubitGroup& g = group(name);
  std::vector<int> out(g.size);
  for (int i = 0; i < g.size; ++i) out[i] = g.offset + i;
  return out;
}

Index RegisterLayout::value(Index basis_index, const QubitGroup& g) const {
  int shift = total_ - g.offset - g.size;
  return (basis_index >> shift) & ((Index{1} << g.size) - 1);
}

StateVector::StateVector(int num_qubits)
    : num_qubits_(num_qubits), flag_(NormFlag::kNormalized) {
  if (num_qubits < 0 || num_qubits > kMaxSimulatedQubits) {
    throw ResourceError("cannot simulate " + std::to_string(num_qubits) +
                        " qubits (cap " + std::to_string(kMaxSimulatedQubits) +
                        ")");
  }
  amplitudes_.assign(Index{1} << num_qubits, Complex{});
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(std::vector<Complex> amplitudes, NormFlag flag)
    : amplitudes_(std::move(amplitudes)), num_qubits_(0), flag_(flag) {
  Index n = amplitudes_.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw LayoutError("amplitude count " + std::to_string(n) +
                      " is not a power of two");
  }
  while ((Index{1} << num_qubits_) < n) ++num_qubits_;
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const Complex& a : amplitudes_) s += std::norm(a);
  return s;
}

void StateVector::normalize() {
  double n2 = norm_squared();
  if (n2 == 0.0) throw DegenerateInputError("cannot normalize the zero vector");
  double inv = 1.0 / std::sqrt(n2);
  for (Complex& a : amplitudes_) a *= inv;
  flag_ = NormFlag::kNormalized;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw LayoutError("dimension mismatch: " + std::to_string(a.dim()) +
                      " vs " + std::to_string(b.dim()));
  }
  Complex s{};
  for (Index i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner_product(a, b));
}

StateVector basis_state(const RegisterLayout& layout, std::string_view bits) {
  check_bits(bits, layout.total(), "basis state");
  StateVector s(layout.total());
  Index idx = 0;
  for (char c : bits) idx = (idx << 1) | (c == '1' ? 1 : 0);
  s[0] = 0.0;
  s[idx] = 1.0;
  return s;
}

double pattern_probability(const StateVector& state,
                           const RegisterLayout& layout,
                           std::string_view group, std::string_view bits) {
  auto [mask, value] = pattern_mask(layout, layout.group(group), bits);
  double p = 0.0;
  for (Index i = 0; i < state.dim(); ++i) {
    if ((i & mask) == value) p += std::norm(state[i]);
  }
  return p;
}

void project_pattern(StateVector& state, const RegisterLayout& layout,
                     std::string_view group, std::string_view bits) {
  auto [mask, value] = pattern_mask(layout, layout.group(group), bits);
  for (Index i = 0; i < state.dim(); ++i) {
    if ((i & mask) != value) state[i] = 0.0;
  }
  state.set_norm_flag(NormFlag::kSubNormalized);
}

StateVector extract_group(
    const StateVector& state, const RegisterLayout& layout,
    std::string_view group,
    const std::vector<std::pair<std::string, std::string>>& pinned) {
  if (state.num_qubits() != layout.total()) {
    throw LayoutError("state does not match layout");
  }
  const QubitGroup& target = layout.group(group);
  Index base = 0;
  for (const auto& [name, bits] : pinned) {
    if (name == target.name) throw LayoutError("cannot pin the extracted group");
    base |= pattern_mask(layout, layout.group(name), bits).second;
  }
  std::vector<Complex> out(Index{1} << target.size);
  int shift = layout.total() - target.offset - target.size;
  for (Index v = 0; v < out.size(); ++v) out[v] = state[base | (v << shift)];
  return StateVector(std::move(out), NormFlag::kSubNormalized);
}

StateVector embed(const StateVector& group_state, const RegisterLayout& layout,
                  std::string_view group) {
  const QubitGroup& g = layout.group(group);
  if (group_state.num_qubits() != g.size) {
    throw LayoutError("state has " + std::to_string(group_state.num_qubits()) +
                      " qubits, group '" + g.name + "' has " +
                      std::to_string(g.size));
  }
  StateVector s(layout.total());
  s[0] = 0.0;
  int shift = layout.total() - g.offset - g.size;
  for (Index v = 0; v < group_state.dim(); ++v) s[v << shift] = group_state[v];
  s.set_norm_flag(group_state.norm_flag());
  return s;
}

Matrix random_unitary(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix z(dim, dim);
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) z(r, c) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fixing the phases of R's diagonal makes the distribution Haar.
  for (int c = 0; c < dim; ++c) {
    Complex d = r(c, c);
    double a = std::abs(d);
    if (a > 0) q.col(c) *= d / a;
  }
  return q;
}

StateVector random_init_state(const RegisterLayout& layout,
                              std::uint64_t seed) {
  const QubitGroup& phys = layout.group(kPhysical);
  Matrix u = random_unitary(1 << phys.size, seed);
  std::vector<Complex> col(u.rows());
  for (Index i = 0; i < col.size(); ++i) col[i] = u(i, 0);
  return embed(StateVector(std::move(col)), layout, kPhysical);
}

double sample_probability(double probability, int shots, std::uint64_t seed) {
  if (shots <= 0) return probability;
  std::mt19937_64 rng(seed);
  std::binomial_distribution<int> draw(shots,
                                       std::clamp(probability, 0.0, 1.0));
  return static_cast<double>(draw(rng)) / shots;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  Matrix d = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace qhes
