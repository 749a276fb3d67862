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

#include "qhes/circuit.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qhes/errors.h"

namespace qhes {
namespace {

constexpr double kUnitaryTol = 1e-12;

// Spreads the bits of `r` over the positions not listed in `sorted_bits`.
inline Index deposit(Index r, const std::vector<int>& sorted_bits) {
  for (int p : sorted_bits) {
    Index low = r & ((Index{1} << p) - 1);
    r = ((r >> p) << (p + 1)) | low;
  }
  return r;
}

struct Frame {
  std::vector<int> fixed_bits;  // ascending
  Index control_value = 0;
  Index free_count = 0;
};

Frame make_frame(int n, const std::vector<int>& targets,
                 const std::vector<Control>& controls) {
  Frame f;
  for (int q : targets) f.fixed_bits.push_back(n - 1 - q);
  for (const Control& c : controls) {
    int b = n - 1 - c.qubit;
    f.fixed_bits.push_back(b);
    if (c.value) f.control_value |= Index{1} << b;
  }
  std::sort(f.fixed_bits.begin(), f.fixed_bits.end());
  f.free_count = Index{1} << (n - static_cast<int>(f.fixed_bits.size()));
  return f;
}

void check_qubits(int n, const std::vector<int>& targets,
                  const std::vector<Control>& controls) {
  std::vector<int> all = targets;
  for (const Control& c : controls) all.push_back(c.qubit);
  for (int q : all) {
    if (q < 0 || q >= n) {
      throw LayoutError("qubit " + std::to_string(q) + " out of range for " +
                        std::to_string(n) + " qubits");
    }
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw ValidationError("controls and targets must be distinct qubits");
  }
}

bool is_diagonal(const Matrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r != c && m(r, c) != Complex{}) return false;
    }
  }
  return true;
}

// Offsets of the 2^t target combinations, first target most significant.
std::vector<Index> target_offsets(int n, const std::vector<int>& targets) {
  int t = static_cast<int>(targets.size());
  std::vector<Index> off(Index{1} << t, 0);
  for (Index k = 0; k < off.size(); ++k) {
    for (int i = 0; i < t; ++i) {
      if ((k >> (t - 1 - i)) & 1) off[k] |= Index{1} << (n - 1 - targets[i]);
    }
  }
  return off;
}

void apply_block_unchecked(StateVector& state,
                           const std::vector<Control>& controls,
                           const std::vector<int>& targets,
                           const Matrix& block, bool diagonal) {
  int n = state.num_qubits();
  Frame f = make_frame(n, targets, controls);
  std::vector<Index> off = target_offsets(n, targets);
  Complex* a = state.amplitudes().data();
  if (targets.size() == 1) {
    const Complex m00 = block(0, 0), m01 = block(0, 1), m10 = block(1, 0),
                  m11 = block(1, 1);
    const Index o = off[1];
    if (diagonal) {
      for (Index r = 0; r < f.free_count; ++r) {
        Index i = deposit(r, f.fixed_bits) | f.control_value;
        a[i] *= m00;
        a[i | o] *= m11;
      }
      return;
    }
    for (Index r = 0; r < f.free_count; ++r) {
      Index i = deposit(r, f.fixed_bits) | f.control_value;
      Complex v0 = a[i], v1 = a[i | o];
      a[i] = m00 * v0 + m01 * v1;
      a[i | o] = m10 * v0 + m11 * v1;
    }
    return;
  }
  const Index d = off.size();
  if (diagonal) {
    for (Index r = 0; r < f.free_count; ++r) {
      Index i = deposit(r, f.fixed_bits) | f.control_value;
      for (Index k = 0; k < d; ++k) a[i | off[k]] *= block(k, k);
    }
    return;
  }
  std::vector<Complex> in(d), out(d);
  for (Index r = 0; r < f.free_count; ++r) {
    Index i = deposit(r, f.fixed_bits) | f.control_value;
    for (Index k = 0; k < d; ++k) in[k] = a[i | off[k]];
    for (Index row = 0; row < d; ++row) {
      Complex s{};
      for (Index k = 0; k < d; ++k) s += block(row, k) * in[k];
      out[row] = s;
    }
    for (Index k = 0; k < d; ++k) a[i | off[k]] = out[k];
  }
}

}  // namespace

GateOp::GateOp(std::vector<int> targets, Matrix m,
               std::vector<Control> controls, std::string name)
    : targets_(std::move(targets)),
      controls_(std::move(controls)),
      matrix_(std::move(m)),
      name_(std::move(name)) {
  if (targets_.empty()) throw ValidationError("gate has no targets");
  Eigen::Index dim = Eigen::Index{1} << targets_.size();
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw ValidationError("gate '" + name_ + "' expects a " +
                          std::to_string(dim) + "x" + std::to_string(dim) +
                          " matrix");
  }
  if (!is_unitary(matrix_, kUnitaryTol * static_cast<double>(dim))) {
    throw ValidationError("gate '" + name_ + "' is not unitary");
  }
  check_qubits(1 << 30, targets_, controls_);
  diagonal_ = is_diagonal(matrix_);
}

GateOp GateOp::single(int target, Matrix m, std::string name) {
  return GateOp({target}, std::move(m), {}, std::move(name));
}

GateOp GateOp::block(std::vector<int> targets, Matrix m,
                     std::vector<Control> controls, std::string name) {
  return GateOp(std::move(targets), std::move(m), std::move(controls),
                std::move(name));
}

GateOp GateOp::controlled(std::vector<Control> controls, int target, Matrix m,
                          std::string name) {
  return GateOp({target}, std::move(m), std::move(controls), std::move(name));
}

GateOp GateOp::mcx(std::vector<Control> controls, int target) {
  return GateOp({target}, gates::x(), std::move(controls), "mcx");
}

GateOp GateOp::adjoint() const {
  GateOp g = *this;
  g.matrix_ = matrix_.adjoint();
  return g;
}

GateOp GateOp::with_controls(const std::vector<Control>& extra) const {
  std::vector<Control> c = controls_;
  c.insert(c.end(), extra.begin(), extra.end());
  return GateOp(targets_, matrix_, std::move(c), name_);
}

CounterShift CounterShift::inverse() const {
  CounterShift s = *this;
  s.delta = -delta;
  return s;
}

void Circuit::check(const std::vector<int>& qubits) const {
  for (int q : qubits) {
    if (q < 0 || q >= num_qubits_) {
      throw LayoutError("qubit " + std::to_string(q) + " out of range for " +
                        std::to_string(num_qubits_) + " qubits");
    }
  }
}

Circuit& Circuit::append(GateOp op) {
  std::vector<int> q = op.targets();
  for (const Control& c : op.controls()) q.push_back(c.qubit);
  check(q);
  ops_.emplace_back(std::move(op));
  return *this;
}

Circuit& Circuit::append(CounterShift op) {
  std::vector<int> q = op.counter;
  for (const Control& c : op.controls) q.push_back(c.qubit);
  check(q);
  check(op.watched);
  check_qubits(num_qubits_, q, {});
  for (int w : op.watched) {
    if (std::find(op.counter.begin(), op.counter.end(), w) != op.counter.end()) {
      throw ValidationError("watched qubits overlap the counter");
    }
  }
  ops_.emplace_back(std::move(op));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.num_qubits_ != num_qubits_) {
    throw LayoutError("cannot append a circuit of a different width");
  }
  ops_.insert(ops_.end(), other.ops_.begin(), other.ops_.end());
  return *this;
}

Circuit Circuit::controlled(const std::vector<Control>& extra) const {
  Circuit out(num_qubits_);
  for (const CircuitOp& op : ops_) {
    if (const auto* g = std::get_if<GateOp>(&op)) {
      out.append(g->with_controls(extra));
    } else {
      CounterShift s = std::get<CounterShift>(op);
      for (const Control& c : extra) {
        if (std::find(s.watched.begin(), s.watched.end(), c.qubit) !=
            s.watched.end()) {
          throw ValidationError("control overlaps a watched qubit");
        }
      }
      s.controls.insert(s.controls.end(), extra.begin(), extra.end());
      out.append(std::move(s));
    }
  }
  return out;
}

Circuit Circuit::inverse() const {
  Circuit out(num_qubits_);
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
    if (const auto* g = std::get_if<GateOp>(&*it)) {
      out.ops_.emplace_back(g->adjoint());
    } else {
      out.ops_.emplace_back(std::get<CounterShift>(*it).inverse());
    }
  }
  return out;
}

void Circuit::apply(StateVector& state) const {
  if (state.num_qubits() != num_qubits_) {
    throw LayoutError("circuit has " + std::to_string(num_qubits_) +
                      " qubits, state has " +
                      std::to_string(state.num_qubits()));
  }
  for (const CircuitOp& op : ops_) {
    if (const auto* g = std::get_if<GateOp>(&op)) {
      apply_block_unchecked(state, g->controls(), g->targets(), g->matrix(),
                            g->diagonal());
    } else {
      apply_counter_shift(state, std::get<CounterShift>(op));
    }
  }
}

void Circuit::apply_inverse(StateVector& state) const {
  inverse().apply(state);
}

std::map<std::string, int> Circuit::counts() const {
  std::map<std::string, int> out;
  for (const CircuitOp& op : ops_) {
    if (const auto* g = std::get_if<GateOp>(&op)) {
      ++out[g->name()];
    } else {
      ++out[std::get<CounterShift>(op).name];
    }
  }
  return out;
}

void apply_gate(StateVector& state, const GateOp& op) {
  check_qubits(state.num_qubits(), op.targets(), op.controls());
  apply_block_unchecked(state, op.controls(), op.targets(), op.matrix(),
                        op.diagonal());
}

void apply_controlled_block(StateVector& state,
                            const std::vector<Control>& controls,
                            const std::vector<int>& targets,
                            const Matrix& block) {
  check_qubits(state.num_qubits(), targets, controls);
  apply_gate(state, GateOp::block(targets, block, controls));
}

void apply_counter_shift(StateVector& state, const CounterShift& op) {
  int n = state.num_qubits();
  int c = static_cast<int>(op.counter.size());
  check_qubits(n, op.counter, op.controls);
  Frame f = make_frame(n, op.counter, op.controls);
  std::vector<Index> off = target_offsets(n, op.counter);
  std::vector<Index> watch_bits;
  for (int q : op.watched) watch_bits.push_back(Index{1} << (n - 1 - q));
  const Index period = Index{1} << c;
  const Index shift =
      static_cast<Index>(((op.delta % static_cast<long long>(period)) +
                          static_cast<long long>(period)) %
                         static_cast<long long>(period));
  if (shift == 0) return;
  Complex* a = state.amplitudes().data();
  std::vector<Complex> buf(period);
  for (Index r = 0; r < f.free_count; ++r) {
    Index i = deposit(r, f.fixed_bits) | f.control_value;
    if (op.predicate) {
      Index v = 0;
      for (Index b : watch_bits) v = (v << 1) | ((i & b) ? 1 : 0);
      if (!op.predicate(v)) continue;
    }
    for (Index k = 0; k < period; ++k) buf[(k + shift) & (period - 1)] = a[i | off[k]];
    for (Index k = 0; k < period; ++k) a[i | off[k]] = buf[k];
  }
}

void apply_pattern_phase(StateVector& state, const std::vector<Control>& pattern,
                         Complex phase) {
  check_qubits(state.num_qubits(), {}, pattern);
  Frame f = make_frame(state.num_qubits(), {}, pattern);
  Complex* a = state.amplitudes().data();
  for (Index r = 0; r < f.free_count; ++r) {
    a[deposit(r, f.fixed_bits) | f.control_value] *= phase;
  }
}

Matrix circuit_matrix(const Circuit& circuit) {
  int n = circuit.num_qubits();
  if (n > 12) throw ResourceError("circuit too wide for a dense matrix");
  Index dim = Index{1} << n;
  Matrix m(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    std::vector<Complex> col(dim);
    col[j] = 1.0;
    StateVector s(std::move(col));
    circuit.apply(s);
    for (Index i = 0; i < dim; ++i) m(i, j) = s[i];
  }
  return m;
}

namespace gates {

Matrix h() {
  Matrix m(2, 2);
  double r = std::numbers::sqrt2 / 2.0;
  m << r, r, r, -r;
  return m;
}

Matrix x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix y() {
  Matrix m(2, 2);
  m << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
  return m;
}

Matrix z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Matrix phase(double angle) {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, std::polar(1.0, angle);
  return m;
}

}  // namespace gates
}  // namespace qhes
