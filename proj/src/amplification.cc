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

#include "qhes/amplification.h"

#include <cmath>

#include "qhes/errors.h"

namespace qhes {
namespace {

std::vector<Control> all_zero_pattern(int n) {
  std::vector<Control> out;
  for (int q = 0; q < n; ++q) out.push_back({q, false});
  return out;
}

double chebyshev(double L, double x) {
  if (std::abs(x) <= 1.0) return std::cos(L * std::acos(x));
  double v = std::cosh(L * std::acosh(std::abs(x)));
  return (x < 0 && std::fmod(L, 2.0) == 1.0) ? -v : v;
}

}  // namespace

void reflect_initial(StateVector& state, const RegisterLayout& layout,
                     const Matrix& init_unitary, double phase) {
  std::vector<int> phys = layout.qubits(kPhysical);
  apply_controlled_block(state, {}, phys, init_unitary.adjoint());
  apply_pattern_phase(state, all_zero_pattern(state.num_qubits()),
                      std::polar(1.0, phase));
  apply_controlled_block(state, {}, phys, init_unitary);
}

void reflect_marked(StateVector& state, const MarkingOracle& oracle,
                    double phase) {
  oracle.circuit.apply(state);
  apply_pattern_phase(state, {{oracle.mark_qubit, false}},
                      std::polar(1.0, phase));
  oracle.circuit.apply_inverse(state);
}

double marked_probability(const StateVector& state, int mark_qubit) {
  if (mark_qubit < 0 || mark_qubit >= state.num_qubits()) {
    throw LayoutError("mark qubit out of range");
  }
  Index bit = Index{1} << (state.num_qubits() - 1 - mark_qubit);
  double p = 0.0;
  for (Index i = 0; i < state.dim(); ++i) {
    if (!(i & bit)) p += std::norm(state[i]);
  }
  return p;
}

double marked_probability(const StateVector& state,
                          const MarkingOracle& oracle) {
  StateVector s = state;
  oracle.circuit.apply(s);
  return marked_probability(s, oracle.mark_qubit);
}

FixedPointConfig FixedPointConfig::fixed_point(double delta, double p_min) {
  FixedPointConfig c;
  c.delta = delta;
  c.p_min = p_min;
  if (!(p_min > 0.0 && p_min <= 1.0)) {
    throw ConfigError("p_min must lie in (0, 1]");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  int l = static_cast<int>(std::ceil(std::log(2.0 / delta) / std::sqrt(p_min)));
  c.L = l % 2 == 1 ? l : l + 1;
  return c;
}

FixedPointConfig FixedPointConfig::known_p() {
  FixedPointConfig c;
  c.mode = AmplificationMode::kKnownP;
  return c;
}

void FixedPointConfig::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  if (!(p_min > 0.0 && p_min <= 1.0)) {
    throw ConfigError("p_min must lie in (0, 1]");
  }
  if (mode == AmplificationMode::kFixedPoint) {
    if (L < 1 || L % 2 == 0) throw ConfigError("L must be a positive odd number");
    if (L < std::log(2.0 / delta) / std::sqrt(p_min) - 1e-9) {
      throw ConfigError("L = " + std::to_string(L) +
                        " is below ln(2/delta)/sqrt(p_min)");
    }
  }
}

FixedPointPhases fixed_point_phases(double delta, int L) {
  int l = (L - 1) / 2;
  double gamma = 1.0 / std::cosh(std::acosh(1.0 / delta) / L);
  double root = std::sqrt(1.0 - gamma * gamma);
  FixedPointPhases ph;
  ph.alpha.resize(l);
  ph.beta.resize(l);
  for (int j = 1; j <= l; ++j) {
    double t = std::tan(2.0 * std::numbers::pi * j / L) * root;
    ph.alpha[j - 1] = 2.0 * std::atan2(1.0, t);
  }
  for (int j = 1; j <= l; ++j) ph.beta[j - 1] = -ph.alpha[l - j];
  return ph;
}

double fixed_point_success(double p, double delta, int L) {
  double g_inv = std::cosh(std::acosh(1.0 / delta) / L);
  double t = chebyshev(L, g_inv * std::sqrt(std::max(0.0, 1.0 - p)));
  return 1.0 - delta * delta * t * t;
}

int grover_iterations(double p) {
  if (!(p > 0.0)) throw ConfigError("Grover iterations need p > 0");
  return static_cast<int>(
      std::floor(std::numbers::pi / (4.0 * std::asin(std::sqrt(std::min(p, 1.0))))));
}

AmplificationResult fixed_point_amplify(const Matrix& init_unitary,
                                        const MarkingOracle& oracle,
                                        const FixedPointConfig& config) {
  const RegisterLayout& layout = oracle.layout;
  StateVector s(layout.total());
  apply_controlled_block(s, {}, layout.qubits(kPhysical), init_unitary);
  AmplificationResult r{s, 0, 0};
  std::vector<double> alpha, beta;
  if (config.mode == AmplificationMode::kKnownP) {
    double p = marked_probability(s, oracle);
    r.oracle_calls = 1;
    int k = p > 0.0 ? grover_iterations(p) : 0;
    alpha.assign(k, std::numbers::pi);
    beta.assign(k, std::numbers::pi);
  } else {
    config.validate();
    FixedPointPhases ph = fixed_point_phases(config.delta, config.L);
    alpha = std::move(ph.alpha);
    beta = std::move(ph.beta);
  }
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    reflect_marked(r.state, oracle, beta[j]);
    reflect_initial(r.state, layout, init_unitary, -alpha[j]);
    for (Complex& a : r.state.amplitudes()) a = -a;
    r.oracle_calls += 2;
    ++r.iterations;
  }
  return r;
}

}  // namespace qhes
