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

#include "qhes/heaviside.h"

#include <cmath>

#include "qhes/dirac_coin.h"
#include "qhes/errors.h"
#include "qhes/phase_estimation.h"

namespace qhes {

FilterConfig FilterConfig::defaults(int num_physical, int R) {
  FilterConfig c;
  c.R = R;
  c.Q = static_cast<int>(std::ceil(2.8 * num_physical - 1e-9));
  c.W = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(c.Q)) - 1e-9));
  c.C = min_counting_qubits(c.Q);
  c.eps = 2.0 * std::numbers::pi / std::ldexp(1.0, R - 1);
  return c;
}

int FilterConfig::min_counting_qubits(int Q) {
  if (Q < 1) throw ConfigError("Q must be positive");
  int c = 1;
  while ((1LL << (c - 1)) < 2LL * Q) ++c;
  return c;
}

void FilterConfig::validate() const {
  if (R < 2 || R > kMaxRepresentationQubits) {
    throw ConfigError("R = " + std::to_string(R) + " outside [2, " +
                      std::to_string(kMaxRepresentationQubits) + "]");
  }
  if (Q < 1) throw ConfigError("Q must be positive");
  if (W < 1) throw ConfigError("W must be positive");
  double min_eps = 2.0 * std::numbers::pi / std::ldexp(1.0, R - 1);
  if (eps < min_eps * (1.0 - 1e-12)) {
    throw ConfigError("eps = " + std::to_string(eps) +
                      " is below the resolution 2pi/2^(R-1) = " +
                      std::to_string(min_eps));
  }
  if (theta != std::numbers::pi) {
    throw ConfigError("the normalized threshold must be pi");
  }
  validate_capacity();
}

void FilterConfig::validate_capacity() const {
  if (C < 1 || C > 62 || 2LL * Q > (1LL << (C - 1))) {
    throw CapacityError("Q = " + std::to_string(Q) +
                        " rounds need 2Q <= 2^(C-1), got C = " +
                        std::to_string(C));
  }
}

RegisterLayout heaviside_primary_layout(int num_physical, int Q, int R) {
  RegisterLayout l;
  l.add(std::string(kPhysical), num_physical);
  for (int q = 0; q < Q; ++q) l.add(representation_group(q), R);
  l.add(std::string(kMark), 1);
  if (l.total() > kMaxSimulatedQubits) {
    throw ResourceError("layout needs " + std::to_string(l.total()) +
                        " qubits, cap is " + std::to_string(kMaxSimulatedQubits));
  }
  return l;
}

RegisterLayout heaviside_frozen_layout(int num_physical, int R, int C) {
  RegisterLayout l{{std::string(kPhysical), num_physical},
                   {representation_group(0), R},
                   {std::string(kCounting), C},
                   {std::string(kMark), 1}};
  if (l.total() > kMaxSimulatedQubits) {
    throw ResourceError("layout needs " + std::to_string(l.total()) +
                        " qubits, cap is " + std::to_string(kMaxSimulatedQubits));
  }
  return l;
}

Circuit multi_qpe_circuit(const RegisterLayout& layout,
                          const UnitEvolution& evolution, int Q) {
  Circuit c(layout.total());
  for (int q = 0; q < Q; ++q) {
    c.append(qpe_circuit(layout, evolution, representation_group(q)));
  }
  return c;
}

void multi_qpe(StateVector& state, const RegisterLayout& layout,
               const UnitEvolution& evolution, int Q) {
  multi_qpe_circuit(layout, evolution, Q).apply(state);
}

Circuit heaviside_primary_circuit(const RegisterLayout& layout,
                                  const UnitEvolution& evolution, int Q) {
  int mark = layout.qubit(kMark);
  Circuit c(layout.total());
  c.append(GateOp::single(mark, gates::x(), "x"));
  c.append(multi_qpe_circuit(layout, evolution, Q));
  std::vector<Control> firsts;
  for (int q = 0; q < Q; ++q) {
    firsts.push_back({layout.qubit(representation_group(q), 0), false});
  }
  c.append(GateOp::mcx(std::move(firsts), mark));
  return c;
}

void heaviside_primary(StateVector& state, const RegisterLayout& layout,
                       const UnitEvolution& evolution,
                       const FilterConfig& config) {
  heaviside_primary_circuit(layout, evolution, config.Q).apply(state);
}

Circuit qpe_filter_unit_circuit(const RegisterLayout& layout,
                                const UnitEvolution& evolution, Index x_min) {
  std::string rep_name = representation_group(0);
  std::vector<int> rep = layout.qubits(rep_name);
  std::vector<int> counter = layout.qubits(kCounting);
  Index half = Index{1} << (rep.size() - 1);
  if (x_min >= half) {
    throw ValidationError("x_min must lie below 2^(R-1)");
  }
  Circuit qpe = qpe_circuit(layout, evolution, rep_name, {{counter[0], true}});
  MonitoredCondition reject =
      x_min == 0 ? MonitoredCondition::qubit_is_one(rep[0])
                 : MonitoredCondition::group_satisfies(
                       rep, [half, x_min](Index x) {
                         return x >= half || x < x_min;
                       });
  Circuit c(layout.total());
  c.append(qpe);
  append_freezing(c, reject, counter);
  c.append(qpe.inverse());
  append_freezing(c, MonitoredCondition::group_not_zero(rep), counter);
  return c;
}

void qpe_filter_unit(StateVector& state, const RegisterLayout& layout,
                     const UnitEvolution& evolution, Index x_min) {
  qpe_filter_unit_circuit(layout, evolution, x_min).apply(state);
}

Circuit heaviside_frozen_circuit(const RegisterLayout& layout,
                                 const UnitEvolution& evolution, int Q,
                                 Index x_min) {
  std::vector<int> counter = layout.qubits(kCounting);
  int mark = layout.qubit(kMark);
  if (Q < 1) throw ConfigError("Q must be positive");
  if (2LL * Q > (1LL << (counter.size() - 1))) {
    throw CapacityError("Q = " + std::to_string(Q) +
                        " rounds need 2Q <= 2^(C-1), got C = " +
                        std::to_string(counter.size()));
  }
  Circuit c(layout.total());
  for (int q : counter) c.append(GateOp::single(q, gates::x(), "x"));
  c.append(GateOp::single(mark, gates::x(), "x"));
  Circuit unit = qpe_filter_unit_circuit(layout, evolution, x_min);
  for (int q = 0; q < Q; ++q) c.append(unit);
  c.append(GateOp::controlled({{counter[0], true}}, mark, gates::x(), "cx"));
  return c;
}

void heaviside_frozen(StateVector& state, const RegisterLayout& layout,
                      const UnitEvolution& evolution, const FilterConfig& config,
                      Index x_min) {
  config.validate_capacity();
  heaviside_frozen_circuit(layout, evolution, config.Q, x_min).apply(state);
}

std::vector<ShiftResult> shift_sweep_filter(const StateVector& physical_input,
                                            const PauliHamiltonian& h0,
                                            const FilterConfig& config,
                                            FilterVariant variant,
                                            Index x_min) {
  int n = h0.num_qubits();
  if (physical_input.num_qubits() != n) {
    throw LayoutError("input state does not match the Hamiltonian");
  }
  RegisterLayout layout = variant == FilterVariant::kPrimary
                              ? heaviside_primary_layout(n, config.Q, config.R)
                              : heaviside_frozen_layout(n, config.R, config.C);
  std::vector<ShiftResult> out;
  std::vector<PauliHamiltonian> set = hamiltonian_set(h0, config.W, config.R);
  for (int w = 0; w < config.W; ++w) {
    UnitEvolution evo(set[w]);
    StateVector s = embed(physical_input, layout, kPhysical);
    if (variant == FilterVariant::kPrimary) {
      if (x_min != 0) throw ValidationError("band filtering needs the frozen circuit");
      heaviside_primary(s, layout, evo, config);
    } else {
      heaviside_frozen(s, layout, evo, config, x_min);
    }
    out.push_back({w, shift_offset(w, config.W, config.R),
                   pattern_probability(s, layout, kMark, "0")});
  }
  return out;
}

}  // namespace qhes
