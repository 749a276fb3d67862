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

#include "qhes/dirac_coin.h"

#include <cmath>
#include <numbers>

#include "qhes/errors.h"

namespace qhes {
namespace {

// Smallest M with |cos(delta - eps0)|^M < eps / sqrt(chi).
int coins_for(double delta, double eps0, double eps, int num_physical) {
  double c = std::abs(std::cos(delta - eps0));
  double target = eps / std::sqrt(std::ldexp(1.0, num_physical));
  if (c < target) return 1;
  int m = static_cast<int>(std::ceil(std::log(target) / std::log(c)));
  m = std::max(m, 1);
  while (std::pow(c, m) >= target) ++m;
  return m;
}

std::vector<Control> all_zero(const std::vector<int>& qubits) {
  std::vector<Control> out;
  for (int q : qubits) out.push_back({q, false});
  return out;
}

}  // namespace

int CoinConfig::min_counting_qubits(int M) {
  if (M < 1) throw ConfigError("coin count must be positive");
  int k = 1;
  while ((1LL << (k - 1)) < M) ++k;
  return k;
}

CoinConfig CoinConfig::derive(double delta, double eps, int num_physical,
                              int K) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ConfigError("spectral gap must be positive, got " +
                      std::to_string(delta));
  }
  if (delta >= std::numbers::pi / 2) {
    throw ConfigError("normalized gap must be below pi/2");
  }
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  CoinConfig c;
  c.delta = delta;
  c.eps = eps;
  c.num_physical = num_physical;
  c.eps0 = delta / 2.0;
  c.M = coins_for(delta, c.eps0, eps, num_physical);
  while (std::pow(std::cos(c.eps0), c.M) < 0.5) {
    c.eps0 *= 0.9;
    c.M = coins_for(delta, c.eps0, eps, num_physical);
  }
  c.K = K > 0 ? K : min_counting_qubits(c.M);
  c.validate();
  return c;
}

void CoinConfig::validate() const {
  if (num_physical < 1) throw ConfigError("need at least one physical qubit");
  if (M < 1) throw ConfigError("coin count must be positive");
  if (K < 1) throw ConfigError("counting register must be non-empty");
  if (!(eps0 > 0.0 && eps0 <= delta / 2.0)) {
    throw ConfigError("eps0 must lie in (0, delta/2]");
  }
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  if (std::pow(std::cos(eps0), M) < 0.5) {
    throw ConfigError("cos^M(eps0) < 1/2 for M = " + std::to_string(M));
  }
  double target = eps / std::sqrt(std::ldexp(1.0, num_physical));
  if (std::pow(std::abs(std::cos(delta - eps0)), M) >= target) {
    throw ConfigError("|cos^M(delta - eps0)| >= eps/sqrt(chi) for M = " +
                      std::to_string(M));
  }
  validate_capacity();
}

void CoinConfig::validate_capacity() const {
  if (K < 1 || K > 62 || M > (1LL << (K - 1))) {
    throw CapacityError("M = " + std::to_string(M) +
                        " coins exceed the capacity 2^(K-1) of K = " +
                        std::to_string(K) + " counting qubits");
  }
}

RegisterLayout dirac_primary_layout(int num_physical, int M) {
  return RegisterLayout{{std::string(kPhysical), num_physical},
                        {std::string(kCoins), M},
                        {std::string(kMark), 1}};
}

RegisterLayout dirac_frozen_layout(int num_physical, int K) {
  return RegisterLayout{{std::string(kPhysical), num_physical},
                        {std::string(kCounting), K},
                        {std::string(kCoins), 1}};
}

void append_flip(Circuit& circuit, const RegisterLayout& layout,
                 const UnitEvolution& evolution, int coin,
                 const std::vector<Control>& controls) {
  circuit.append(GateOp::block({coin}, gates::h(), controls, "h"));
  append_coin_controlled_evolution(circuit, layout, evolution, coin, controls);
  circuit.append(GateOp::block({coin}, gates::h(), controls, "h"));
}

void flip_operator(StateVector& state, const RegisterLayout& layout,
                   const UnitEvolution& evolution, int coin) {
  Circuit c(layout.total());
  append_flip(c, layout, evolution, coin);
  c.apply(state);
}

void multi_coin_toss(StateVector& state, const RegisterLayout& layout,
                     const UnitEvolution& evolution) {
  Circuit c(layout.total());
  for (int q : layout.qubits(kCoins)) append_flip(c, layout, evolution, q);
  c.apply(state);
}

Circuit dirac_primary_circuit(const RegisterLayout& layout,
                              const UnitEvolution& evolution) {
  Circuit c(layout.total());
  int mark = layout.qubit(kMark);
  std::vector<int> coins = layout.qubits(kCoins);
  c.append(GateOp::single(mark, gates::x(), "x"));
  for (int q : coins) append_flip(c, layout, evolution, q);
  c.append(GateOp::mcx(all_zero(coins), mark));
  return c;
}

void dirac_primary(StateVector& state, const RegisterLayout& layout,
                   const UnitEvolution& evolution) {
  dirac_primary_circuit(layout, evolution).apply(state);
}

void increment(StateVector& state, const RegisterLayout& layout,
               std::string_view group) {
  CounterShift s;
  s.counter = layout.qubits(group);
  apply_counter_shift(state, s);
}

MonitoredCondition MonitoredCondition::qubit_is_one(int qubit) {
  MonitoredCondition m;
  m.kind = Kind::kQubitIsOne;
  m.qubit = qubit;
  return m;
}

MonitoredCondition MonitoredCondition::group_not_zero(std::vector<int> group) {
  MonitoredCondition m;
  m.kind = Kind::kGroupNotZero;
  m.group = std::move(group);
  return m;
}

MonitoredCondition MonitoredCondition::group_satisfies(
    std::vector<int> group, std::function<bool(Index)> pred) {
  MonitoredCondition m;
  m.kind = Kind::kPredicate;
  m.group = std::move(group);
  m.predicate = std::move(pred);
  return m;
}

void append_freezing(Circuit& circuit, const MonitoredCondition& condition,
                     const std::vector<int>& counter) {
  CounterShift s;
  s.counter = counter;
  s.name = "freeze";
  switch (condition.kind) {
    case MonitoredCondition::Kind::kQubitIsOne:
      s.controls = {{condition.qubit, true}};
      circuit.append(std::move(s));
      break;
    case MonitoredCondition::Kind::kGroupNotZero: {
      // Unconditional increment, then undo it on the all-zeros pattern.
      circuit.append(s);
      CounterShift undo = s.inverse();
      undo.controls = all_zero(condition.group);
      circuit.append(std::move(undo));
      break;
    }
    case MonitoredCondition::Kind::kPredicate:
      s.watched = condition.group;
      s.predicate = condition.predicate;
      circuit.append(std::move(s));
      break;
  }
}

void freezing_operator(StateVector& state, const RegisterLayout& layout,
                       const MonitoredCondition& condition,
                       std::string_view counting_group) {
  Circuit c(layout.total());
  append_freezing(c, condition, layout.qubits(counting_group));
  c.apply(state);
}

Circuit dirac_frozen_circuit(const RegisterLayout& layout,
                             const UnitEvolution& evolution, int M) {
  std::vector<int> counter = layout.qubits(kCounting);
  if (M < 1) throw ConfigError("coin count must be positive");
  if (M > (1LL << (counter.size() - 1))) {
    throw CapacityError("M = " + std::to_string(M) +
                        " coins exceed the capacity 2^(K-1) of K = " +
                        std::to_string(counter.size()) + " counting qubits");
  }
  int coin = layout.qubit(kCoins);
  Circuit c(layout.total());
  for (int q : counter) c.append(GateOp::single(q, gates::x(), "x"));
  Circuit round(layout.total());
  append_flip(round, layout, evolution, coin, {{counter[0], true}});
  append_freezing(round, MonitoredCondition::qubit_is_one(coin), counter);
  for (int m = 0; m < M; ++m) c.append(round);
  return c;
}

void dirac_frozen(StateVector& state, const RegisterLayout& layout,
                  const UnitEvolution& evolution, const CoinConfig& config) {
  config.validate_capacity();
  dirac_frozen_circuit(layout, evolution, config.M).apply(state);
}

}  // namespace qhes
