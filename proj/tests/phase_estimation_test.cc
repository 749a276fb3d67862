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

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "qhes/errors.h"
#include "qhes/reference.h"
#include "test_util.h"

namespace qhes {
namespace {

using std::numbers::pi;

TEST(QftTest, ForwardMatchesDftMatrix) {
  for (int r = 1; r <= 4; ++r) {
    std::vector<int> qubits(r);
    for (int i = 0; i < r; ++i) qubits[i] = i;
    Matrix m = circuit_matrix(qft_circuit(r, qubits, FourierDirection::kForward));
    int d = 1 << r;
    for (int k = 0; k < d; ++k) {
      for (int x = 0; x < d; ++x) {
        Complex expected = std::polar(1.0 / std::sqrt(d), 2.0 * pi * x * k / d);
        EXPECT_LT(std::abs(m(k, x) - expected), 1e-13) << r << " " << k << " " << x;
      }
    }
  }
}

TEST(QftTest, InverseUndoesForwardOnSubregister) {
  RegisterLayout l{{"a", 1}, {"r", 3}, {"b", 1}};
  StateVector s = testing::random_state(5, 8);
  StateVector t = s;
  qft(t, l, "r", FourierDirection::kForward);
  qft(t, l, "r", FourierDirection::kInverse);
  EXPECT_LT(testing::max_diff(s, t), 1e-13);
}

TEST(QftTest, RejectsOversizedRegister) {
  std::vector<int> q(kMaxRepresentationQubits + 1);
  for (int i = 0; i <= kMaxRepresentationQubits; ++i) q[i] = i;
  EXPECT_THROW(qft_circuit(kMaxRepresentationQubits + 1, q,
                           FourierDirection::kForward),
               ValidationError);
}

TEST(KappaTest, ExactBinaryPhaseGivesDelta) {
  const int R = 4;
  for (Index x = 0; x < 16; ++x) {
    double e = 2.0 * pi * static_cast<double>(x) / 16.0;
    for (Index y = 0; y < 16; ++y) {
      EXPECT_NEAR(std::abs(kappa_analytic(e, y, R)), x == y ? 1.0 : 0.0, 1e-12);
    }
  }
}

TEST(KappaTest, MatchesDirectSum) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
  const int R = 5;
  for (int i = 0; i < 50; ++i) {
    double e = u(rng);
    Index x = rng() % 32;
    Complex sum = 0.0;
    for (int k = 0; k < 32; ++k) {
      sum += std::polar(1.0, k * (e - 2.0 * pi * static_cast<double>(x) / 32.0));
    }
    EXPECT_LT(std::abs(kappa_analytic(e, x, R) - sum / 32.0), 1e-12);
  }
}

TEST(KappaTest, ProbabilitiesSumToOne) {
  const int R = 6;
  for (double e : {0.1, 1.0, 3.3, 6.0}) {
    double total = 0.0;
    for (Index x = 0; x < 64; ++x) total += std::norm(kappa_analytic(e, x, R));
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(KappaTest, NearestBinaryPeakIsAtLeastTwoOverPi) {
  std::mt19937_64 rng(5);
  for (int R : {3, 5, 7}) {
    double d = std::ldexp(1.0, R);
    std::uniform_real_distribution<double> u(0.0, 2.0 * pi * (1.0 - 1.0 / d));
    for (int i = 0; i < 300; ++i) {
      double e = u(rng);
      Index x = nearest_binary(e / (2.0 * pi), R);
      EXPECT_GE(std::abs(kappa_analytic(e, x, R)), 2.0 / pi - 1e-15);
    }
  }
}

TEST(NearestBinaryTest, RoundsHalfUpAndChecksDomain) {
  EXPECT_EQ(nearest_binary(0.0, 3), 0u);
  EXPECT_EQ(nearest_binary(1.0 / 16.0, 3), 1u);
  EXPECT_EQ(nearest_binary(0.874, 3), 7u);
  EXPECT_THROW(nearest_binary(0.9, 3), DomainError);
  EXPECT_THROW(nearest_binary(-0.01, 3), DomainError);
}

TEST(QpeTest, AmplitudesEqualKappaOnEigenstates) {
  for (int n : {1, 2, 3}) {
    for (int R : {3, 5}) {
      PauliHamiltonian h = testing::random_hamiltonian(n, 40 + n + R, 0.5).shifted(2.0);
      SpectrumReference ref(h);
      UnitEvolution evo(h);
      RegisterLayout l{{std::string(kPhysical), n}, {representation_group(0), R}};
      Circuit qpe = qpe_circuit(l, evo, representation_group(0));
      for (int j = 0; j < ref.dim(); ++j) {
        StateVector s = embed(ref.eigenstate(j), l, kPhysical);
        qpe.apply(s);
        for (Index x = 0; x < (Index{1} << R); ++x) {
          Complex amp = 0.0;
          for (int i = 0; i < ref.dim(); ++i) {
            amp += std::conj(ref.eigenvectors()(i, j)) *
                   s[(static_cast<Index>(i) << R) | x];
          }
          EXPECT_LT(std::abs(amp - kappa_analytic(ref.eigenvalues()[j], x, R)),
                    1e-10);
        }
      }
    }
  }
}

TEST(QpeTest, ForwardThenInverseIsIdentity) {
  PauliHamiltonian h = testing::random_hamiltonian(2, 50);
  UnitEvolution evo(h);
  RegisterLayout l{{std::string(kPhysical), 2}, {representation_group(0), 4}};
  StateVector s = testing::random_state(6, 3);
  StateVector t = s;
  qpe_apply(t, l, evo, representation_group(0));
  qpe_inverse_apply(t, l, evo, representation_group(0));
  EXPECT_LT(testing::max_diff(s, t), 1e-12);
}

TEST(QpeTest, ControlledQpeActsOnlyWhenControlSet) {
  PauliHamiltonian h = testing::random_hamiltonian(1, 51);
  UnitEvolution evo(h);
  RegisterLayout l{{"ctl", 1}, {std::string(kPhysical), 1}, {representation_group(0), 3}};
  StateVector off = embed(testing::random_state(1, 6), l, kPhysical);
  StateVector before = off;
  controlled_qpe(off, l, evo, representation_group(0), {{0, true}});
  EXPECT_LT(testing::max_diff(off, before), 1e-15);

  StateVector on = before;
  apply_gate(on, GateOp::single(0, gates::x()));
  StateVector plain = on;
  controlled_qpe(on, l, evo, representation_group(0), {{0, true}});
  qpe_apply(plain, l, evo, representation_group(0));
  EXPECT_LT(testing::max_diff(on, plain), 1e-13);
  EXPECT_THROW(qpe_circuit(l, evo, representation_group(0), {{1, true}}),
               ValidationError);
}

}  // namespace
}  // namespace qhes
