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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <thread>

#include "qhes/amplification.h"
#include "qhes/dirac_coin.h"
#include "qhes/eigensolver.h"
#include "qhes/errors.h"
#include "qhes/experiment.h"
#include "qhes/heaviside.h"
#include "qhes/phase_estimation.h"
#include "qhes/reference.h"
#include "test_util.h"

namespace qhes {
namespace {

using std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / x.size(), my += y[i] / y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

// Z-diagonal Hamiltonian carrying `values` on the computational basis.
PauliHamiltonian diagonal_hamiltonian(const std::vector<double>& values, int n) {
  int d = 1 << n;
  double mean = 0.0;
  for (double v : values) mean += v / d;
  PauliHamiltonian h(n, {}, mean);
  for (int m = 1; m < d; ++m) {
    double c = 0.0;
    for (int i = 0; i < d; ++i) {
      c += values[i] * (__builtin_popcount(i & m) % 2 ? -1.0 : 1.0);
    }
    std::string p(n, 'I');
    for (int q = 0; q < n; ++q) {
      if ((m >> (n - 1 - q)) & 1) p[q] = 'Z';
    }
    h.add_term(p, c / d);
  }
  return h;
}

Outcome judge_error_trend() {
  SweepSpec s;
  s.kind = SweepKind::kJudge;
  s.n_values = {2, 3};
  s.second_values = {3, 4, 5, 6, 7};
  s.threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<ExperimentRecord> rows = run_sweep(s);
  Outcome o;
  int decreasing = 0, pairs = 0;
  for (int n : {2, 3}) {
    std::vector<double> r, lg;
    double prev = 0.0;
    for (const ExperimentRecord& row : rows) {
      if (row.N != n) continue;
      double bound = 2.0 * pi / std::ldexp(1.0, row.R_or_K - 1);
      if (!(row.error <= bound)) {
        o.pass = false;
        o.detail += "N=" + std::to_string(n) + " R=" + std::to_string(row.R_or_K) +
                    " error " + num(row.error) + " > " + num(bound) + "; ";
      }
      if (!r.empty()) {
        ++pairs;
        if (row.error < prev) ++decreasing;
      }
      prev = row.error;
      r.push_back(row.R_or_K);
      lg.push_back(std::log(std::max(row.error, 1e-300)));
    }
    double sl = slope(r, lg);
    if (!(sl <= -0.5)) o.pass = false;
    o.detail += "N=" + std::to_string(n) + " slope " + num(sl) + "; ";
  }
  o.detail += std::to_string(decreasing) + "/" + std::to_string(pairs) +
              " adjacent pairs decreasing";
  return o;
}

Outcome selector_threshold() {
  Outcome o;
  for (int n : {2, 3}) {
    int first = 0;
    for (int k = 1; k <= 12 && first == 0; ++k) {
      ExperimentRecord r = run_selector_cell(n, k, 1);
      if (std::isnan(r.error)) continue;  // capacity error at this K
      first = k;
      if (!(r.error < 1e-12)) o.pass = false;
      o.detail += "N=" + std::to_string(n) + " first K=" + std::to_string(k) +
                  " M=" + std::to_string(r.M) + " eps_s=" + num(r.error) + "; ";
    }
    if (first == 0) {
      o.pass = false;
      continue;
    }
    // Every K below the first valid one must refuse before simulating.
    ExperimentConfig c;
    c.hamiltonian = ising_chain(n);
    c.target = -1.0;
    c.gap = 1.0;
    for (int k = 1; k < first; ++k) {
      c.K = k;
      try {
        run_select(c);
        o.pass = false;
        o.detail += "K=" + std::to_string(k) + " did not raise; ";
      } catch (const CapacityError&) {
      }
    }
  }
  return o;
}

Outcome coin_exactness() {
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    int n = 1 + t % 2;
    PauliHamiltonian h = testing::random_hamiltonian(n, 9000 + t);
    SpectrumReference ref(h);
    UnitEvolution evo(h);
    for (int M = 1; M <= 8; ++M) {
      RegisterLayout multi{{std::string(kPhysical), n}, {std::string(kCoins), M}};
      int K = CoinConfig::min_counting_qubits(M);
      RegisterLayout frozen = dirac_frozen_layout(n, K);
      Circuit fc = dirac_frozen_circuit(frozen, evo, M);
      for (int j = 0; j < ref.dim(); ++j) {
        double expected = std::pow(std::cos(ref.eigenvalues()[j]), M);
        StateVector a = embed(ref.eigenstate(j), multi, kPhysical);
        multi_coin_toss(a, multi, evo);
        StateVector b = embed(ref.eigenstate(j), frozen, kPhysical);
        fc.apply(b);
        Complex amp_a = inner_product(
            ref.eigenstate(j),
            extract_group(a, multi, kPhysical,
                          {{std::string(kCoins), std::string(M, '0')}}));
        Complex amp_b = inner_product(
            ref.eigenstate(j),
            extract_group(b, frozen, kPhysical,
                          {{std::string(kCounting), std::string(K, '1')},
                           {std::string(kCoins), "0"}}));
        worst = std::max({worst, std::abs(amp_a - expected),
                          std::abs(amp_b - expected)});
      }
    }
  }
  return {worst <= 1e-12, "max |amplitude - cos^M(E)| = " + num(worst)};
}

Outcome qpe_bounds() {
  Outcome o;
  std::mt19937_64 rng(2026);
  double min_peak = 1.0;
  const int R = 6;
  std::uniform_real_distribution<double> u(0.0, 2.0 * pi - 2.0 * pi / 64.0);
  for (int i = 0; i < 1000; ++i) {
    double e = u(rng);
    min_peak = std::min(min_peak, std::abs(kappa_analytic(
                                      e, nearest_binary(e / (2.0 * pi), R), R)));
  }
  if (!(min_peak >= 2.0 / pi)) o.pass = false;
  double worst_refined = 1.0;
  for (int S : {2, 4, 8}) {
    std::uniform_real_distribution<double> off(-1.0 / (S * 128.0), 1.0 / (S * 128.0));
    for (int i = 0; i < 1000; ++i) {
      Index x = rng() % 64;
      double e = 2.0 * pi * (static_cast<double>(x) / 64.0 + off(rng));
      double margin = std::abs(kappa_analytic(e, x, R)) - (1.0 - pi * pi / (2.0 * S * S));
      worst_refined = std::min(worst_refined, margin);
    }
  }
  if (!(worst_refined >= 0.0)) o.pass = false;
  double worst_sim = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (int r = 2; r <= 6; ++r) {
      PauliHamiltonian h = testing::random_hamiltonian(n, 500 + 10 * n + r);
      SpectrumReference ref(h);
      UnitEvolution evo(h);
      RegisterLayout l{{std::string(kPhysical), n}, {representation_group(0), r}};
      Circuit qpe = qpe_circuit(l, evo, representation_group(0));
      for (int j = 0; j < ref.dim(); ++j) {
        StateVector s = embed(ref.eigenstate(j), l, kPhysical);
        qpe.apply(s);
        for (Index x = 0; x < (Index{1} << r); ++x) {
          Complex amp = 0.0;
          for (int i = 0; i < ref.dim(); ++i) {
            amp += std::conj(ref.eigenvectors()(i, j)) *
                   s[(static_cast<Index>(i) << r) | x];
          }
          worst_sim = std::max(
              worst_sim, std::abs(amp - kappa_analytic(ref.eigenvalues()[j], x, r)));
        }
      }
    }
  }
  if (!(worst_sim <= 1e-10)) o.pass = false;
  o.detail = "min peak |kappa| " + num(min_peak) + " (>= " + num(2.0 / pi) +
             "); refined-bound margin " + num(worst_refined) +
             "; QPE vs kappa " + num(worst_sim);
  return o;
}

Outcome heaviside_bounds() {
  Outcome o;
  const int R = 4;
  const double bin = 2.0 * pi / 16.0;
  const double eps = 2.0 * bin;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> bad_e(pi, 2.0 * pi - bin);
  std::uniform_real_distribution<double> good_e(0.0, pi - eps);
  double worst_bad = -1.0, worst_good = 1.0, worst_pred = 0.0;
  double worst_good_strong = 1.0;
  auto run = [&](int Q, int W, bool count_good, double& good_slot) {
    FilterConfig f;
    f.R = R;
    f.Q = Q;
    f.W = W;
    f.C = FilterConfig::min_counting_qubits(Q);
    f.eps = eps;
    std::vector<double> values(2);
    values[0] = bad_e(rng);
    values[1] = good_e(rng);
    PauliHamiltonian h = diagonal_hamiltonian(values, 1);
    SpectrumReference ref(h);
    for (FilterVariant v : {FilterVariant::kPrimary, FilterVariant::kFrozen}) {
      PredictedAmplitudes p = predict_heaviside(ref, f, v);
      for (int j = 0; j < 2; ++j) {
        std::vector<ShiftResult> r = shift_sweep_filter(ref.eigenstate(j), h, f, v);
        double best = 0.0;
        for (int w = 0; w < W; ++w) {
          double dev = std::abs(r[w].mark0_probability - p.alpha_sq_by_shift[w][j]);
          worst_pred = std::max(worst_pred, dev);
          best = std::max(best, r[w].mark0_probability);
        }
        if (v != FilterVariant::kPrimary) continue;
        bool bad = ref.eigenvalues()[j] >= pi;
        if (bad && count_good) {
          worst_bad = std::max(
              worst_bad, r[0].mark0_probability - std::pow(1.0 - 4.0 / (pi * pi), Q));
        }
        if (!bad) {
          double base = std::max(0.0, 1.0 - pi * pi / (2.0 * W * W));
          good_slot = std::min(good_slot, best - std::pow(base, 2 * Q));
        }
      }
    }
  };
  for (int Q = 1; Q <= 4; ++Q) {
    int W = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(Q))));
    for (int t = 0; t < 5; ++t) run(Q, W, true, worst_good);
    for (int Wstrong : {3, 4}) run(Q, Wstrong, false, worst_good_strong);
  }
  o.pass = worst_bad <= 1e-12 && worst_good >= -1e-12 &&
           worst_good_strong >= -1e-12 && worst_pred <= 1e-9;
  o.detail = "suppression slack " + num(-worst_bad) + "; survival slack " +
             num(worst_good) + " (W=3,4: " + num(worst_good_strong) +
             "); max |sim - prediction| " + num(worst_pred);
  return o;
}

Outcome judge_discrimination() {
  Outcome o;
  double min_yes = 1.0, max_no = 0.0;
  for (auto [n, R, seeds] : {std::tuple{2, 5, 5}, std::tuple{3, 4, 3}}) {
    FilterConfig f = FilterConfig::defaults(n, R);
    int d = 1 << n;
    std::vector<double> below(d), above(d);
    for (int i = 0; i < d; ++i) {
      below[i] = pi + f.eps + 0.1 + 0.3 * i / d;
      above[i] = pi + 0.05 + 0.25 * i;
    }
    below[0] = pi - f.eps - 0.05;
    JudgeOptions opts;
    opts.delta = 0.1;
    opts.p_min = 1.0 / (16.0 * d);
    for (int s = 1; s <= seeds; ++s) {
      opts.seed = static_cast<std::uint64_t>(s);
      NormalizedHamiltonian yes{diagonal_hamiltonian(below, n), {1.0, 0.0}};
      NormalizedHamiltonian no{diagonal_hamiltonian(above, n), {1.0, 0.0}};
      min_yes = std::min(min_yes, quantum_judge(yes, f, opts).mark0_probability);
      max_no = std::max(max_no, quantum_judge(no, f, opts).mark0_probability);
    }
  }
  o.pass = min_yes >= 0.9 && max_no <= 0.01;
  o.detail = "min mark0 with eigenvalue below " + num(min_yes) +
             " (>= 0.9); max mark0 all above " + num(max_no) + " (<= 0.01)";
  return o;
}

Outcome fixed_point() {
  auto ry = [](double theta) {
    Matrix m(2, 2);
    m << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2),
        std::cos(theta / 2);
    return m;
  };
  auto oracle = [&](double p) {
    RegisterLayout l{{std::string(kPhysical), 1}, {std::string(kMark), 1}};
    Circuit c(l.total());
    c.append(GateOp::single(l.qubit(kMark), ry(2.0 * std::acos(std::sqrt(p)))));
    return MarkingOracle{l, c, l.qubit(kMark)};
  };
  Matrix init = Matrix::Identity(2, 2);
  const double delta = 0.1;
  double worst_fp = 1.0, worst_grover = 0.0, at_one = 0.0;
  for (double p_min : {0.02, 0.05, 0.1}) {
    FixedPointConfig cfg = FixedPointConfig::fixed_point(delta, p_min);
    int steps = static_cast<int>(std::round(1.0 / p_min));
    for (int k = 1; k <= steps; ++k) {
      double p = std::min(1.0, k * p_min);
      MarkingOracle o = oracle(p);
      double got = marked_probability(fixed_point_amplify(init, o, cfg).state, o);
      worst_fp = std::min(worst_fp, got - (1.0 - delta * delta));
      if (k == steps) at_one = got;
    }
  }
  for (double p = 0.005; p <= 1.0; p += 0.0125) {
    MarkingOracle o = oracle(p);
    double got = marked_probability(
        fixed_point_amplify(init, o, FixedPointConfig::known_p()).state, o);
    int k = grover_iterations(p);
    double expected = std::pow(std::sin((2 * k + 1) * std::asin(std::sqrt(p))), 2);
    worst_grover = std::max(worst_grover, std::abs(got - expected));
  }
  return {worst_fp >= -1e-12 && worst_grover <= 1e-9,
          "min slack above 1-delta^2 " + num(worst_fp) + " (p=1 gives " +
              num(at_one) + "); known-p vs Grover " + num(worst_grover)};
}

Outcome structure() {
  PauliHamiltonian h = testing::random_hamiltonian(1, 4242).shifted(2.0);
  UnitEvolution evo(h);
  std::vector<std::pair<std::string, Circuit>> circuits;
  RegisterLayout qpe_l{{std::string(kPhysical), 1}, {representation_group(0), 3}};
  circuits.emplace_back("qft", qft_circuit(4, {1, 2, 3}, FourierDirection::kForward));
  circuits.emplace_back("qpe", qpe_circuit(qpe_l, evo, representation_group(0)));
  RegisterLayout cq{{"ctl", 1}, {std::string(kPhysical), 1}, {representation_group(0), 3}};
  circuits.emplace_back("controlled qpe",
                        qpe_circuit(cq, evo, representation_group(0), {{0, true}}));
  RegisterLayout dp = dirac_primary_layout(1, 3);
  circuits.emplace_back("dirac primary", dirac_primary_circuit(dp, evo));
  RegisterLayout df = dirac_frozen_layout(1, 3);
  circuits.emplace_back("dirac frozen", dirac_frozen_circuit(df, evo, 4));
  RegisterLayout hp = heaviside_primary_layout(1, 2, 3);
  circuits.emplace_back("heaviside primary", heaviside_primary_circuit(hp, evo, 2));
  RegisterLayout hf = heaviside_frozen_layout(1, 3, 3);
  circuits.emplace_back("heaviside frozen", heaviside_frozen_circuit(hf, evo, 2));
  circuits.emplace_back("band filter", heaviside_frozen_circuit(hf, evo, 2, 2));
  circuits.emplace_back("filter unit", qpe_filter_unit_circuit(hf, evo, 0));

  double norm_dev = 0.0, inv_dev = 0.0, refl_dev = 0.0;
  for (const auto& [name, c] : circuits) {
    for (int t = 0; t < 100; ++t) {
      StateVector s = testing::random_state(c.num_qubits(), derive_seed(77, t));
      StateVector orig = s;
      c.apply(s);
      norm_dev = std::max(norm_dev, std::abs(s.norm_squared() - 1.0));
      if (name == "qpe" || name == "controlled qpe") {
        c.apply_inverse(s);
        inv_dev = std::max(inv_dev, testing::max_diff(s, orig));
      }
    }
  }
  MarkingOracle oracle{hf, circuits[6].second, hf.qubit(kMark)};
  Matrix init = random_unitary(2, 5);
  for (int t = 0; t < 100; ++t) {
    StateVector s = testing::random_state(hf.total(), derive_seed(78, t));
    StateVector r = s;
    reflect_initial(r, hf, init);
    norm_dev = std::max(norm_dev, std::abs(r.norm_squared() - 1.0));
    reflect_initial(r, hf, init);
    reflect_marked(r, oracle);
    norm_dev = std::max(norm_dev, std::abs(r.norm_squared() - 1.0));
    reflect_marked(r, oracle);
    refl_dev = std::max(refl_dev, testing::max_diff(s, r));
  }
  int worst_reach = 0;
  bool reach_ok = true;
  for (int M = 1; M <= 8; ++M) {
    int K = CoinConfig::min_counting_qubits(M) + 1;
    RegisterLayout l = dirac_frozen_layout(1, K);
    StateVector s = embed(testing::random_state(1, M), l, kPhysical);
    dirac_frozen_circuit(l, evo, M).apply(s);
    std::set<Index> seen;
    for (Index i = 0; i < s.dim(); ++i) {
      if (std::norm(s[i]) > 1e-26) seen.insert(l.value(i, l.group(kCounting)));
    }
    worst_reach = std::max(worst_reach, static_cast<int>(seen.size()) - (M + 1));
    if (static_cast<int>(seen.size()) > M + 1) reach_ok = false;
  }
  return {norm_dev <= 1e-10 && inv_dev <= 1e-10 && refl_dev <= 1e-10 && reach_ok,
          "norm " + num(norm_dev) + "; qpe inverse " + num(inv_dev) +
              "; reflection involution " + num(refl_dev) +
              "; reachable counter excess over M+1 " + std::to_string(worst_reach)};
}

}  // namespace
}  // namespace qhes

int main() {
  using qhes::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"error trend over R (Ising chain, N=2,3, R=3..7)", qhes::judge_error_trend},
      {"selector precision at the first valid K", qhes::selector_threshold},
      {"coin amplitudes equal cos^M", qhes::coin_exactness},
      {"phase estimation bounds", qhes::qpe_bounds},
      {"Heaviside suppression and survival", qhes::heaviside_bounds},
      {"judge discrimination", qhes::judge_discrimination},
      {"fixed-point amplification", qhes::fixed_point},
      {"unitarity and structure", qhes::structure},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %zu: %s  %s  [%s]\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
