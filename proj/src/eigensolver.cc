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

#include "qhes/eigensolver.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qhes/errors.h"

namespace qhes {
namespace {

constexpr double kPi = std::numbers::pi;

double default_p_min(int num_physical) {
  return 1.0 / (4.0 * std::ldexp(1.0, num_physical));
}

FixedPointConfig amplification_config(AmplificationMode mode, double delta,
                                      double p_min) {
  return mode == AmplificationMode::kKnownP
             ? FixedPointConfig::known_p()
             : FixedPointConfig::fixed_point(delta, p_min);
}

StateVector initial_physical_state(const Matrix& init_unitary) {
  std::vector<Complex> a(init_unitary.rows());
  for (Eigen::Index i = 0; i < init_unitary.rows(); ++i) a[i] = init_unitary(i, 0);
  return StateVector(std::move(a));
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

JudgeVerdict quantum_judge(const NormalizedHamiltonian& normalized,
                           const FilterConfig& config,
                           const JudgeOptions& options, Index x_min) {
  config.validate();
  if (!(options.decision_cut > 0.0 && options.decision_cut < 1.0)) {
    throw ConfigError("decision cut must lie in (0, 1)");
  }
  const PauliHamiltonian& h = normalized.hamiltonian;
  int n = h.num_qubits();
  double p_min = options.p_min > 0.0 ? options.p_min : default_p_min(n);
  FixedPointConfig fp = amplification_config(options.mode, options.delta, p_min);
  Matrix init = random_unitary(1 << n, options.seed);
  RegisterLayout layout = heaviside_frozen_layout(n, config.R, config.C);
  int mark = layout.qubit(kMark);

  JudgeVerdict v;
  v.threshold_raw = normalized.map.inverse(kPi);
  v.mark0_probability = -1.0;
  for (int w = 0; w < config.W; ++w) {
    UnitEvolution evo(h.shifted(shift_offset(w, config.W, config.R)));
    MarkingOracle oracle{layout,
                         heaviside_frozen_circuit(layout, evo, config.Q, x_min),
                         mark};
    AmplificationResult r = fixed_point_amplify(init, oracle, fp);
    oracle.circuit.apply(r.state);
    double p = marked_probability(r.state, mark);
    if (options.shots > 0) {
      p = sample_probability(p, options.shots, derive_seed(options.seed, w));
    }
    v.oracle_calls += r.oracle_calls + 1;
    v.per_shift.push_back(p);
    if (p > v.mark0_probability) {
      v.mark0_probability = p;
      v.shift_index = w;
    }
  }
  v.decision = v.mark0_probability > options.decision_cut
                   ? Decision::kBelowThresholdExists
                   : Decision::kNoneBelow;
  return v;
}

JudgeVerdict band_judge(const PauliHamiltonian& h, double lo_threshold,
                        double hi_threshold, SpectrumInterval bounds,
                        const FilterConfig& config,
                        const JudgeOptions& options) {
  if (!(lo_threshold < hi_threshold)) {
    throw ValidationError("band judge needs lo < hi");
  }
  NormalizedHamiltonian hn =
      normalize_for_threshold(h, bounds, hi_threshold, config.R);
  double bin = 2.0 * kPi / std::ldexp(1.0, config.R);
  double phi_lo = hn.map.apply(lo_threshold);
  Index half = Index{1} << (config.R - 1);
  Index x_min = 0;
  if (phi_lo > 0.0) {
    x_min = std::min<Index>(static_cast<Index>(std::ceil(phi_lo / bin)),
                            half - 1);
  }
  return quantum_judge(hn, config, options, x_min);
}

int dichotomy_iterations(double width, double eps) {
  if (!(eps > 0.0)) throw ConfigError("dichotomy eps must be positive");
  if (!(width > eps)) return 0;
  return static_cast<int>(std::ceil(std::log2(width / eps)));
}

namespace {

template <typename Judge>
DichotomyTrace bisect(double lo, double hi, const DichotomyOptions& options,
                      const FilterConfig& config, Judge&& judge) {
  if (options.repeats < 1) throw ConfigError("repeats must be positive");
  DichotomyTrace trace;
  trace.brackets.push_back({lo, hi});
  trace.iterations = dichotomy_iterations(hi - lo, options.eps);
  for (int i = 0; i < trace.iterations; ++i) {
    double t = 0.5 * (lo + hi);
    int yes = 0;
    for (int r = 0; r < options.repeats; ++r) {
      JudgeOptions jo = options.judge;
      jo.seed = derive_seed(options.judge.seed,
                            static_cast<std::uint64_t>(i) * options.repeats + r);
      auto [verdict, scale] = judge(t, jo);
      if (verdict.decision == Decision::kBelowThresholdExists) ++yes;
      trace.resolution = config.eps / scale;
      trace.verdicts.push_back(std::move(verdict));
    }
    if (2 * yes > options.repeats) {
      hi = t;
    } else {
      lo = t;
    }
    trace.brackets.push_back({lo, hi});
  }
  trace.E_c = 0.5 * (lo + hi);
  return trace;
}

}  // namespace

DichotomyTrace dichotomy_lowest(const PauliHamiltonian& h,
                                const FilterConfig& config,
                                const DichotomyOptions& options) {
  config.validate();
  SpectrumInterval bounds = options.bounds.value_or(crude_bounds(h));
  return bisect(bounds.lo, bounds.hi, options, config,
                [&](double t, const JudgeOptions& jo) {
                  NormalizedHamiltonian hn =
                      normalize_for_threshold(h, bounds, t, config.R);
                  return std::pair{quantum_judge(hn, config, jo),
                                   hn.map.scale};
                });
}

DichotomyTrace dichotomy_next(const PauliHamiltonian& h, double found,
                              double margin, const FilterConfig& config,
                              const DichotomyOptions& options) {
  config.validate();
  if (!(margin >= 0.0)) throw ConfigError("margin must be non-negative");
  SpectrumInterval bounds = options.bounds.value_or(crude_bounds(h));
  double lo_band = found + margin;
  if (!(lo_band < bounds.hi)) {
    throw DomainError("no room above the found eigenvalue");
  }
  return bisect(lo_band, bounds.hi, options, config,
                [&](double t, const JudgeOptions& jo) {
                  double scale =
                      normalize_for_threshold(h, bounds, t, config.R).map.scale;
                  return std::pair{
                      band_judge(h, lo_band, t, bounds, config, jo), scale};
                });
}

SelectorResult quantum_selector(const PauliHamiltonian& h, double target_energy,
                                const SelectorOptions& options,
                                const SpectrumReference* reference) {
  int n = h.num_qubits();
  SpectrumInterval bounds = options.bounds.value_or(crude_bounds(h));
  NormalizedHamiltonian hn = normalize_for_target(h, bounds, target_energy);
  double gap = options.gap;
  if (gap == 0.0 && reference != nullptr) gap = reference->gap_at(target_energy);
  if (gap == 0.0) throw ConfigError("spectral gap unknown; pass one explicitly");
  if (!(gap > 0.0)) throw ConfigError("spectral gap must be positive");
  double delta = std::min(hn.map.scale * gap, kNormalizationMargin * kPi / 2.0);

  SelectorResult out;
  out.gap_used = gap;
  out.coin = CoinConfig::derive(delta, options.eps, n, options.K);

  RegisterLayout layout = dirac_frozen_layout(n, out.coin.K);
  UnitEvolution evo(hn.hamiltonian);
  MarkingOracle oracle{layout, dirac_frozen_circuit(layout, evo, out.coin.M),
                       layout.qubit(kCoins)};
  double p_min = options.p_min > 0.0 ? options.p_min : default_p_min(n);
  Matrix init = random_unitary(1 << n, options.seed);
  AmplificationResult r = fixed_point_amplify(
      init, oracle, FixedPointConfig::fixed_point(options.delta, p_min));
  oracle.circuit.apply(r.state);
  out.oracle_calls = r.oracle_calls + 1;

  StateVector psi = extract_group(
      r.state, layout, kPhysical,
      {{std::string(kCounting), std::string(out.coin.K, '1')},
       {std::string(kCoins), "0"}});
  out.postselection_probability = psi.norm_squared();
  if (out.postselection_probability == 0.0) {
    throw DegenerateInputError("post-selection on the coin found no weight");
  }
  psi.normalize();
  out.physical_state = std::move(psi);
  if (reference != nullptr) {
    out.lambda_overlaps = reference->overlaps(initial_physical_state(init));
    const std::vector<double>& ev = reference->eigenvalues();
    double nearest = ev.front();
    for (double e : ev) {
      if (std::abs(e - target_energy) < std::abs(nearest - target_energy)) {
        nearest = e;
      }
    }
    out.eps_s =
        error_metrics(target_energy, out.physical_state, *reference, nearest)
            .eps_s;
  }
  return out;
}

ErrorMetrics error_metrics(double E_c, const StateVector& state,
                           const SpectrumReference& reference, double E_g,
                           double tol) {
  std::vector<double> ov = reference.overlaps(state);
  ErrorMetrics m;
  m.eps_v = std::abs(E_c - E_g);
  for (int j = 0; j < reference.dim(); ++j) {
    if (std::abs(reference.eigenvalues()[j] - E_g) > tol) m.eps_s += ov[j];
  }
  m.eps_s = std::clamp(m.eps_s, 0.0, 1.0);
  return m;
}

}  // namespace qhes
