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

#include "qhes/reference.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qhes/errors.h"
#include "qhes/phase_estimation.h"

namespace qhes {

SpectrumReference::SpectrumReference(const PauliHamiltonian& h)
    : SpectrumReference(dense_matrix(h)) {}

SpectrumReference::SpectrumReference(const Matrix& hermitian)
    : matrix_(hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian);
  if (es.info() != Eigen::Success) {
    throw ValidationError("eigendecomposition failed");
  }
  eigenvectors_ = es.eigenvectors();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    eigenvalues_.push_back(es.eigenvalues()(i));
  }
}

StateVector SpectrumReference::eigenstate(int j) const {
  if (j < 0 || j >= dim()) throw DomainError("eigenstate index out of range");
  std::vector<Complex> a(dim());
  for (int i = 0; i < dim(); ++i) a[i] = eigenvectors_(i, j);
  return StateVector(std::move(a));
}

double SpectrumReference::gap_at(double e, double tol) const {
  double g = std::numeric_limits<double>::infinity();
  for (double v : eigenvalues_) {
    double d = std::abs(v - e);
    if (d > tol) g = std::min(g, d);
  }
  return g;
}

int SpectrumReference::boundary_index(double theta, double eps) const {
  int h = 0;
  for (double v : eigenvalues_) {
    if (v > theta - eps && v < theta) {
      throw DomainError("eigenvalue " + std::to_string(v) +
                        " lies inside the indeterminate band");
    }
    if (v <= theta - eps) ++h;
  }
  return h;
}

std::vector<int> SpectrumReference::qualified(double e, double tol) const {
  std::vector<int> out;
  for (int j = 0; j < dim(); ++j) {
    if (std::abs(eigenvalues_[j] - e) <= tol) out.push_back(j);
  }
  return out;
}

std::vector<double> SpectrumReference::overlaps(
    const StateVector& physical) const {
  if (static_cast<int>(physical.dim()) != dim()) {
    throw LayoutError("state dimension does not match the Hamiltonian");
  }
  std::vector<double> out(dim());
  for (int j = 0; j < dim(); ++j) {
    Complex s{};
    for (int i = 0; i < dim(); ++i) {
      s += std::conj(eigenvectors_(i, j)) * physical[i];
    }
    out[j] = std::norm(s);
  }
  return out;
}

PredictedAmplitudes predict_dirac(const SpectrumReference& ref, int M,
                                  const std::vector<double>& overlaps) {
  PredictedAmplitudes p;
  for (double e : ref.eigenvalues()) {
    double g = std::pow(std::cos(e), M);
    p.gamma.push_back(g);
    p.eta.push_back(std::sqrt(std::max(0.0, 1.0 - g * g)));
  }
  for (std::size_t j = 0; j < overlaps.size() && j < p.gamma.size(); ++j) {
    p.p += overlaps[j] * p.gamma[j] * p.gamma[j];
  }
  return p;
}

double heaviside_round_survival(double e, int R, Index x_min) {
  Index half = Index{1} << (R - 1);
  double s = 0.0;
  for (Index x = x_min; x < half; ++x) s += std::norm(kappa_analytic(e, x, R));
  return std::min(s, 1.0);
}

PredictedAmplitudes predict_heaviside(const SpectrumReference& ref,
                                      const FilterConfig& config,
                                      FilterVariant variant,
                                      const std::vector<double>& overlaps,
                                      Index x_min) {
  int rounds = variant == FilterVariant::kPrimary ? config.Q : 2 * config.Q;
  PredictedAmplitudes p;
  for (int w = 0; w < config.W; ++w) {
    double off = shift_offset(w, config.W, config.R);
    std::vector<double> row;
    for (double e : ref.eigenvalues()) {
      row.push_back(
          std::pow(heaviside_round_survival(e + off, config.R, x_min), rounds));
    }
    p.alpha_sq_by_shift.push_back(std::move(row));
  }
  for (double a2 : p.alpha_sq_by_shift.front()) {
    p.alpha.push_back(std::sqrt(a2));
    p.beta.push_back(std::sqrt(std::max(0.0, 1.0 - a2)));
  }
  for (std::size_t j = 0; j < overlaps.size() && j < p.alpha.size(); ++j) {
    p.p += overlaps[j] * p.alpha[j] * p.alpha[j];
  }
  return p;
}

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const VerifyCheck& c) { return c.pass; });
}

VerifyCheck verify_run(const std::string& name,
                       const std::vector<double>& simulated,
                       const std::vector<double>& predicted, double tolerance) {
  if (simulated.size() != predicted.size()) {
    throw ValidationError("check '" + name + "': " +
                          std::to_string(simulated.size()) +
                          " simulated values vs " +
                          std::to_string(predicted.size()) + " predictions");
  }
  VerifyCheck c{name, 0.0, tolerance, true};
  for (std::size_t i = 0; i < simulated.size(); ++i) {
    double d = std::abs(simulated[i] - predicted[i]);
    if (std::isnan(d)) {
      c.max_deviation = d;
      break;
    }
    c.max_deviation = std::max(c.max_deviation, d);
  }
  c.pass = c.max_deviation <= tolerance;
  return c;
}

}  // namespace qhes
