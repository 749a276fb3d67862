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

#ifndef QHES_REFERENCE_H_
#define QHES_REFERENCE_H_

#include <string>
#include <vector>

#include "qhes/hamiltonian.h"
#include "qhes/heaviside.h"
#include "qhes/state_vector.h"

namespace qhes {

// Dense eigendecomposition used as ground truth.
class SpectrumReference {
 public:
  explicit SpectrumReference(const PauliHamiltonian& h);
  explicit SpectrumReference(const Matrix& hermitian);

  int dim() const { return static_cast<int>(eigenvalues_.size()); }
  // Ascending.
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }
  const Matrix& matrix() const { return matrix_; }
  StateVector eigenstate(int j) const;
  double min() const { return eigenvalues_.front(); }
  double max() const { return eigenvalues_.back(); }

  // Distance from `e` to the nearest eigenvalue farther than `tol` from it.
  double gap_at(double e, double tol = 1e-9) const;
  // Number of eigenvalues below theta - eps. Throws DomainError when an
  // eigenvalue lies in the open band (theta - eps, theta).
  int boundary_index(double theta, double eps) const;
  // Indices of eigenvalues within `tol` of `e`.
  std::vector<int> qualified(double e, double tol = 1e-9) const;
  // |<E_j|psi>|^2 for every eigenvector.
  std::vector<double> overlaps(const StateVector& physical) const;

 private:
  Matrix matrix_;
  std::vector<double> eigenvalues_;
  Matrix eigenvectors_;
};

// Closed-form marking amplitudes per eigenvalue (ascending order). alpha and
// beta are moduli; gamma = cos^M(E) is the exact coin amplitude.
struct PredictedAmplitudes {
  std::vector<double> alpha, beta;
  std::vector<double> gamma, eta;
  // alpha^2 for every shift: [w][j].
  std::vector<std::vector<double>> alpha_sq_by_shift;
  // Marked probability of the seed state whose overlaps were supplied.
  double p = 0.0;
};

// gamma_j = cos^M(E_j) on the (normalized) spectrum of `ref`.
PredictedAmplitudes predict_dirac(const SpectrumReference& ref, int M,
                                  const std::vector<double>& overlaps = {});

// Per-round survival sum_{x_min <= x < 2^{R-1}} |kappa(E, x)|^2.
double heaviside_round_survival(double e, int R, Index x_min = 0);

// alpha_j^2 = s^Q for the primary circuit and s^{2Q} for the frozen one,
// where s is the per-round survival of the unshifted spectrum; the
// per-shift table uses the shifted spectra.
PredictedAmplitudes predict_heaviside(const SpectrumReference& ref,
                                      const FilterConfig& config,
                                      FilterVariant variant,
                                      const std::vector<double>& overlaps = {},
                                      Index x_min = 0);

struct VerifyCheck {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_pass() const;
  void add(VerifyCheck check) { checks.push_back(std::move(check)); }
};

// Elementwise comparison; throws ValidationError on a size mismatch.
VerifyCheck verify_run(const std::string& name,
                       const std::vector<double>& simulated,
                       const std::vector<double>& predicted, double tolerance);

}  // namespace qhes

#endif  // QHES_REFERENCE_H_
