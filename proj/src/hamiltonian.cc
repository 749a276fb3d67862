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

#include "qhes/hamiltonian.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "qhes/errors.h"

namespace qhes {
namespace {

constexpr double kPi = std::numbers::pi;

struct Token {
  std::string_view text;
  int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line, int first_column) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '\r') {
      ++j;
    }
    out.push_back({line.substr(i, j - i), first_column + static_cast<int>(i)});
    i = j;
  }
  return out;
}

double parse_number(const Token& t, int line) {
  std::string_view s = t.text;
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError(line, t.column,
                     "invalid number '" + std::string(t.text) + "'");
  }
  return v;
}

void check_paulis(std::string_view paulis, int n) {
  if (static_cast<int>(paulis.size()) != n) {
    throw ValidationError("Pauli string '" + std::string(paulis) +
                          "' has length " + std::to_string(paulis.size()) +
                          ", expected " + std::to_string(n));
  }
  for (char c : paulis) {
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw ValidationError("invalid Pauli character '" + std::string(1, c) +
                            "' in '" + std::string(paulis) + "'");
    }
  }
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  return std::string(buf, ptr);
}

}  // namespace

PauliHamiltonian::PauliHamiltonian(int num_qubits, std::vector<PauliTerm> terms,
                                   double offset)
    : num_qubits_(num_qubits), offset_(offset) {
  if (num_qubits < 1) throw ValidationError("Hamiltonian needs at least 1 qubit");
  for (PauliTerm& t : terms) add_term(std::move(t.paulis), t.coefficient);
}

PauliHamiltonian& PauliHamiltonian::add_term(std::string paulis,
                                             double coefficient) {
  check_paulis(paulis, num_qubits_);
  if (!std::isfinite(coefficient)) {
    throw ValidationError("non-finite coefficient for '" + paulis + "'");
  }
  terms_.push_back({std::move(paulis), coefficient});
  return *this;
}

PauliHamiltonian PauliHamiltonian::scaled_and_shifted(double scale,
                                                      double shift) const {
  PauliHamiltonian out(num_qubits_, {}, scale * offset_ + shift);
  for (const PauliTerm& t : terms_) {
    out.terms_.push_back({t.paulis, scale * t.coefficient});
  }
  return out;
}

PauliHamiltonian PauliHamiltonian::shifted(double shift) const {
  return scaled_and_shifted(1.0, shift);
}

double PauliHamiltonian::coefficient_bound() const {
  double b = std::abs(offset_);
  for (const PauliTerm& t : terms_) b += std::abs(t.coefficient);
  return b;
}

PauliTerm parse_pauli_term(std::string_view text, int num_qubits, int line,
                           int column) {
  std::vector<Token> tok = tokenize(text, column);
  if (tok.size() != 2) {
    int col = tok.size() > 2 ? tok[2].column : column;
    throw ParseError(line, col,
                     "expected '<coefficient> <pauli-string>', got '" +
                         std::string(text) + "'");
  }
  double c = parse_number(tok[0], line);
  std::string_view p = tok[1].text;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != 'I' && p[i] != 'X' && p[i] != 'Y' && p[i] != 'Z') {
      throw ParseError(line, tok[1].column + static_cast<int>(i),
                       "invalid Pauli character '" + std::string(1, p[i]) +
                           "' in token '" + std::string(p) + "'");
    }
  }
  if (static_cast<int>(p.size()) != num_qubits) {
    throw ParseError(line, tok[1].column,
                     "Pauli string '" + std::string(p) + "' has length " +
                         std::to_string(p.size()) + ", expected " +
                         std::to_string(num_qubits));
  }
  return {std::string(p), c};
}

PauliHamiltonian parse_hamiltonian(std::string_view text) {
  int n = 0;
  double offset = 0.0;
  bool have_offset = false;
  std::vector<PauliTerm> terms;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::vector<Token> tok = tokenize(line, 1);
    if (tok.empty()) continue;
    if (tok[0].text == "n_qubits") {
      if (n != 0) throw ParseError(line_no, tok[0].column, "duplicate n_qubits");
      if (tok.size() != 2) {
        throw ParseError(line_no, tok[0].column, "expected 'n_qubits <N>'");
      }
      auto [ptr, ec] = std::from_chars(
          tok[1].text.data(), tok[1].text.data() + tok[1].text.size(), n);
      if (ec != std::errc() || ptr != tok[1].text.data() + tok[1].text.size() ||
          n < 1) {
        throw ParseError(line_no, tok[1].column,
                         "invalid qubit count '" + std::string(tok[1].text) +
                             "'");
      }
    } else if (tok[0].text == "offset") {
      if (tok.size() != 2) {
        throw ParseError(line_no, tok[0].column, "expected 'offset <value>'");
      }
      if (have_offset) throw ParseError(line_no, tok[0].column, "duplicate offset");
      offset = parse_number(tok[1], line_no);
      have_offset = true;
    } else {
      if (n == 0) {
        throw ParseError(line_no, tok[0].column,
                         "term '" + std::string(tok[0].text) +
                             "' appears before n_qubits");
      }
      terms.push_back(parse_pauli_term(line, n, line_no, 1));
    }
  }
  if (n == 0) throw ParseError(line_no, 1, "missing n_qubits");
  return PauliHamiltonian(n, std::move(terms), offset);
}

std::string format_hamiltonian(const PauliHamiltonian& h) {
  std::string out = "n_qubits " + std::to_string(h.num_qubits()) + "\n";
  for (const PauliTerm& t : h.terms()) {
    out += format_double(t.coefficient) + " " + t.paulis + "\n";
  }
  if (h.offset() != 0.0) out += "offset " + format_double(h.offset()) + "\n";
  return out;
}

PauliHamiltonian ising_chain(int num_qubits) {
  if (num_qubits < 2) throw ValidationError("Ising chain needs N >= 2");
  PauliHamiltonian h(num_qubits);
  double c = -1.0 / (num_qubits - 1);
  for (int i = 0; i + 1 < num_qubits; ++i) {
    std::string p(num_qubits, 'I');
    p[i] = 'Z';
    p[i + 1] = 'Z';
    h.add_term(std::move(p), c);
  }
  return h;
}

Matrix dense_matrix(const PauliHamiltonian& h, int cap) {
  int n = h.num_qubits();
  if (n > cap) {
    throw ResourceError("dense matrix of " + std::to_string(n) +
                        " qubits exceeds the cap of " + std::to_string(cap));
  }
  Index dim = Index{1} << n;
  Matrix m = Matrix::Identity(dim, dim) * h.offset();
  static const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const PauliTerm& t : h.terms()) {
    Index flip = 0, sign = 0;
    int ny = 0;
    for (int q = 0; q < n; ++q) {
      Index b = Index{1} << (n - 1 - q);
      switch (t.paulis[q]) {
        case 'X': flip |= b; break;
        case 'Y': flip |= b; sign |= b; ++ny; break;
        case 'Z': sign |= b; break;
        default: break;
      }
    }
    Complex c = t.coefficient * kIPow[ny % 4];
    for (Index j = 0; j < dim; ++j) {
      double s = (std::popcount(j & sign) & 1) ? -1.0 : 1.0;
      m(j ^ flip, j) += c * s;
    }
  }
  return m;
}

SpectrumInterval crude_bounds(const PauliHamiltonian& h) {
  double b = h.coefficient_bound();
  return {-b, b};
}

NormalizedHamiltonian normalize_spectrum(const PauliHamiltonian& h,
                                         SpectrumInterval bounds,
                                         SpectrumInterval target) {
  if (!(target.hi > target.lo)) throw ValidationError("empty target interval");
  if (!(bounds.hi > bounds.lo)) {
    throw ValidationError("degenerate spectrum bound; zero operator?");
  }
  double a = kNormalizationMargin * (target.hi - target.lo) /
             (bounds.hi - bounds.lo);
  double b = 0.5 * (target.hi + target.lo) - a * 0.5 * (bounds.hi + bounds.lo);
  return {h.scaled_and_shifted(a, b), {a, b}};
}

NormalizedHamiltonian normalize_for_threshold(const PauliHamiltonian& h,
                                              SpectrumInterval bounds,
                                              double threshold, int R) {
  if (!(bounds.hi > bounds.lo)) {
    throw ValidationError("degenerate spectrum bound; zero operator?");
  }
  if (R < 2) throw ValidationError("threshold normalization needs R >= 2");
  double bin = 2.0 * kPi / std::ldexp(1.0, R);
  double a = std::numeric_limits<double>::infinity();
  if (threshold > bounds.lo) a = std::min(a, kPi / (threshold - bounds.lo));
  if (bounds.hi > threshold) {
    a = std::min(a, (kPi - 2.0 * bin) / (bounds.hi - threshold));
  }
  a *= kNormalizationMargin;
  double b = kPi - a * threshold;
  return {h.scaled_and_shifted(a, b), {a, b}};
}

NormalizedHamiltonian normalize_for_target(const PauliHamiltonian& h,
                                           SpectrumInterval bounds,
                                           double target_energy) {
  double reach =
      std::max(bounds.hi - target_energy, target_energy - bounds.lo);
  if (!(reach > 0.0)) {
    throw ValidationError("degenerate spectrum bound; zero operator?");
  }
  double a = kNormalizationMargin * (kPi / 2.0) / reach;
  double b = -a * target_energy;
  return {h.scaled_and_shifted(a, b), {a, b}};
}

Matrix unit_evolution(const PauliHamiltonian& h, int sign) {
  if (sign != 1 && sign != -1) throw ValidationError("sign must be +1 or -1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(dense_matrix(h));
  const Matrix& v = es.eigenvectors();
  Eigen::VectorXcd d(v.cols());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    d(i) = std::polar(1.0, sign * es.eigenvalues()(i));
  }
  return v * d.asDiagonal() * v.adjoint();
}

UnitEvolution::UnitEvolution(const PauliHamiltonian& h)
    : num_qubits_(h.num_qubits()) {
  powers_.push_back(unit_evolution(h, 1));
}

UnitEvolution UnitEvolution::from_matrix(Matrix forward) {
  if (!is_unitary(forward, 1e-10)) {
    throw ValidationError("evolution matrix is not unitary");
  }
  UnitEvolution u;
  int n = 0;
  while ((Eigen::Index{1} << n) < forward.rows()) ++n;
  u.num_qubits_ = n;
  u.powers_.push_back(std::move(forward));
  return u;
}

const Matrix& UnitEvolution::power_of_two(int j) const {
  while (static_cast<int>(powers_.size()) <= j) {
    const Matrix& last = powers_.back();
    powers_.push_back(last * last);
  }
  return powers_[j];
}

void append_coin_controlled_evolution(Circuit& circuit,
                                      const RegisterLayout& layout,
                                      const UnitEvolution& evolution, int coin,
                                      const std::vector<Control>& controls) {
  std::vector<int> phys = layout.qubits(kPhysical);
  if (static_cast<int>(phys.size()) != evolution.num_qubits()) {
    throw LayoutError("physical register does not match the Hamiltonian");
  }
  std::vector<Control> c0 = controls, c1 = controls;
  c0.push_back({coin, false});
  c1.push_back({coin, true});
  circuit.append(GateOp::block(phys, evolution.forward(), c0, "evolve"));
  circuit.append(GateOp::block(phys, evolution.backward(), c1, "evolve"));
}

void coin_controlled_evolution(StateVector& state, const RegisterLayout& layout,
                               const UnitEvolution& evolution, int coin) {
  Circuit c(layout.total());
  append_coin_controlled_evolution(c, layout, evolution, coin);
  c.apply(state);
}

void power_evolution(StateVector& state, const RegisterLayout& layout,
                     const UnitEvolution& evolution, int k, int sign) {
  if (k < 0) throw ValidationError("power must be non-negative");
  if (sign != 1 && sign != -1) throw ValidationError("sign must be +1 or -1");
  std::vector<int> phys = layout.qubits(kPhysical);
  GateOp step = GateOp::block(
      phys, sign > 0 ? evolution.forward() : evolution.backward(), {}, "evolve");
  for (int i = 0; i < k; ++i) apply_gate(state, step);
}

double shift_offset(int w, int W, int R) {
  return static_cast<double>(w) / W * kPi / std::ldexp(1.0, R - 1);
}

std::vector<PauliHamiltonian> hamiltonian_set(const PauliHamiltonian& h0, int W,
                                              int R) {
  if (W < 1 || R < 1) throw ValidationError("need W >= 1 and R >= 1");
  std::vector<PauliHamiltonian> out;
  for (int w = 0; w < W; ++w) out.push_back(h0.shifted(shift_offset(w, W, R)));
  return out;
}

}  // namespace qhes
