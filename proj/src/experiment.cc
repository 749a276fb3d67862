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

#include "qhes/experiment.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qhes/amplification.h"
#include "qhes/circuit.h"
#include "qhes/dirac_coin.h"
#include "qhes/errors.h"
#include "qhes/phase_estimation.h"

namespace qhes {
namespace {

using Json = nlohmann::json;

constexpr double kPi = std::numbers::pi;

std::string_view trim(std::string_view s, int* lead = nullptr) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    if (lead) *lead = static_cast<int>(s.size());
    return {};
  }
  std::size_t e = s.find_last_not_of(" \t\r");
  if (lead) *lead = static_cast<int>(b);
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_value(std::string_view v, int line, int column, std::string_view key) {
  T out{};
  std::string_view s = v;
  if constexpr (std::is_floating_point_v<T>) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError(line, column,
                     "invalid value '" + std::string(v) + "' for '" +
                         std::string(key) + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(out)) {
      throw ParseError(line, column, "non-finite value for '" + std::string(key) + "'");
    }
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Hamiltonian pieces collected while reading a config.
struct HamiltonianDraft {
  int n = 0;
  std::vector<PauliTerm> terms;
  double offset = 0.0;
  bool ising = false;
  std::optional<PauliHamiltonian> from_file;

  std::optional<PauliHamiltonian> build() const {
    if (from_file) {
      if (n != 0 || !terms.empty() || ising) {
        throw ConfigError("'file' cannot be combined with inline terms");
      }
      return from_file;
    }
    if (n == 0) {
      if (!terms.empty() || ising) throw ConfigError("missing n_qubits");
      return std::nullopt;
    }
    if (ising) {
      if (!terms.empty()) throw ConfigError("'model' cannot be combined with terms");
      return ising_chain(n).shifted(offset);
    }
    return PauliHamiltonian(n, terms, offset);
  }
};

ExperimentConfig parse_ini(std::string_view text,
                           const std::filesystem::path& base_dir) {
  ExperimentConfig c;
  HamiltonianDraft draft;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (std::size_t hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    int lead = 0;
    std::string_view line = trim(raw, &lead);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ParseError(line_no, lead + 1, "unterminated section header");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "hamiltonian" && section != "filter" && section != "coin" &&
          section != "run") {
        throw ParseError(line_no, lead + 2, "unknown section '" + section + "'");
      }
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, lead + 1, "expected 'key = value'");
    }
    if (section.empty()) {
      throw ParseError(line_no, lead + 1, "key outside of any section");
    }
    std::string key(trim(line.substr(0, eq)));
    int vlead = 0;
    std::string_view value = trim(line.substr(eq + 1), &vlead);
    int vcol = lead + static_cast<int>(eq) + 2 + vlead;
    auto bad_key = [&]() {
      return ParseError(line_no, lead + 1,
                        "unknown key '" + key + "' in [" + section + "]");
    };
    if (section == "hamiltonian") {
      if (key == "n_qubits") {
        draft.n = parse_value<int>(value, line_no, vcol, key);
        if (draft.n < 1) throw ParseError(line_no, vcol, "n_qubits must be positive");
      } else if (key == "term") {
        if (draft.n == 0) {
          throw ParseError(line_no, lead + 1, "term appears before n_qubits");
        }
        draft.terms.push_back(parse_pauli_term(value, draft.n, line_no, vcol));
      } else if (key == "offset") {
        draft.offset = parse_value<double>(value, line_no, vcol, key);
      } else if (key == "model") {
        if (value != "ising") {
          throw ParseError(line_no, vcol,
                           "unknown model '" + std::string(value) + "'");
        }
        draft.ising = true;
      } else if (key == "file") {
        std::filesystem::path p(std::string{value});
        if (p.is_relative()) p = base_dir / p;
        draft.from_file = parse_hamiltonian(read_file(p));
      } else {
        throw bad_key();
      }
    } else if (section == "filter") {
      if (key == "R") c.R = parse_value<int>(value, line_no, vcol, key);
      else if (key == "Q") c.Q = parse_value<int>(value, line_no, vcol, key);
      else if (key == "W") c.W = parse_value<int>(value, line_no, vcol, key);
      else if (key == "C") c.C = parse_value<int>(value, line_no, vcol, key);
      else if (key == "eps") c.filter_eps = parse_value<double>(value, line_no, vcol, key);
      else throw bad_key();
    } else if (section == "coin") {
      if (key == "K") c.K = parse_value<int>(value, line_no, vcol, key);
      else if (key == "eps") c.coin_eps = parse_value<double>(value, line_no, vcol, key);
      else if (key == "gap") c.gap = parse_value<double>(value, line_no, vcol, key);
      else if (key == "target") c.target = parse_value<double>(value, line_no, vcol, key);
      else throw bad_key();
    } else {
      if (key == "seed") {
        c.seed = parse_value<std::uint64_t>(value, line_no, vcol, key);
      } else if (key == "delta") {
        c.delta = parse_value<double>(value, line_no, vcol, key);
      } else if (key == "p_min") {
        c.p_min = parse_value<double>(value, line_no, vcol, key);
      } else if (key == "decision_cut") {
        c.decision_cut = parse_value<double>(value, line_no, vcol, key);
      } else if (key == "shots") {
        c.shots = parse_value<int>(value, line_no, vcol, key);
      } else if (key == "dichotomy_eps") {
        c.dichotomy_eps = parse_value<double>(value, line_no, vcol, key);
      } else if (key == "repeats") {
        c.repeats = parse_value<int>(value, line_no, vcol, key);
      } else if (key == "bounds") {
        std::size_t sp = value.find_first_of(" \t");
        if (sp == std::string_view::npos) {
          throw ParseError(line_no, vcol, "expected 'bounds = <lo> <hi>'");
        }
        int hlead = 0;
        std::string_view hi_text = trim(value.substr(sp), &hlead);
        SpectrumInterval b{
            parse_value<double>(value.substr(0, sp), line_no, vcol, key),
            parse_value<double>(hi_text, line_no,
                                vcol + static_cast<int>(sp) + hlead, key)};
        if (!(b.lo < b.hi)) throw ParseError(line_no, vcol, "bounds need lo < hi");
        c.bounds = b;
      } else {
        throw bad_key();
      }
    }
  }
  c.hamiltonian = draft.build();
  return c;
}

template <typename T>
T json_get(const Json& obj, const char* section, const char* key) {
  try {
    return obj.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(std::string("invalid value for '") + key + "' in " +
                      section);
  }
}

void check_json_keys(const Json& obj, const char* section,
                     std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) {
    throw ConfigError(std::string("section '") + section + "' must be an object");
  }
  for (const auto& [k, v] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* a) { return k == a; }) == allowed.end()) {
      throw ConfigError("unknown key '" + k + "' in " + section);
    }
  }
}

ExperimentConfig parse_json(std::string_view text,
                            const std::filesystem::path& base_dir) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (std::size_t p = msg.find(": "); p != std::string::npos) {
      msg = msg.substr(p + 2);
    }
    throw ParseError(line, col, msg);
  }
  check_json_keys(doc, "document", {"hamiltonian", "filter", "coin", "run"});
  ExperimentConfig c;
  if (doc.contains("hamiltonian")) {
    const Json& h = doc["hamiltonian"];
    check_json_keys(h, "hamiltonian",
                    {"n_qubits", "terms", "offset", "model", "file"});
    HamiltonianDraft d;
    if (h.contains("n_qubits")) d.n = json_get<int>(h, "hamiltonian", "n_qubits");
    if (h.contains("offset")) d.offset = json_get<double>(h, "hamiltonian", "offset");
    if (h.contains("model")) {
      if (json_get<std::string>(h, "hamiltonian", "model") != "ising") {
        throw ConfigError("unknown model in hamiltonian");
      }
      d.ising = true;
    }
    if (h.contains("terms")) {
      if (!h["terms"].is_array()) throw ConfigError("'terms' must be an array");
      for (const Json& t : h["terms"]) {
        check_json_keys(t, "term", {"coefficient", "paulis"});
        d.terms.push_back({json_get<std::string>(t, "term", "paulis"),
                           json_get<double>(t, "term", "coefficient")});
      }
    }
    if (h.contains("file")) {
      std::filesystem::path p(json_get<std::string>(h, "hamiltonian", "file"));
      if (p.is_relative()) p = base_dir / p;
      d.from_file = parse_hamiltonian(read_file(p));
    }
    c.hamiltonian = d.build();
  }
  if (doc.contains("filter")) {
    const Json& f = doc["filter"];
    check_json_keys(f, "filter", {"R", "Q", "W", "C", "eps"});
    if (f.contains("R")) c.R = json_get<int>(f, "filter", "R");
    if (f.contains("Q")) c.Q = json_get<int>(f, "filter", "Q");
    if (f.contains("W")) c.W = json_get<int>(f, "filter", "W");
    if (f.contains("C")) c.C = json_get<int>(f, "filter", "C");
    if (f.contains("eps")) c.filter_eps = json_get<double>(f, "filter", "eps");
  }
  if (doc.contains("coin")) {
    const Json& k = doc["coin"];
    check_json_keys(k, "coin", {"K", "eps", "gap", "target"});
    if (k.contains("K")) c.K = json_get<int>(k, "coin", "K");
    if (k.contains("eps")) c.coin_eps = json_get<double>(k, "coin", "eps");
    if (k.contains("gap")) c.gap = json_get<double>(k, "coin", "gap");
    if (k.contains("target")) c.target = json_get<double>(k, "coin", "target");
  }
  if (doc.contains("run")) {
    const Json& r = doc["run"];
    check_json_keys(r, "run",
                    {"seed", "delta", "p_min", "decision_cut", "shots",
                     "dichotomy_eps", "repeats", "bounds"});
    if (r.contains("seed")) c.seed = json_get<std::uint64_t>(r, "run", "seed");
    if (r.contains("delta")) c.delta = json_get<double>(r, "run", "delta");
    if (r.contains("p_min")) c.p_min = json_get<double>(r, "run", "p_min");
    if (r.contains("decision_cut")) {
      c.decision_cut = json_get<double>(r, "run", "decision_cut");
    }
    if (r.contains("shots")) c.shots = json_get<int>(r, "run", "shots");
    if (r.contains("dichotomy_eps")) {
      c.dichotomy_eps = json_get<double>(r, "run", "dichotomy_eps");
    }
    if (r.contains("repeats")) c.repeats = json_get<int>(r, "run", "repeats");
    if (r.contains("bounds")) {
      auto b = json_get<std::vector<double>>(r, "run", "bounds");
      if (b.size() != 2 || !(b[0] < b[1])) {
        throw ConfigError("bounds must be [lo, hi] with lo < hi");
      }
      c.bounds = SpectrumInterval{b[0], b[1]};
    }
  }
  return c;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

std::optional<SpectrumReference> try_reference(const PauliHamiltonian& h) {
  if (h.num_qubits() > 10) return std::nullopt;
  return SpectrumReference(h);
}

// Half the judge resolution at the first bisection midpoint, in raw units.
double default_dichotomy_eps(const PauliHamiltonian& h, SpectrumInterval bounds,
                             const FilterConfig& f) {
  double t = 0.5 * (bounds.lo + bounds.hi);
  double scale = normalize_for_threshold(h, bounds, t, f.R).map.scale;
  return 0.5 * f.eps / scale;
}

}  // namespace

FilterConfig ExperimentConfig::filter_config() const {
  int n = require_hamiltonian().num_qubits();
  FilterConfig f = FilterConfig::defaults(n, R.value_or(5));
  if (Q) {
    f.Q = *Q;
    f.W = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(f.Q)) - 1e-9));
    f.C = FilterConfig::min_counting_qubits(std::max(f.Q, 1));
  }
  if (W) f.W = *W;
  if (C) f.C = *C;
  if (filter_eps) f.eps = *filter_eps;
  f.validate();
  return f;
}

const PauliHamiltonian& ExperimentConfig::require_hamiltonian() const {
  if (!hamiltonian) throw ConfigError("config has no [hamiltonian] section");
  return *hamiltonian;
}

ExperimentConfig parse_config(std::string_view text,
                              const std::filesystem::path& base_dir) {
  std::string_view t = trim(text);
  if (!t.empty() && t.front() == '{') return parse_json(text, base_dir);
  return parse_ini(text, base_dir);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path), path.parent_path());
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string csv_row(const ExperimentRecord& r) {
  std::string s = r.experiment;
  for (long long v : {static_cast<long long>(r.N), static_cast<long long>(r.R_or_K),
                      static_cast<long long>(r.Q), static_cast<long long>(r.W),
                      static_cast<long long>(r.M)}) {
    s += "," + std::to_string(v);
  }
  s += "," + std::to_string(r.seed);
  for (double v : {r.E_c, r.E_g, r.error, r.wall_time_ms}) {
    s += "," + format_number(v);
  }
  s += "," + std::to_string(r.shots);
  return s;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << kCsvHeader << "\n";
  for (const ExperimentRecord& r : records) out << csv_row(r) << "\n";
}

std::string record_json(const ExperimentRecord& r) {
  auto num = [](double v) -> Json {
    return std::isfinite(v) ? Json(v) : Json(format_number(v));
  };
  Json j = {{"experiment", r.experiment}, {"N", r.N},   {"R_or_K", r.R_or_K},
            {"Q", r.Q},                   {"W", r.W},   {"M", r.M},
            {"seed", r.seed},             {"E_c", num(r.E_c)},
            {"E_g", num(r.E_g)},          {"error", num(r.error)},
            {"wall_time_ms", num(r.wall_time_ms)},
            {"shots", r.shots}};
  return j.dump();
}

JudgeRun run_judge(const ExperimentConfig& config) {
  auto start = std::chrono::steady_clock::now();
  const PauliHamiltonian& h = config.require_hamiltonian();
  FilterConfig f = config.filter_config();
  DichotomyOptions d;
  d.bounds = config.bounds.value_or(crude_bounds(h));
  d.eps = config.dichotomy_eps.value_or(default_dichotomy_eps(h, *d.bounds, f));
  d.repeats = config.repeats;
  d.judge.seed = config.seed;
  d.judge.delta = config.delta;
  d.judge.p_min = config.p_min;
  d.judge.decision_cut = config.decision_cut;
  d.judge.shots = config.shots;

  JudgeRun run;
  run.trace = dichotomy_lowest(h, f, d);
  ExperimentRecord& r = run.record;
  r.experiment = "judge";
  r.N = h.num_qubits();
  r.R_or_K = f.R;
  r.Q = f.Q;
  r.W = f.W;
  r.seed = config.seed;
  r.shots = config.shots;
  r.E_c = run.trace.E_c;
  r.E_g = std::numeric_limits<double>::quiet_NaN();
  r.error = std::numeric_limits<double>::quiet_NaN();
  if (auto ref = try_reference(h)) {
    r.E_g = ref->min();
    r.error = std::abs(r.E_c - r.E_g);
    run.trace.eps_v = r.error;
  }
  r.wall_time_ms = elapsed_ms(start);
  return run;
}

SelectRun run_select(const ExperimentConfig& config) {
  auto start = std::chrono::steady_clock::now();
  const PauliHamiltonian& h = config.require_hamiltonian();
  std::optional<SpectrumReference> ref = try_reference(h);
  SelectorOptions o;
  o.eps = config.coin_eps;
  o.seed = config.seed;
  o.delta = config.delta;
  o.p_min = config.p_min;
  o.bounds = config.bounds;
  if (config.K) o.K = *config.K;
  if (config.K && *config.K < 1) {
    throw CapacityError("K = " + std::to_string(*config.K) +
                        " counting qubits hold no coins");
  }
  double target = 0.0;
  if (config.target) {
    target = *config.target;
  } else {
    JudgeRun j = run_judge(config);
    target = j.trace.E_c;
    if (!config.gap) o.gap = j.trace.resolution;
  }
  if (config.gap) o.gap = *config.gap;

  SelectRun run;
  run.result = quantum_selector(h, target, o, ref ? &*ref : nullptr);
  ExperimentRecord& r = run.record;
  r.experiment = "select";
  r.N = h.num_qubits();
  r.R_or_K = run.result.coin.K;
  r.M = run.result.coin.M;
  r.seed = config.seed;
  r.E_c = target;
  r.E_g = std::numeric_limits<double>::quiet_NaN();
  r.error = run.result.eps_s;
  if (ref) {
    r.E_g = ref->eigenvalues().front();
    for (double e : ref->eigenvalues()) {
      if (std::abs(e - target) < std::abs(r.E_g - target)) r.E_g = e;
    }
  }
  r.wall_time_ms = elapsed_ms(start);
  return run;
}

ExperimentRecord run_judge_cell(int N, int R, std::uint64_t seed, int shots) {
  ExperimentConfig c;
  c.hamiltonian = ising_chain(N);
  c.R = R;
  c.seed = seed;
  c.shots = shots;
  ExperimentRecord r = run_judge(c).record;
  r.experiment = "fig3";
  return r;
}

ExperimentRecord run_selector_cell(int N, int K, std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  PauliHamiltonian h = ising_chain(N);
  SpectrumReference ref(h);
  SelectorOptions o;
  o.K = K;
  o.seed = seed;
  ExperimentRecord r;
  r.experiment = "fig4";
  r.N = N;
  r.R_or_K = K;
  r.seed = seed;
  r.E_g = ref.min();
  r.E_c = ref.min();
  try {
    SelectorResult s = quantum_selector(h, ref.min(), o, &ref);
    r.M = s.coin.M;
    r.error = s.eps_s;
  } catch (const CapacityError&) {
    NormalizedHamiltonian hn =
        normalize_for_target(h, crude_bounds(h), ref.min());
    double delta = std::min(hn.map.scale * ref.gap_at(ref.min()),
                            kNormalizationMargin * kPi / 2.0);
    r.M = CoinConfig::derive(delta, o.eps, N).M;
    r.error = std::numeric_limits<double>::quiet_NaN();
  }
  r.wall_time_ms = elapsed_ms(start);
  return r;
}

std::vector<ExperimentRecord> run_sweep(const SweepSpec& spec) {
  struct Cell {
    int n, second;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (int n : spec.n_values) {
    for (int s : spec.second_values) {
      for (std::uint64_t seed : spec.seeds) cells.push_back({n, s, seed});
    }
  }
  std::vector<ExperimentRecord> out(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        out[i] = spec.kind == SweepKind::kJudge
                     ? run_judge_cell(cells[i].n, cells[i].second, cells[i].seed,
                                     spec.shots)
                     : run_selector_cell(cells[i].n, cells[i].second, cells[i].seed);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  int threads = std::max(1, std::min<int>(spec.threads, cells.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

namespace {

UnitEvolution make_evolution(const PauliHamiltonian& h, bool flip) {
  return flip ? UnitEvolution::from_matrix(unit_evolution(h, -1))
              : UnitEvolution(h);
}

// Random Pauli Hamiltonian with every term present.
PauliHamiltonian random_hamiltonian(int n, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PauliHamiltonian h(n);
  static const char kP[] = {'I', 'X', 'Y', 'Z'};
  for (int code = 1; code < (1 << (2 * n)); ++code) {
    std::string p(n, 'I');
    for (int q = 0; q < n; ++q) p[q] = kP[(code >> (2 * q)) & 3];
    h.add_term(p, scale * u(rng));
  }
  return h;
}

StateVector random_state(int n, std::uint64_t seed) {
  Matrix u = random_unitary(1 << n, seed);
  std::vector<Complex> a(u.rows());
  for (Eigen::Index i = 0; i < u.rows(); ++i) a[i] = u(i, 0);
  return StateVector(std::move(a));
}

double norm_deviation(const Circuit& c, std::uint64_t seed, int trials) {
  double dev = 0.0;
  for (int t = 0; t < trials; ++t) {
    StateVector s = random_state(c.num_qubits(), derive_seed(seed, t));
    c.apply(s);
    dev = std::max(dev, std::abs(s.norm_squared() - 1.0));
  }
  return dev;
}

// Places the spectrum of a random Hamiltonian inside [0, 2pi - 2pi/2^R).
PauliHamiltonian random_phase_hamiltonian(int n, int R, std::mt19937_64& rng) {
  PauliHamiltonian h = random_hamiltonian(n, rng, 1.0);
  SpectrumReference ref(h);
  double top = 2.0 * kPi - 4.0 * kPi / std::ldexp(1.0, R);
  double a = 0.9 * top / std::max(ref.max() - ref.min(), 1e-9);
  return h.scaled_and_shifted(a, 0.05 * top - a * ref.min());
}

}  // namespace

VerifyReport run_verify_suite(const VerifyOptions& options) {
  VerifyReport report;
  std::mt19937_64 rng(options.seed);
  const bool flip = options.flip_evolution_sign;

  // Unitarity of every circuit family on random states.
  {
    PauliHamiltonian h = random_phase_hamiltonian(1, 3, rng);
    UnitEvolution evo = make_evolution(h, flip);
    double dev = 0.0;
    dev = std::max(dev, norm_deviation(qft_circuit(3, {0, 1, 2},
                                                   FourierDirection::kInverse),
                                       options.seed, 10));
    RegisterLayout qpe_l{{std::string(kPhysical), 1}, {representation_group(0), 3}};
    dev = std::max(dev, norm_deviation(qpe_circuit(qpe_l, evo, representation_group(0)),
                                       options.seed + 1, 10));
    RegisterLayout dp = dirac_primary_layout(1, 3);
    dev = std::max(dev, norm_deviation(dirac_primary_circuit(dp, evo),
                                       options.seed + 2, 10));
    RegisterLayout df = dirac_frozen_layout(1, 3);
    dev = std::max(dev, norm_deviation(dirac_frozen_circuit(df, evo, 4),
                                       options.seed + 3, 10));
    RegisterLayout hp = heaviside_primary_layout(1, 2, 3);
    dev = std::max(dev, norm_deviation(heaviside_primary_circuit(hp, evo, 2),
                                       options.seed + 4, 10));
    RegisterLayout hf = heaviside_frozen_layout(1, 3, 3);
    dev = std::max(dev, norm_deviation(heaviside_frozen_circuit(hf, evo, 2),
                                       options.seed + 5, 10));
    report.add({"circuit norm preservation", dev, 1e-10, dev <= 1e-10});
  }

  // Peak amplitude and refined lower bounds of kappa.
  {
    const int R = 5;
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi - 2.0 * kPi / 32.0);
    double dev = 0.0;
    for (int i = 0; i < 1000; ++i) {
      double e = u(rng);
      double k = std::abs(kappa_analytic(e, nearest_binary(e / (2 * kPi), R), R));
      dev = std::max(dev, 2.0 / kPi - k);
    }
    report.add({"kappa peak >= 2/pi", std::max(dev, 0.0), 0.0, dev <= 0.0});
    double rdev = 0.0;
    for (int S : {2, 4, 8}) {
      for (int i = 0; i < 200; ++i) {
        Index x = rng() % 32;
        double off = (2.0 * u(rng) / (2.0 * kPi) - 1.0) / (S * 64.0);
        double e = 2.0 * kPi * (static_cast<double>(x) / 32.0 + off);
        double k = std::abs(kappa_analytic(e, x, R));
        rdev = std::max(rdev, 1.0 - kPi * kPi / (2.0 * S * S) - k);
      }
    }
    report.add({"kappa refined bound", std::max(rdev, 0.0), 0.0, rdev <= 0.0});
  }

  // Simulated QPE against kappa.
  {
    const int N = 2, R = 4;
    PauliHamiltonian h = random_phase_hamiltonian(N, R, rng);
    SpectrumReference ref(h);
    UnitEvolution evo = make_evolution(h, flip);
    RegisterLayout l{{std::string(kPhysical), N}, {representation_group(0), R}};
    Circuit qpe = qpe_circuit(l, evo, representation_group(0));
    double dev = 0.0;
    for (int j = 0; j < ref.dim(); ++j) {
      StateVector s = embed(ref.eigenstate(j), l, kPhysical);
      qpe.apply(s);
      for (Index x = 0; x < (Index{1} << R); ++x) {
        Complex amp{};
        for (int i = 0; i < ref.dim(); ++i) {
          amp += std::conj(ref.eigenvectors()(i, j)) *
                 s[(static_cast<Index>(i) << R) | x];
        }
        dev = std::max(dev, std::abs(amp - kappa_analytic(ref.eigenvalues()[j], x, R)));
      }
    }
    report.add({"QPE amplitudes match kappa", dev, 1e-10, dev <= 1e-10});
  }

  // Coin amplitudes, primary and frozen.
  {
    PauliHamiltonian h = random_hamiltonian(1, rng, 1.0);
    SpectrumReference ref(h);
    UnitEvolution evo = make_evolution(h, flip);
    const int M = 3, K = 3;
    RegisterLayout multi{{std::string(kPhysical), 1}, {std::string(kCoins), M}};
    RegisterLayout frozen = dirac_frozen_layout(1, K);
    Circuit fc = dirac_frozen_circuit(frozen, evo, M);
    std::vector<double> sim_multi, sim_frozen, pred;
    for (int j = 0; j < ref.dim(); ++j) {
      StateVector s = embed(ref.eigenstate(j), multi, kPhysical);
      multi_coin_toss(s, multi, evo);
      StateVector f = embed(ref.eigenstate(j), frozen, kPhysical);
      fc.apply(f);
      sim_multi.push_back(std::sqrt(pattern_probability(s, multi, kCoins, "000")));
      sim_frozen.push_back(std::sqrt(pattern_probability(f, frozen, kCoins, "0")));
      pred.push_back(std::abs(std::pow(std::cos(ref.eigenvalues()[j]), M)));
    }
    report.add(verify_run("coin-toss amplitude cos^M", sim_multi, pred, 1e-12));
    report.add(verify_run("frozen coin amplitude cos^M", sim_frozen, pred, 1e-12));
  }

  // Heaviside survival against the kappa sums.
  {
    const int N = 1, R = 3;
    PauliHamiltonian h = random_phase_hamiltonian(N, R, rng);
    SpectrumReference ref(h);
    UnitEvolution evo = make_evolution(h, flip);
    FilterConfig f;
    f.R = R;
    f.Q = 2;
    f.W = 1;
    f.C = 3;
    f.eps = 2.0 * kPi / 4.0;
    PredictedAmplitudes pp = predict_heaviside(ref, f, FilterVariant::kPrimary);
    PredictedAmplitudes pf = predict_heaviside(ref, f, FilterVariant::kFrozen);
    RegisterLayout lp = heaviside_primary_layout(N, f.Q, R);
    RegisterLayout lf = heaviside_frozen_layout(N, R, f.C);
    std::vector<double> sp, sf, ep, ef;
    for (int j = 0; j < ref.dim(); ++j) {
      StateVector a = embed(ref.eigenstate(j), lp, kPhysical);
      heaviside_primary(a, lp, evo, f);
      sp.push_back(pattern_probability(a, lp, kMark, "0"));
      ep.push_back(pp.alpha_sq_by_shift[0][j]);
      StateVector b = embed(ref.eigenstate(j), lf, kPhysical);
      heaviside_frozen(b, lf, evo, f);
      sf.push_back(pattern_probability(b, lf, kMark, "0"));
      ef.push_back(pf.alpha_sq_by_shift[0][j]);
    }
    report.add(verify_run("primary Heaviside survival", sp, ep, 1e-9));
    report.add(verify_run("frozen Heaviside survival", sf, ef, 1e-9));
  }

  // Reflections are involutions.
  {
    PauliHamiltonian h = random_phase_hamiltonian(1, 3, rng);
    UnitEvolution evo = make_evolution(h, flip);
    RegisterLayout l = heaviside_frozen_layout(1, 3, 3);
    MarkingOracle oracle{l, heaviside_frozen_circuit(l, evo, 2), l.qubit(kMark)};
    Matrix init = random_unitary(2, options.seed);
    double dev = 0.0;
    for (int t = 0; t < 5; ++t) {
      StateVector s = random_state(l.total(), derive_seed(options.seed, 100 + t));
      StateVector r = s;
      reflect_marked(r, oracle);
      reflect_marked(r, oracle);
      reflect_initial(r, l, init);
      reflect_initial(r, l, init);
      for (Index i = 0; i < s.dim(); ++i) dev = std::max(dev, std::abs(r[i] - s[i]));
    }
    report.add({"reflections are involutions", dev, 1e-10, dev <= 1e-10});
  }
  return report;
}

std::string report_text(const VerifyReport& report) {
  std::string out;
  for (const VerifyCheck& c : report.checks) {
    out += (c.pass ? "PASS  " : "FAIL  ") + c.name +
           "  max_deviation=" + format_number(c.max_deviation) +
           "  tolerance=" + format_number(c.tolerance) + "\n";
  }
  return out;
}

std::string report_json(const VerifyReport& report) {
  Json checks = Json::array();
  for (const VerifyCheck& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"max_deviation", std::isfinite(c.max_deviation)
                                            ? Json(c.max_deviation)
                                            : Json(format_number(c.max_deviation))},
                      {"tolerance", c.tolerance}});
  }
  return Json{{"pass", report.all_pass()}, {"checks", checks}}.dump(2);
}

}  // namespace qhes
