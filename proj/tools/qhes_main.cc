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

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qhes/errors.h"
#include "qhes/experiment.h"

namespace {

enum ExitCode { kOk = 0, kInvalid = 1, kSuiteFailure = 2, kResource = 3 };

struct CommonFlags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<int> shots;
  bool json = false;
};

int resolve_threads(const std::optional<int>& flag) {
  if (flag) return std::max(1, *flag);
  if (const char* env = std::getenv("QHES_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      throw qhes::ConfigError(std::string("QHES_THREADS is not an integer: ") + env);
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Accepts "3..7", "2,3" or a mix such as "2,4..6". Empty text is an empty list.
template <typename T>
std::vector<T> parse_range(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(static_cast<T>(std::stoll(item)));
      } else {
        long long lo = std::stoll(item.substr(0, dots));
        long long hi = std::stoll(item.substr(dots + 2));
        for (long long v = lo; v <= hi; ++v) out.push_back(static_cast<T>(v));
      }
    } catch (const std::exception&) {
      throw qhes::ConfigError("bad range element '" + item + "'");
    }
  }
  return out;
}

qhes::ExperimentConfig load(const CommonFlags& f) {
  if (f.config.empty()) throw qhes::ConfigError("--config is required");
  qhes::ExperimentConfig c = qhes::load_config(f.config);
  if (f.seed) c.seed = *f.seed;
  if (f.shots) c.shots = *f.shots;
  return c;
}

// Writes to --out when given, otherwise to stdout.
void emit(const CommonFlags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(f.out, std::ios::binary);
  if (!file) throw qhes::ConfigError("cannot write '" + f.out + "'");
  file << text;
  if (!file) throw qhes::ConfigError("failed writing '" + f.out + "'");
}

std::string csv_text(const std::vector<qhes::ExperimentRecord>& records) {
  std::ostringstream ss;
  qhes::write_csv(ss, records);
  return ss.str();
}

int cmd_judge(const CommonFlags& f) {
  qhes::JudgeRun run = qhes::run_judge(load(f));
  if (f.json) {
    nlohmann::json brackets = nlohmann::json::array();
    for (const auto& b : run.trace.brackets) brackets.push_back({b.lo, b.hi});
    nlohmann::json j = {
        {"record", nlohmann::json::parse(qhes::record_json(run.record))},
        {"iterations", run.trace.iterations},
        {"resolution", run.trace.resolution},
        {"brackets", brackets}};
    emit(f, j.dump(2) + "\n");
  } else {
    emit(f, csv_text({run.record}));
  }
  return kOk;
}

int cmd_select(const CommonFlags& f) {
  qhes::SelectRun run = qhes::run_select(load(f));
  const qhes::StateVector& s = run.result.physical_state;
  if (f.json) {
    nlohmann::json amps = nlohmann::json::array();
    for (qhes::Index i = 0; i < s.dim(); ++i) {
      amps.push_back({s[i].real(), s[i].imag()});
    }
    nlohmann::json j = {
        {"record", nlohmann::json::parse(qhes::record_json(run.record))},
        {"postselection_probability", run.result.postselection_probability},
        {"oracle_calls", run.result.oracle_calls},
        {"amplitudes", amps}};
    emit(f, j.dump(2) + "\n");
  } else {
    std::string text = csv_text({run.record});
    text += "\nindex,real,imag\n";
    for (qhes::Index i = 0; i < s.dim(); ++i) {
      text += std::to_string(i) + "," + qhes::format_number(s[i].real()) + "," +
              qhes::format_number(s[i].imag()) + "\n";
    }
    emit(f, text);
  }
  return kOk;
}

int cmd_sweep(const CommonFlags& f, const std::string& kind,
              const std::string& n_range, const std::string& values,
              const std::string& seeds) {
  qhes::SweepSpec spec;
  if (kind == "fig3") {
    spec.kind = qhes::SweepKind::kJudge;
  } else if (kind == "fig4") {
    spec.kind = qhes::SweepKind::kSelector;
  } else {
    throw qhes::ConfigError("sweep kind must be fig3 or fig4, got '" + kind + "'");
  }
  spec.n_values = parse_range<int>(n_range);
  spec.second_values = parse_range<int>(values.empty() && kind == "fig3"
                                            ? std::string("3..7")
                                            : values.empty() ? std::string("2..7")
                                                             : values);
  spec.seeds = f.seed ? std::vector<std::uint64_t>{*f.seed}
                      : parse_range<std::uint64_t>(seeds);
  spec.threads = resolve_threads(f.threads);
  spec.shots = f.shots.value_or(0);
  if (!f.out.empty()) emit(f, "");  // fail on unwritable paths before running
  std::vector<qhes::ExperimentRecord> records = qhes::run_sweep(spec);
  if (f.json) {
    std::string text = "[\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
      text += "  " + qhes::record_json(records[i]) +
              (i + 1 < records.size() ? ",\n" : "\n");
    }
    emit(f, text + "]\n");
  } else {
    emit(f, csv_text(records));
  }
  return kOk;
}

int cmd_verify(const CommonFlags& f, bool flip) {
  qhes::VerifyOptions o;
  if (f.seed) o.seed = *f.seed;
  o.flip_evolution_sign = flip;
  qhes::VerifyReport report = qhes::run_verify_suite(o);
  emit(f, f.json ? qhes::report_json(report) + "\n" : qhes::report_text(report));
  return report.all_pass() ? kOk : kSuiteFailure;
}

void add_common(CLI::App* app, CommonFlags& f, bool needs_config) {
  if (needs_config) {
    app->add_option("--config", f.config, "Experiment config (INI or JSON)")
        ->required()
        ->check(CLI::ExistingFile);
  }
  app->add_option("--out", f.out, "Output path (default stdout)");
  app->add_option("--seed", f.seed, "Base RNG seed");
  app->add_option("--threads", f.threads, "Worker threads (env QHES_THREADS)");
  app->add_option("--shots", f.shots, "Readout shots, 0 = exact");
  app->add_flag("--json", f.json, "Machine-readable output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Statevector eigensolver experiments"};
  app.require_subcommand(1);

  CommonFlags judge_f, select_f, sweep_f, verify_f;
  CLI::App* judge = app.add_subcommand("judge", "Lowest eigenvalue by dichotomy");
  add_common(judge, judge_f, true);
  CLI::App* select = app.add_subcommand("select", "Eigenstate selection");
  add_common(select, select_f, true);

  CLI::App* sweep = app.add_subcommand("sweep", "Grid sweep over the Ising chain");
  add_common(sweep, sweep_f, false);
  std::string kind, n_range = "2,3", values, seeds = "1";
  sweep->add_option("kind", kind, "fig3 (N x R) or fig4 (N x K)")->required();
  sweep->add_option("--n", n_range, "Qubit counts, e.g. 2,3 or 2..4");
  sweep->add_option("--values", values,
                    "R values (fig3, default 3..7) or K values (fig4, default 2..7)");
  sweep->add_option("--seeds", seeds, "Seed list when --seed is absent");

  CLI::App* verify = app.add_subcommand("verify", "Invariant suite");
  add_common(verify, verify_f, false);
  bool flip = false;
  verify->add_flag("--inject-sign-flip", flip)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*judge) return cmd_judge(judge_f);
    if (*select) return cmd_select(select_f);
    if (*sweep) return cmd_sweep(sweep_f, kind, n_range, values, seeds);
    return cmd_verify(verify_f, flip);
  } catch (const qhes::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const qhes::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInvalid;
  } catch (const qhes::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
}
