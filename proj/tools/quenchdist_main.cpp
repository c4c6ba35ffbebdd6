// Copyright 2026 The quenchdist Authors
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

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quenchdist/runner.hpp"

namespace {

namespace qr = quenchdist::runner;

struct Loaded {
  nlohmann::json echo;
  qr::ExperimentConfig config;
};

Loaded load(const std::string& path, const std::vector<std::string>& overrides) {
  nlohmann::json j = qr::load_config_json(path);
  for (const auto& o : overrides) qr::apply_override(j, o);
  return {j, qr::parse_config(j)};
}

void print_findings(const std::vector<qr::Finding>& findings) {
  for (const auto& f : findings) {
    const char* tag = f.severity == qr::Finding::Severity::kError ? "error" : "warning";
    std::cerr << tag << ": " << f.field << ": " << f.message << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local distinguishability of symmetry-broken states after a quench"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  unsigned workers = 0;
  bool allow_unconverged = false;

  auto* run_cmd = app.add_subcommand("run", "Run the job described by a config file");
  run_cmd->add_option("config", config_path, "JSON config")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--override,-o", overrides, "dotted.key=value, value parsed as JSON");
  auto* workers_opt = run_cmd->add_option("--workers,-j", workers, "0 = one per hardware thread");
  run_cmd->add_flag("--allow-unconverged", allow_unconverged,
                    "emit samples past the validity horizon (flagged in the manifest)");

  auto* validate_cmd = app.add_subcommand("validate", "Check a config without running it");
  validate_cmd->add_option("config", config_path, "JSON config")->required()->check(CLI::ExistingFile);
  validate_cmd->add_option("--override,-o", overrides, "dotted.key=value");

  auto* oracle_cmd = app.add_subcommand("compare-oracle", "Compare the pipeline against exact diagonalization");
  oracle_cmd->add_option("config", config_path, "JSON config")->required()->check(CLI::ExistingFile);
  oracle_cmd->add_option("--override,-o", overrides, "dotted.key=value");
  auto* oracle_workers = oracle_cmd->add_option("--workers,-j", workers, "0 = one per hardware thread");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qr::kExitValidation;
  }

  Loaded loaded;
  try {
    loaded = load(config_path, overrides);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qr::kExitValidation;
  }

  const auto findings = qr::validate(loaded.config);
  print_findings(findings);
  if (*validate_cmd) return qr::has_errors(findings) ? qr::kExitValidation : qr::kExitOk;
  if (qr::has_errors(findings)) return qr::kExitValidation;

  qr::RunOptions options;
  options.allow_unconverged = allow_unconverged;
  if (*oracle_cmd) {
    loaded.config.job = qr::JobKind::kOracleCompare;
    loaded.echo["job"] = "oracle_compare";
    if (oracle_workers->count() > 0) options.workers = workers;
  } else if (workers_opt->count() > 0) {
    options.workers = workers;
  }

  try {
    const qr::RunResult result = qr::run(loaded.config, loaded.echo, options);
    if (result.exit_code == qr::kExitOk)
      std::cout << "wrote " << result.output_dir.string() << '\n';
    else
      std::cerr << result.message << '\n';
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qr::kExitRuntime;
  }
}
