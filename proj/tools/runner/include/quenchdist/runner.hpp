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

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "quenchdist/analysis.hpp"
#include "quenchdist/model.hpp"
#include "quenchdist/rdm.hpp"

namespace quenchdist::runner {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;
inline constexpr int kExitUnconverged = 3;

/// Overrides ExperimentConfig::output_dir when set.
inline constexpr const char* kOutputDirEnv = "QUENCHDIST_OUTPUT_DIR";

enum class JobKind { kDistance, kCorrelators, kTauSweep, kOracleCompare };

std::string to_string(JobKind job);

struct TimeGrid {
  double t_max = 20.0;
  double dt = 0.05;

  /// i * dt for i = 0 .. round(t_max / dt).
  std::vector<double> samples() const;
};

struct SweepSpec {
  std::string parameter;  // h, gamma or phi of the final model
  std::vector<double> values;
};

struct ExperimentConfig {
  ModelSpec model_initial = XYModel{};
  ModelSpec model_final = XYModel{};
  GridSpec grid = ThermodynamicGridSpec{};
  std::vector<SpinSubset> subsets;
  TimeGrid time;
  int R = kDefaultR;
  int delta_R = kDefaultDeltaR;
  double threshold = kDefaultHorizonThreshold;
  JobKind job = JobKind::kDistance;
  std::string output_dir = "out";
  unsigned workers = 1;
  bool allow_unconverged = false;
  SweepSpec sweep;
  int correlator_r_max = 20;
};

/// Malformed config; `field` is the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

nlohmann::json load_config_json(const std::filesystem::path& path);

/// "a.b=value": value is parsed as JSON when possible, else taken as a string.
void apply_override(nlohmann::json& config, const std::string& assignment);

ExperimentConfig parse_config(const nlohmann::json& config);

nlohmann::json model_to_json(const ModelSpec& model);

struct Finding {
  enum class Severity { kError, kWarning };
  Severity severity;
  std::string field;
  std::string message;
};

/// Every problem that blocks a run is an error; the rest are warnings.
std::vector<Finding> validate(const ExperimentConfig& config);
bool has_errors(const std::vector<Finding>& findings);

/// Odd operator whose factorization drift defines t_star: X on site 0 for
/// XY order, Y on site 0 for cluster order.
PauliString horizon_operator(const ModelSpec& order);

struct DistanceRun {
  std::vector<double> t;                // evaluated samples
  std::vector<std::vector<double>> d;   // [subset][sample]
  double t_star;                        // first sample past the horizon
  std::size_t clipped;                  // samples refused at t >= t_star
  std::size_t unconverged;              // samples emitted at t >= t_star
};

/// D_S(t) for every subset. Samples at t >= t_star are skipped unless
/// `allow_unconverged`. Results do not depend on `workers`.
DistanceRun compute_distances(const ExperimentConfig& config, bool allow_unconverged,
                              unsigned workers);

/// D_S series of one subset, clipped at the horizon, for the fitters.
DistanceSeries series_of(const DistanceRun& run, const ExperimentConfig& config,
                         std::size_t subset);

/// Copy of `config` with the final model's sweep parameter set to `value`.
ExperimentConfig with_sweep_value(const ExperimentConfig& config, double value);

struct OracleReport {
  int n_sites = 0;
  std::size_t comparisons = 0;
  double max_even_deviation = 0.0;
  double max_factorized_deviation = 0.0;
  nlohmann::json distances = nlohmann::json::array();  // reported, not asserted
  bool pass = false;
};

inline constexpr double kOracleTolerance = 1e-8;

/// Pipeline vs exact diagonalization on the finite grid of `config`: every
/// parity-even string on each subset and the factorized product of every
/// odd string at separation R, at every time sample.
OracleReport compare_oracle(const ExperimentConfig& config, unsigned workers);

struct RunOptions {
  std::optional<unsigned> workers;
  bool allow_unconverged = false;
};

struct RunResult {
  int exit_code;
  std::string message;
  std::filesystem::path output_dir;
};

/// Executes the configured job and writes its files plus manifest.json.
/// `echo` is the config as loaded, recorded verbatim in the manifest.
RunResult run(const ExperimentConfig& config, const nlohmann::json& echo,
              const RunOptions& options = {});

/// Writes `content` to `path` through a temporary file and rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace quenchdist::runner
