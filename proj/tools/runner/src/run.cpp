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

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "quenchdist/ed_oracle.hpp"
#include "quenchdist/io.hpp"
#include "quenchdist/parallel.hpp"
#include "quenchdist/runner.hpp"

#ifndef QUENCHDIST_VERSION
#define QUENCHDIST_VERSION "unknown"
#endif

namespace quenchdist::runner {
namespace {

using nlohmann::json;

QuenchEvolver evolver_for(const ExperimentConfig& c) {
  return QuenchEvolver({c.model_initial, c.model_final, momentum_grid(c.grid)});
}

int max_extent(const ExperimentConfig& c) {
  int e = 0;
  for (const auto& s : c.subsets) e = std::max(e, s.extent());
  return e;
}

json horizon_json(double t_star) {
  return is_finite_horizon(t_star) ? json(t_star) : json("inf");
}

std::string distance_csv(const ExperimentConfig& c, const DistanceRun& run) {
  std::ostringstream os;
  os << 't';
  for (const auto& s : c.subsets) os << ',' << s.label();
  os << '\n';
  for (std::size_t i = 0; i < run.t.size(); ++i) {
    os << format_double(run.t[i]);
    for (const auto& col : run.d) os << ',' << format_double(col[i]);
    os << '\n';
  }
  return os.str();
}

struct Manifest {
  std::filesystem::path path;
  json body;

  void write() const { write_atomic(path, body.dump(2) + "\n"); }
};

}  // namespace

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

DistanceRun compute_distances(const ExperimentConfig& c, bool allow_unconverged,
                              unsigned workers) {
  const QuenchEvolver evolver = evolver_for(c);
  const std::vector<double> times = c.time.samples();
  const PauliString tracked = horizon_operator(c.model_initial);

  // Horizon first: every sample needs only the tracked operator.
  std::vector<double> drift(times.size());
  parallel_for(times.size(), workers, [&](std::size_t i) {
    const CorrelatorTable table = build_table(evolver, times[i], c.R + c.delta_R);
    try {
      drift[i] = factorization_drift(tracked, table, c.R, c.delta_R, c.model_initial);
    } catch (const FactorizationError&) {
      drift[i] = std::numeric_limits<double>::infinity();
    }
  });
  DistanceRun run{};
  run.t_star = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < times.size(); ++i)
    if (drift[i] > c.threshold) {
      run.t_star = times[i];
      break;
    }

  std::size_t n_eval = times.size();
  std::size_t n_converged = times.size();
  while (n_converged > 0 && times[n_converged - 1] >= run.t_star) --n_converged;
  if (!allow_unconverged) n_eval = n_converged;
  run.clipped = times.size() - n_eval;
  run.unconverged = n_eval - n_converged;
  run.t.assign(times.begin(), times.begin() + static_cast<long>(n_eval));
  run.d.assign(c.subsets.size(), std::vector<double>(n_eval));

  const int r_max = max_extent(c) + c.R;
  parallel_for(n_eval, workers, [&](std::size_t i) {
    try {
      const CorrelatorTable table = build_table(evolver, times[i], r_max);
      SliceEvaluator ev(table, c.R, c.model_initial, {run.t_star, true});
      for (std::size_t s = 0; s < c.subsets.size(); ++s) {
        try {
          run.d[s][i] = ev.max_distance(c.subsets[s]);
        } catch (const FactorizationError&) {
          // Past the horizon the factorization may break down; emit nan.
          if (times[i] < run.t_star) throw;
          run.d[s][i] = std::numeric_limits<double>::quiet_NaN();
        }
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("t = " + format_double(times[i]) + ": " + e.what());
    }
  });
  return run;
}

DistanceSeries series_of(const DistanceRun& run, const ExperimentConfig& c, std::size_t subset) {
  DistanceSeries s{c.subsets.at(subset).label(), {}, {}, run.t_star};
  for (std::size_t i = 0; i < run.t.size(); ++i) {
    if (run.t[i] >= run.t_star) break;
    s.t.push_back(run.t[i]);
    s.d.push_back(std::clamp(run.d[subset][i], 0.0, 1.0));
  }
  return s;
}

OracleReport compare_oracle(const ExperimentConfig& c, unsigned workers) {
  const auto& grid = std::get<FiniteGridSpec>(c.grid);
  const int n = grid.n_sites;
  const QuenchEvolver evolver = evolver_for(c);
  const auto initial = ed::parity_ground_states(c.model_initial, n);
  const ed::SpectralPropagator prop(c.model_final, n);
  const ed::DenseState broken0 = ed::max_broken_state(initial, c.model_initial);
  const std::vector<double> times = c.time.samples();

  struct Slice {
    double even = 0.0;
    double factorized = 0.0;
    std::size_t count = 0;
    std::vector<double> pipeline_d, oracle_d;
  };
  std::vector<Slice> slices(times.size());
  parallel_for(times.size(), workers, [&](std::size_t i) {
    Slice& out = slices[i];
    const ed::DenseState even = prop.evolve(initial.even_state, times[i]);
    const ed::DenseState broken = prop.evolve(broken0, times[i]);
    const CorrelatorTable table = build_table(evolver, times[i], n - 1);
    SliceEvaluator ev(table, c.R, c.model_initial, {std::numeric_limits<double>::infinity(), true});
    for (const auto& s : c.subsets) {
      for (const auto& e : enumerate_basis(s)) {
        if (e.op.is_identity()) continue;
        if (e.parity == Parity::kEven) {
          out.even = std::max(out.even, std::abs(ev.even_expectation(e.op) -
                                                 ed::expectation(even, e.op)));
        } else {
          const PauliString op = e.op.without_identities();
          const PauliString w = op * op.translated(c.R);
          const double pipe = broken_translation_sign(c.model_initial, c.R) *
                              symmetric_expectation(w, table).real();
          const double oracle = broken_translation_sign(c.model_initial, c.R) *
                                ed::expectation(even, w).real();
          out.factorized = std::max(out.factorized, std::abs(pipe - oracle));
        }
        ++out.count;
      }
      // Small finite chains can break factorization; the distance is informational.
      try {
        out.pipeline_d.push_back(ev.max_distance(s));
      } catch (const FactorizationError&) {
        out.pipeline_d.push_back(std::numeric_limits<double>::quiet_NaN());
      }
      out.oracle_d.push_back(ed::oracle_distance(broken, even, s.sites()));
    }
  });

  OracleReport report;
  report.n_sites = n;
  for (std::size_t i = 0; i < times.size(); ++i) {
    report.max_even_deviation = std::max(report.max_even_deviation, slices[i].even);
    report.max_factorized_deviation =
        std::max(report.max_factorized_deviation, slices[i].factorized);
    report.comparisons += slices[i].count;
    for (std::size_t s = 0; s < c.subsets.size(); ++s)
      report.distances.push_back({{"t", times[i]},
                                  {"subset", c.subsets[s].label()},
                                  {"pipeline", std::isnan(slices[i].pipeline_d[s])
                                                   ? json(nullptr)
                                                   : json(slices[i].pipeline_d[s])},
                                  {"oracle", slices[i].oracle_d[s]}});
  }
  report.pass = report.max_even_deviation < kOracleTolerance &&
                report.max_factorized_deviation < kOracleTolerance;
  return report;
}

RunResult run(const ExperimentConfig& config, const json& echo, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  std::filesystem::path out_dir = config.output_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') out_dir = env;
  const unsigned workers = options.workers.value_or(config.workers);
  const bool allow = options.allow_unconverged || config.allow_unconverged;

  const auto findings = validate(config);
  if (has_errors(findings)) {
    std::string msg = "config invalid:";
    for (const auto& f : findings)
      if (f.severity == Finding::Severity::kError) msg += " " + f.field + ": " + f.message + ";";
    return {kExitValidation, msg, out_dir};
  }

  std::filesystem::create_directories(out_dir);
  Manifest manifest{out_dir / "manifest.json", json::object()};
  manifest.body["status"] = "failed";
  manifest.body["stage"] = "incomplete";
  manifest.body["config"] = echo;
  manifest.body["code_version"] = QUENCHDIST_VERSION;
  manifest.body["job"] = to_string(config.job);
  manifest.body["grid"] = momentum_grid(config.grid).describe();
  manifest.body["workers"] = workers;
  manifest.body["allow_unconverged"] = allow;
  manifest.write();

  int exit_code = kExitOk;
  std::string message = "ok";
  json jobs = json::array();
  json files = json::array();
  try {
    switch (config.job) {
      case JobKind::kDistance: {
        const DistanceRun r = compute_distances(config, allow, workers);
        write_atomic(out_dir / "distance.csv", distance_csv(config, r));
        files.push_back("distance.csv");
        manifest.body["t_star"] = {{horizon_operator(config.model_initial).label(),
                                    horizon_json(r.t_star)}};
        manifest.body["samples"] = r.t.size();
        manifest.body["clipped_samples"] = r.clipped;
        manifest.body["unconverged_samples"] = r.unconverged;
        if (r.unconverged > 0) manifest.body["unconverged_from"] = r.t_star;
        if (r.clipped > 0) {
          exit_code = kExitUnconverged;
          message = "samples at t >= " + format_double(r.t_star) +
                    " refused (validity horizon); rerun with --allow-unconverged to emit them";
        }
        jobs.push_back({{"name", "distance"}, {"status", r.clipped > 0 ? "clipped" : "complete"}});
        break;
      }
      case JobKind::kCorrelators: {
        const QuenchEvolver evolver = evolver_for(config);
        const auto times = config.time.samples();
        std::vector<std::string> chunks(times.size());
        parallel_for(times.size(), workers, [&](std::size_t i) {
          std::ostringstream os;
          write_correlator_csv_rows(os, build_table(evolver, times[i], config.correlator_r_max));
          chunks[i] = os.str();
        });
        std::ostringstream os;
        write_correlator_csv_header(os);
        for (const auto& chunk : chunks) os << chunk;
        write_atomic(out_dir / "correlators.csv", os.str());
        files.push_back("correlators.csv");
        jobs.push_back({{"name", "correlators"}, {"status", "complete"}});
        break;
      }
      case JobKind::kTauSweep: {
        json per_point = json::array();
        std::vector<SweepPoint> points;
        double worst_t_star = std::numeric_limits<double>::infinity();
        for (double value : config.sweep.values) {
          const ExperimentConfig point = with_sweep_value(config, value);
          SweepPoint sp{value, std::nullopt, {}};
          json entry = {{"param", value}};
          try {
            const DistanceRun r = compute_distances(point, false, workers);
            worst_t_star = std::min(worst_t_star, r.t_star);
            entry["t_star"] = horizon_json(r.t_star);
            json taus = json::object();
            for (std::size_t s = 0; s < point.subsets.size(); ++s) {
              try {
                const DecayFit fit = fit_decay(series_of(r, point, s));
                taus[point.subsets[s].label()] = fit.tau;
                if (s == 0) sp.fit = fit;
              } catch (const std::exception& e) {
                taus[point.subsets[s].label()] = e.what();
                if (s == 0) sp.error = e.what();
              }
            }
            entry["tau_per_subset"] = taus;
          } catch (const std::exception& e) {
            sp.error = e.what();
          }
          if (!sp.error.empty()) entry["error"] = sp.error;
          per_point.push_back(entry);
          points.push_back(std::move(sp));
        }
        std::ostringstream os;
        write_tau_csv(os, points);
        write_atomic(out_dir / "tau.csv", os.str());
        files.push_back("tau.csv");
        manifest.body["sweep"] = per_point;
        manifest.body["tau_subset"] = config.subsets.front().label();
        jobs.push_back({{"name", "tau_sweep"}, {"status", "complete"}});
        break;
      }
      case JobKind::kOracleCompare: {
        const OracleReport rep = compare_oracle(config, workers);
        const json body = {{"n_sites", rep.n_sites},
                           {"comparisons", rep.comparisons},
                           {"tolerance", kOracleTolerance},
                           {"max_even_deviation", rep.max_even_deviation},
                           {"max_factorized_deviation", rep.max_factorized_deviation},
                           {"pass", rep.pass},
                           {"distances", rep.distances}};
        write_atomic(out_dir / "oracle_report.json", body.dump(2) + "\n");
        files.push_back("oracle_report.json");
        jobs.push_back({{"name", "oracle_compare"}, {"status", rep.pass ? "pass" : "fail"}});
        if (!rep.pass) {
          exit_code = kExitRuntime;
          message = "oracle deviation above tolerance";
        }
        break;
      }
    }
  } catch (const std::exception& e) {
    manifest.body["error"] = e.what();
    manifest.body["jobs"] = {{{"name", to_string(config.job)}, {"status", "failed"}}};
    manifest.write();
    return {kExitRuntime, e.what(), out_dir};
  }

  json warnings = json::array();
  for (const auto& f : findings) warnings.push_back(f.field + ": " + f.message);
  manifest.body["warnings"] = warnings;
  manifest.body["jobs"] = jobs;
  manifest.body["files"] = files;
  manifest.body["status"] = exit_code == kExitOk ? "complete" : "partial";
  manifest.body.erase("stage");
  manifest.body["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  manifest.write();
  return {exit_code, message, out_dir};
}

}  // namespace quenchdist::runner
