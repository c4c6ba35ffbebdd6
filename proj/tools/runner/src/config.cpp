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

#include <cmath>
#include <fstream>
#include <sstream>

#include "quenchdist/ed_oracle.hpp"
#include "quenchdist/runner.hpp"

namespace quenchdist::runner {
namespace {

using nlohmann::json;

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) throw ConfigError(path + key, "missing");
  return obj.at(key);
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
  return v.get<int>();
}

ModelSpec parse_model(const json& v, const std::string& field) {
  if (!v.is_object()) throw ConfigError(field, "expected an object");
  const json& fam = require(v, "family", field + ".");
  if (!fam.is_string()) throw ConfigError(field + ".family", "expected a string");
  const std::string family = fam.get<std::string>();
  if (family == "xy") {
    return XYModel{number(require(v, "gamma", field + "."), field + ".gamma"),
                   number(require(v, "h", field + "."), field + ".h")};
  }
  if (family == "cluster") {
    ClusterIsingModel m;
    m.cluster_size = integer(require(v, "N", field + "."), field + ".N");
    if (v.contains("phi") == v.contains("phi_over_pi"))
      throw ConfigError(field + ".phi", "give exactly one of phi, phi_over_pi");
    m.phi = v.contains("phi") ? number(v.at("phi"), field + ".phi")
                              : kPi * number(v.at("phi_over_pi"), field + ".phi_over_pi");
    return m;
  }
  throw ConfigError(field + ".family", "unknown family '" + family + "' (xy, cluster)");
}

GridSpec parse_grid(const json& v) {
  if (!v.is_object()) throw ConfigError("grid", "expected an object");
  const std::string mode = require(v, "mode", "grid.").get<std::string>();
  if (mode == "finite") return FiniteGridSpec{integer(require(v, "n_sites", "grid."), "grid.n_sites")};
  if (mode == "thermodynamic") {
    ThermodynamicGridSpec g;
    if (v.contains("n_points")) g.n_points = integer(v.at("n_points"), "grid.n_points");
    if (v.contains("rule")) {
      try {
        g.rule = parse_quadrature_rule(v.at("rule").get<std::string>());
      } catch (const std::exception& e) {
        throw ConfigError("grid.rule", e.what());
      }
    }
    return g;
  }
  throw ConfigError("grid.mode", "unknown mode '" + mode + "' (finite, thermodynamic)");
}

JobKind parse_job(const std::string& s) {
  if (s == "distance") return JobKind::kDistance;
  if (s == "correlators") return JobKind::kCorrelators;
  if (s == "tau_sweep") return JobKind::kTauSweep;
  if (s == "oracle_compare") return JobKind::kOracleCompare;
  throw ConfigError("job", "unknown job '" + s + "'");
}

void error(std::vector<Finding>& out, std::string field, std::string msg) {
  out.push_back({Finding::Severity::kError, std::move(field), std::move(msg)});
}
void warning(std::vector<Finding>& out, std::string field, std::string msg) {
  out.push_back({Finding::Severity::kWarning, std::move(field), std::move(msg)});
}

}  // namespace

std::string to_string(JobKind job) {
  switch (job) {
    case JobKind::kDistance: return "distance";
    case JobKind::kCorrelators: return "correlators";
    case JobKind::kTauSweep: return "tau_sweep";
    case JobKind::kOracleCompare: return "oracle_compare";
  }
  return "?";
}

std::vector<double> TimeGrid::samples() const {
  const auto steps = static_cast<long>(std::llround(t_max / dt));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (long i = 0; i <= steps; ++i) out.push_back(static_cast<double>(i) * dt);
  return out;
}

json load_config_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  try {
    return json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("parse error: ") + e.what());
  }
}

void apply_override(json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("--override", "expected key=value, got '" + assignment + "'");
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;
  }
  json* node = &config;
  std::istringstream parts(key);
  std::string part;
  std::vector<std::string> path;
  while (std::getline(parts, part, '.')) path.push_back(part);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    json& next = (*node)[path[i]];
    if (next.is_null()) next = json::object();
    if (!next.is_object()) throw ConfigError(key, "cannot descend into a non-object");
    node = &next;
  }
  (*node)[path.back()] = value;
}

ExperimentConfig parse_config(const json& v) {
  if (!v.is_object()) throw ConfigError("config", "top level must be an object");
  ExperimentConfig c;
  c.model_initial = parse_model(require(v, "model_initial", ""), "model_initial");
  c.model_final = parse_model(require(v, "model_final", ""), "model_final");
  if (v.contains("grid")) c.grid = parse_grid(v.at("grid"));

  const json& subsets = require(v, "subsets", "");
  if (!subsets.is_array()) throw ConfigError("subsets", "expected a list of site lists");
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const std::string field = "subsets[" + std::to_string(i) + "]";
    if (!subsets[i].is_array()) throw ConfigError(field, "expected a list of sites");
    std::vector<int> sites;
    for (const auto& s : subsets[i]) sites.push_back(integer(s, field));
    try {
      c.subsets.emplace_back(std::move(sites));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(field, e.what());
    }
  }

  if (v.contains("time")) {
    const json& t = v.at("time");
    if (t.contains("t_max")) c.time.t_max = number(t.at("t_max"), "time.t_max");
    if (t.contains("dt")) c.time.dt = number(t.at("dt"), "time.dt");
  }
  if (v.contains("R")) c.R = integer(v.at("R"), "R");
  if (v.contains("delta_R")) c.delta_R = integer(v.at("delta_R"), "delta_R");
  if (v.contains("threshold")) c.threshold = number(v.at("threshold"), "threshold");
  if (v.contains("job")) c.job = parse_job(v.at("job").get<std::string>());
  if (v.contains("output_dir")) c.output_dir = v.at("output_dir").get<std::string>();
  if (v.contains("workers")) {
    const int w = integer(v.at("workers"), "workers");
    if (w < 0) throw ConfigError("workers", "must be >= 0");
    c.workers = static_cast<unsigned>(w);
  }
  if (v.contains("allow_unconverged")) {
    if (!v.at("allow_unconverged").is_boolean())
      throw ConfigError("allow_unconverged", "expected a boolean");
    c.allow_unconverged = v.at("allow_unconverged").get<bool>();
  }
  if (v.contains("sweep")) {
    const json& s = v.at("sweep");
    c.sweep.parameter = require(s, "parameter", "sweep.").get<std::string>();
    for (const auto& x : require(s, "values", "sweep.")) c.sweep.values.push_back(number(x, "sweep.values"));
  }
  if (v.contains("correlators") && v.at("correlators").contains("r_max"))
    c.correlator_r_max = integer(v.at("correlators").at("r_max"), "correlators.r_max");
  return c;
}

json model_to_json(const ModelSpec& model) {
  if (const auto* xy = std::get_if<XYModel>(&model))
    return {{"family", "xy"}, {"gamma", xy->gamma}, {"h", xy->h}};
  const auto& c = std::get<ClusterIsingModel>(model);
  return {{"family", "cluster"}, {"N", c.cluster_size}, {"phi", c.phi}};
}

std::vector<Finding> validate(const ExperimentConfig& c) {
  std::vector<Finding> out;
  if (!(c.time.dt > 0.0)) error(out, "time.dt", "must be > 0");
  if (!(c.time.t_max > 0.0)) error(out, "time.t_max", "must be > 0");
  if (c.time.dt > 0.0 && c.time.t_max > 0.0 && c.time.dt > c.time.t_max)
    error(out, "time.dt", "exceeds time.t_max");
  if (c.delta_R <= 0) error(out, "delta_R", "must be > 0");
  if (!(c.threshold > 0.0)) error(out, "threshold", "must be > 0");

  for (const auto& [field, model] : {std::pair{"model_initial", c.model_initial},
                                     std::pair{"model_final", c.model_final}}) {
    try {
      validate(model);
    } catch (const std::invalid_argument& e) {
      error(out, field, e.what());
    }
  }
  if (c.model_initial.index() != c.model_final.index())
    warning(out, "model_final", "cross-family quench is experimental");
  try {
    if (!in_ordered_phase(c.model_initial))
      warning(out, "model_initial", "initial model is outside the ordered phase; D_S vanishes");
  } catch (const std::exception&) {
  }

  int max_extent = 0;
  if (c.subsets.empty()) error(out, "subsets", "at least one subset is required");
  for (std::size_t i = 0; i < c.subsets.size(); ++i) {
    const auto& s = c.subsets[i];
    max_extent = std::max(max_extent, s.extent());
    if (const auto* cl = std::get_if<ClusterIsingModel>(&c.model_initial))
      if (s.size() >= cl->cluster_size + 2)
        warning(out, "subsets[" + std::to_string(i) + "]",
                "subset size reaches the cluster range N+2; subsets are no longer degenerate");
  }
  if (c.R <= max_extent + 1) error(out, "R", "R too small for subset span");

  if (const auto* f = std::get_if<FiniteGridSpec>(&c.grid)) {
    if (f->n_sites < 2 || f->n_sites % 2 != 0)
      error(out, "grid.n_sites", "must be even and >= 2");
    else if (max_extent + c.R + c.delta_R > f->n_sites - 1 && c.job != JobKind::kOracleCompare &&
             c.job != JobKind::kCorrelators)
      error(out, "R", "R + delta_R + subset span must fit inside the finite chain");
  } else {
    const auto& g = std::get<ThermodynamicGridSpec>(c.grid);
    if (g.n_points < 2) error(out, "grid.n_points", "must be >= 2");
  }

  switch (c.job) {
    case JobKind::kOracleCompare: {
      const auto* f = std::get_if<FiniteGridSpec>(&c.grid);
      if (f == nullptr) {
        error(out, "grid.mode", "oracle comparison needs a finite grid");
      } else {
        if (f->n_sites > ed::kMaxSites)
          error(out, "grid.n_sites", "oracle is capped at " + std::to_string(ed::kMaxSites) + " sites");
        if (max_extent + c.R > f->n_sites - 1)
          error(out, "R", "R + subset span must fit inside the oracle chain");
      }
      break;
    }
    case JobKind::kTauSweep: {
      if (c.sweep.values.empty()) error(out, "sweep.values", "tau_sweep needs values");
      const bool xy = std::holds_alternative<XYModel>(c.model_final);
      const auto& p = c.sweep.parameter;
      if (!(xy ? (p == "h" || p == "gamma") : p == "phi"))
        error(out, "sweep.parameter", "'" + p + "' is not a parameter of the final model");
      break;
    }
    case JobKind::kCorrelators:
      if (c.correlator_r_max < 0) error(out, "correlators.r_max", "must be >= 0");
      break;
    case JobKind::kDistance:
      break;
  }
  return out;
}

bool has_errors(const std::vector<Finding>& findings) {
  for (const auto& f : findings)
    if (f.severity == Finding::Severity::kError) return true;
  return false;
}

PauliString horizon_operator(const ModelSpec& order) {
  return PauliString(
      {{0, std::holds_alternative<ClusterIsingModel>(order) ? Axis::kY : Axis::kX}});
}

ExperimentConfig with_sweep_value(const ExperimentConfig& config, double value) {
  ExperimentConfig out = config;
  const auto& p = config.sweep.parameter;
  if (auto* xy = std::get_if<XYModel>(&out.model_final)) {
    if (p == "h") xy->h = value;
    else if (p == "gamma") xy->gamma = value;
    else throw ConfigError("sweep.parameter", "unknown XY parameter '" + p + "'");
  } else {
    auto& cl = std::get<ClusterIsingModel>(out.model_final);
    if (p != "phi") throw ConfigError("sweep.parameter", "unknown cluster parameter '" + p + "'");
    cl.phi = value;
  }
  return out;
}

}  // namespace quenchdist::runner
