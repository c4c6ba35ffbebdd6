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

// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.
// `acceptance 2 5` runs a selection.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quenchdist/analysis.hpp"
#include "quenchdist/ed_oracle.hpp"
#include "quenchdist/fermion_corr.hpp"
#include "quenchdist/io.hpp"
#include "quenchdist/rdm.hpp"
#include "quenchdist/runner.hpp"
#include "quenchdist/wick.hpp"

using namespace quenchdist;
namespace qr = quenchdist::runner;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& why) {
  o.pass = false;
  o.detail += (o.detail.empty() ? "" : "; ") + why;
}

void note(Outcome& o, const std::string& what) {
  o.detail += (o.detail.empty() ? "" : "; ") + what;
}

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

std::string fix(double x, int digits = 4) {
  std::ostringstream os;
  os.precision(digits);
  os << std::fixed << x;
  return os.str();
}

MomentumGrid thermo(int m = 4096) { return MomentumGrid::thermodynamic(m); }

QuenchEvolver evolver(ModelSpec a, ModelSpec b, MomentumGrid grid) {
  return QuenchEvolver({std::move(a), std::move(b), std::move(grid)});
}

std::vector<SpinSubset> fig1_subsets() {
  return {SpinSubset({1}), SpinSubset({1, 2}), SpinSubset({1, 3}), SpinSubset({1, 2, 3})};
}

qr::ExperimentConfig distance_config(ModelSpec a, ModelSpec b, std::vector<SpinSubset> subsets) {
  qr::ExperimentConfig c;
  c.model_initial = std::move(a);
  c.model_final = std::move(b);
  c.grid = ThermodynamicGridSpec{4096, QuadratureRule::kMidpoint};
  c.subsets = std::move(subsets);
  c.time = {20.0, 0.05};
  c.R = 100;
  c.delta_R = 10;
  return c;
}

// Closed forms, written out independently of the library.
double xy_order_closed_form(double gamma, double h) {
  return 2.0 * std::pow(gamma * gamma * (1.0 - h * h), 1.0 / 8.0) /
         std::sqrt(2.0 * (1.0 + gamma));
}

double cluster_order_closed_form(int n, double phi) {
  return std::pow(1.0 - 1.0 / (std::tan(phi) * std::tan(phi)), (n + 2) / 8.0);
}

// ---------------------------------------------------------------------------

Outcome closed_form_order_parameter() {
  Outcome o;
  {
    const XYModel m{0.5, 0.2};
    const auto table = build_table(evolver(m, m, thermo()), 0.0, 101);
    const double got = broken_expectation(PauliString::parse("X0"), table, 100, m);
    const double want = xy_order_closed_form(0.5, 0.2);
    const double err = std::abs(got - want);
    note(o, "XY " + fix(got, 6) + " vs " + fix(want, 6));
    if (!(err < 1e-3)) fail(o, "XY deviation " + sci(err));
  }
  {
    const ClusterIsingModel m{1, 3 * kPi / 8};
    const auto table = build_table(evolver(m, m, thermo()), 0.0, 101);
    const double got = broken_expectation(PauliString::parse("Y0"), table, 100, m);
    const double want = cluster_order_closed_form(1, 3 * kPi / 8);
    const double err = std::abs(got - want);
    note(o, "cluster " + fix(got, 6) + " vs " + fix(want, 6));
    if (!(err < 1e-3)) fail(o, "cluster deviation " + sci(err));
  }
  return o;
}

// All strings with 1..3 non-identity factors on sites 0..3.
std::vector<PauliString> local_strings() {
  std::vector<PauliString> out;
  const Axis axes[] = {Axis::kX, Axis::kY, Axis::kZ};
  for (int mask = 1; mask < 16; ++mask) {
    std::vector<int> sites;
    for (int s = 0; s < 4; ++s)
      if (mask & (1 << s)) sites.push_back(s);
    if (sites.size() > 3) continue;
    const int combos = static_cast<int>(std::pow(3, sites.size()));
    for (int c = 0; c < combos; ++c) {
      std::vector<PauliFactor> f;
      int code = c;
      for (int s : sites) {
        f.push_back({s, axes[code % 3]});
        code /= 3;
      }
      out.emplace_back(f);
    }
  }
  return out;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto strings = local_strings();
  const std::vector<std::pair<XYModel, XYModel>> quenches = {{{0.5, 0.2}, {0.5, 0.8}},
                                                             {{0.5, 0.4}, {0.5, 1.2}}};
  const std::vector<double> times = {0.0, 0.25, 0.5, 1.0, 2.0};
  double worst_even = 0.0;
  double worst_w = 0.0;
  std::size_t count = 0;
  for (int n : {8, 10, 12}) {
    for (const auto& [m0, m1] : quenches) {
      const auto gs = ed::parity_ground_states(m0, n);
      const ed::SpectralPropagator prop(m1, n, {ed::Sector::kEven});
      const auto ev = evolver(m0, m1, MomentumGrid::finite(n));
      for (double t : times) {
        const ed::DenseState psi = prop.evolve(gs.even_state, t);
        const auto table = build_table(ev, t, n - 1);
        for (const auto& op : strings) {
          if (op.parity() == Parity::kEven) {
            worst_even = std::max(
                worst_even, std::abs(symmetric_expectation(op, table) - ed::expectation(psi, op)));
            ++count;
            continue;
          }
          if (op.max_site() > 2) continue;
          for (int R = op.max_site() + 1; R <= 4; ++R) {
            const PauliString w = op * op.translated(R);
            worst_w = std::max(
                worst_w, std::abs(symmetric_expectation(w, table) - ed::expectation(psi, w)));
            ++count;
          }
        }
      }
    }
  }
  note(o, std::to_string(count) + " comparisons, even " + sci(worst_even) + ", W " + sci(worst_w));
  if (!(worst_even < 1e-8)) fail(o, "even correlators deviate");
  if (!(worst_w < 1e-8)) fail(o, "W values deviate");
  return o;
}

Outcome static_identities() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> gamma(0.1, 1.0), h(0.0, 1.5), phi(0.05, kPi / 2 - 0.05);
  double worst_fh = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    const std::vector<ModelSpec> models = {XYModel{gamma(rng), h(rng)},
                                           ClusterIsingModel{1 + draw % 3, phi(rng)}};
    for (const auto& m : models) {
      const auto table = build_table(evolver(m, m, thermo()), 0.0, 100);
      for (int r = -100; r <= 100; ++r) {
        const cplx want = r == 0 ? 1.0 : 0.0;
        worst_fh = std::max({worst_fh, std::abs(table.f(r) - want), std::abs(-table.h(r) - want)});
      }
    }
  }
  double worst_g = 0.0;
  for (int n : {1, 2, 3}) {
    for (int draw = 0; draw < 5; ++draw) {
      const ClusterIsingModel m{n, phi(rng)};
      const auto table = build_table(evolver(m, m, thermo()), 0.0, 100);
      for (int r = -100; r <= 100; ++r) {
        const int shifted = r - 1;
        if (((shifted % (n + 2)) + (n + 2)) % (n + 2) == 0) continue;
        worst_g = std::max(worst_g, std::abs(table.g(r)));
      }
    }
  }
  note(o, "f,h " + sci(worst_fh) + ", g selection " + sci(worst_g));
  if (!(worst_fh < 1e-12)) fail(o, "f/h identity");
  if (!(worst_g < 1e-9)) fail(o, "g selection rule");
  return o;
}

Outcome dynamic_selection_rules() {
  Outcome o;
  const ClusterIsingModel m0{1, 5 * kPi / 16};
  const ClusterIsingModel m1{1, 7 * kPi / 16};
  const auto ev = evolver(m0, m1, thermo());
  double worst_g = 0.0;
  double worst_f = 0.0;
  double f0 = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const auto table = build_table(ev, 0.2 * i, 60);
    for (int r = -60; r <= 60; ++r) {
      if ((((r - 1) % 3) + 3) % 3 != 0) worst_g = std::max(worst_g, std::abs(table.g(r)));
      if (r % 3 != 0) worst_f = std::max(worst_f, std::abs(table.f(r)));
    }
    f0 = std::max(f0, std::abs(table.f(0) - 1.0));
  }
  note(o, "g off 3a+1 " + sci(worst_g) + ", f off 3Z " + sci(worst_f) + ", |f(0)-1| " + sci(f0));
  if (!(worst_g < 1e-8)) fail(o, "g selection rule");
  if (!(worst_f < 1e-8)) fail(o, "f selection rule");
  return o;
}

Outcome exponential_decay() {
  Outcome o;
  const std::vector<std::pair<XYModel, XYModel>> quenches = {{{0.5, 0.2}, {0.5, 0.8}},
                                                             {{0.5, 0.4}, {0.5, 1.2}}};
  for (const auto& [m0, m1] : quenches) {
    const auto c = distance_config(m0, m1, fig1_subsets());
    const std::string name = "h " + fix(m0.h, 1) + "->" + fix(m1.h, 1);
    try {
      const qr::DistanceRun run = qr::compute_distances(c, false, 0);
      std::vector<double> taus;
      double worst_rms = 0.0;
      for (std::size_t s = 0; s < c.subsets.size(); ++s) {
        const DecayFit fit = fit_decay(qr::series_of(run, c, s));
        taus.push_back(fit.tau);
        worst_rms = std::max(worst_rms, fit.rms_residual);
      }
      const double spread = relative_spread(taus);
      note(o, name + ": tau " + fix(taus.front(), 3) + ", spread " + sci(spread) + ", rms " +
                  fix(worst_rms, 4));
      if (!(worst_rms < 0.05)) fail(o, name + " rms residual " + fix(worst_rms, 4) + " >= 0.05");
      if (!(spread < 0.05)) fail(o, name + " tau spread " + fix(spread, 4) + " >= 0.05");
    } catch (const std::exception& e) {
      fail(o, name + ": " + e.what());
    }
  }
  return o;
}

Outcome cluster_degeneracy() {
  Outcome o;
  const std::vector<std::pair<double, double>> quenches = {{5 * kPi / 16, 7 * kPi / 16},
                                                           {3 * kPi / 8, kPi / 8}};
  for (const auto& [p0, p1] : quenches) {
    const auto c = distance_config(ClusterIsingModel{1, p0}, ClusterIsingModel{1, p1},
                                   {SpinSubset({1}), SpinSubset({1, 2}), SpinSubset({1, 3})});
    const std::string name = "phi " + fix(p0 / kPi, 4) + "pi->" + fix(p1 / kPi, 4) + "pi";
    try {
      const qr::DistanceRun run = qr::compute_distances(c, false, 0);
      double worst = 0.0;
      for (std::size_t i = 0; i < run.t.size(); ++i)
        for (std::size_t s = 1; s < run.d.size(); ++s)
          worst = std::max(worst, std::abs(run.d[s][i] - run.d[0][i]));
      note(o, name + ": " + std::to_string(run.t.size()) + " samples, max diff " + sci(worst));
      if (run.t.empty()) fail(o, name + " no converged samples");
      if (!(worst < 1e-8)) fail(o, name + " subsets differ by " + sci(worst));
    } catch (const std::exception& e) {
      fail(o, name + ": " + e.what());
    }
  }
  return o;
}

Outcome maximality() {
  Outcome o;
  const XYModel m0{0.5, 0.2};
  const XYModel m1{0.5, 0.8};
  const auto ev = evolver(m0, m1, thermo());
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  double worst = -1.0;
  // t = 0 is the unquenched ground state; the others follow the h 0.2 -> 0.8 quench.
  for (double t : {0.0, 1.0, 5.0, 10.0}) {
    const auto table = t == 0.0 ? build_table(evolver(m0, m0, thermo()), 0.0, 103)
                                : build_table(ev, t, 103);
    SliceEvaluator sl(table, 100, m0, {});
    for (const auto& subset : fig1_subsets()) {
      const double d = sl.max_distance(subset);
      const Eigen::MatrixXcd sym = sl.rho_sym(subset);
      for (int k = 0; k < 100; ++k) {
        cplx u{normal(rng), normal(rng)};
        cplx v{normal(rng), normal(rng)};
        const double norm = std::sqrt(std::norm(u) + std::norm(v));
        const double excess = trace_distance(sl.rho({u / norm, v / norm}, subset), sym) - d;
        worst = std::max(worst, excess);
      }
    }
  }
  note(o, "max(trace distance - D_S) = " + sci(worst));
  if (!(worst <= 1e-10)) fail(o, "a superposition exceeds D_S");
  return o;
}

std::vector<double> time_grid(double t_max, double dt) {
  std::vector<double> t;
  for (int i = 0; i * dt <= t_max + 1e-12; ++i) t.push_back(i * dt);
  return t;
}

Outcome convergence_horizon() {
  Outcome o;
  const XYModel m0{0.8, 0.2};
  const XYModel m1{0.8, 0.8};
  const auto ev = evolver(m0, m1, thermo());
  const auto times = time_grid(80.0, 0.1);
  std::vector<double> stars;
  std::string list;
  for (int R : {20, 40, 60, 80, 100}) {
    stars.push_back(validity_horizon(PauliString::parse("X0"), ev, times, R, 10));
    list += (list.empty() ? "" : ", ") + std::to_string(R) + ":" + fix(stars.back(), 1);
  }
  note(o, "t_star by R " + list);
  for (std::size_t i = 0; i < stars.size(); ++i) {
    if (!is_finite_horizon(stars[i])) fail(o, "t_star not finite within t <= 80");
    if (i > 0 && !(stars[i] > stars[i - 1])) fail(o, "t_star not strictly increasing");
  }
  return o;
}

struct Curve {
  double gamma, h0;
  std::vector<double> h1;
};

Outcome tau_trends() {
  Outcome o;
  const std::vector<Curve> curves = {{0.8, 0.2, {0.0, 0.1, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8}},
                                     {0.5, 0.5, {0.1, 0.2, 0.3, 0.4, 0.6, 0.7, 0.8, 0.9}},
                                     {0.2, 0.8, {0.4, 0.5, 0.6, 0.7, 0.9, 0.95}}};
  for (const auto& curve : curves) {
    const std::string name = "gamma " + fix(curve.gamma, 1) + " h0 " + fix(curve.h0, 1);
    std::vector<std::pair<double, double>> below, above;  // (h1, tau)
    std::string taus;
    bool ok = true;
    for (double h1 : curve.h1) {
      auto c = distance_config(XYModel{curve.gamma, curve.h0}, XYModel{curve.gamma, h1},
                               {SpinSubset({0})});
      c.time = {30.0, 0.1};
      try {
        const DecayFit fit = fit_decay(qr::series_of(qr::compute_distances(c, false, 0), c, 0));
        (h1 < curve.h0 ? below : above).emplace_back(h1, fit.tau);
        taus += (taus.empty() ? "" : " ") + fix(fit.tau, 2);
      } catch (const std::exception& e) {
        ok = false;
        fail(o, name + " h1=" + fix(h1, 2) + ": " + e.what());
      }
    }
    note(o, name + ": tau " + taus);
    // Moving toward h0 from either side, tau must grow.
    for (std::size_t i = 1; i < below.size(); ++i)
      if (!(below[i].second > below[i - 1].second)) {
        ok = false;
        fail(o, name + " tau not increasing toward h0 from below");
      }
    for (std::size_t i = 1; i < above.size(); ++i)
      if (!(above[i].second < above[i - 1].second)) {
        ok = false;
        fail(o, name + " tau not increasing toward h0 from above");
      }
    (void)ok;
  }
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism() {
  Outcome o;
  const auto root = std::filesystem::temp_directory_path() / "quenchdist_acceptance_determinism";
  std::filesystem::remove_all(root);
  const nlohmann::json base = nlohmann::json::parse(R"({
    "model_initial": {"family": "xy", "gamma": 0.5, "h": 0.2},
    "model_final": {"family": "xy", "gamma": 0.5, "h": 0.8},
    "grid": {"mode": "thermodynamic", "n_points": 1024, "rule": "midpoint"},
    "subsets": [[0], [0, 1], [0, 2], [0, 1, 2]],
    "time": {"t_max": 4.0, "dt": 0.1},
    "R": 40, "delta_R": 10
  })");
  const std::vector<std::pair<std::string, std::string>> jobs = {
      {"distance", "distance.csv"}, {"correlators", "correlators.csv"}, {"tau_sweep", "tau.csv"}};
  for (const auto& [job, file] : jobs) {
    std::vector<std::string> outputs;
    int k = 0;
    for (unsigned workers : {1u, 3u, 1u, 8u}) {
      nlohmann::json j = base;
      j["job"] = job;
      j["output_dir"] = (root / (job + std::to_string(k++))).string();
      if (job == "tau_sweep") j["sweep"] = {{"parameter", "h"}, {"values", {0.6, 0.8}}};
      const auto r = qr::run(qr::parse_config(j), j, {workers, false});
      if (r.exit_code != qr::kExitOk) fail(o, job + " exit " + std::to_string(r.exit_code));
      outputs.push_back(slurp(std::filesystem::path(j["output_dir"].get<std::string>()) / file));
    }
    const bool same = std::all_of(outputs.begin(), outputs.end(),
                                  [&](const std::string& s) { return s == outputs.front(); });
    note(o, file + (same ? " identical" : " differs"));
    if (!same || outputs.front().empty()) fail(o, file + " not byte-identical");
  }
  std::filesystem::remove_all(root);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> selected;
  app.add_option("criteria", selected, "criterion numbers to run (default all)")
      ->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::map<int, std::pair<std::string, std::function<Outcome()>>> criteria = {
      {1, {"closed-form order parameter", closed_form_order_parameter}},
      {2, {"oracle equivalence", oracle_equivalence}},
      {3, {"static identities", static_identities}},
      {4, {"dynamic selection rules", dynamic_selection_rules}},
      {5, {"exponential decay and common tau", exponential_decay}},
      {6, {"cluster subset degeneracy", cluster_degeneracy}},
      {7, {"maximality of D_S", maximality}},
      {8, {"convergence horizon", convergence_horizon}},
      {9, {"tau trends", tau_trends}},
      {10, {"determinism", determinism}},
  };
  const std::set<int> want(selected.begin(), selected.end());
  int failures = 0;
  for (const auto& [id, entry] : criteria) {
    if (!want.empty() && !want.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = entry.second();
    } catch (const std::exception& e) {
      fail(out, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failures;
    std::cout << "criterion " << id << " " << (out.pass ? "PASS" : "FAIL") << " [" << entry.first
              << "] " << out.detail << " (" << fix(secs, 1) << " s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
