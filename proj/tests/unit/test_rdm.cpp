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
#include <random>

#include "doctest.h"
#include "quenchdist/ed_oracle.hpp"
#include "quenchdist/rdm.hpp"

using namespace quenchdist;

namespace {

const cplx kI(0.0, 1.0);

CorrelatorTable table_at(const ModelSpec& m0, const ModelSpec& m1, double t, int r_max,
                         int points = 4096) {
  return build_table(QuenchEvolver({m0, m1, MomentumGrid::thermodynamic(points)}), t, r_max);
}

double xy_order(double gamma, double h) {
  return 2.0 * std::pow(gamma * gamma * (1.0 - h * h), 0.125) / std::sqrt(2.0 * (1.0 + gamma));
}

bool hermitian(const Eigen::MatrixXcd& m, double tol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() < tol;
}

}  // namespace

TEST_CASE("basis enumeration") {
  for (int l = 1; l <= 4; ++l) {
    std::vector<int> sites;
    for (int j = 0; j < l; ++j) sites.push_back(2 * j);
    const auto basis = enumerate_basis(SpinSubset(sites));
    CHECK(basis.size() == (std::size_t{1} << (2 * l)));
    std::size_t odd = 0;
    for (const auto& e : basis) odd += e.parity == Parity::kOdd;
    CHECK(odd == basis.size() / 2);
  }
  const auto b1 = enumerate_basis(SpinSubset({3}));
  CHECK(b1[0].op.is_identity());
  CHECK(b1[1].op.label() == "X3");
  CHECK(b1[2].op.label() == "Y3");
  CHECK(b1[3].op.label() == "Z3");
  const auto b2 = enumerate_basis(SpinSubset({0, 1}));
  CHECK(b2[1].op.label() == "X1");
  CHECK(b2[4].op.label() == "X0");
  CHECK(b2[6].op.label() == "X0 Y1");
  CHECK_THROWS(enumerate_basis(SpinSubset({0, 1, 2}), 2));
  CHECK_THROWS(SpinSubset({0, 1, 2, 3, 4}));
  CHECK_THROWS(SpinSubset({1, 1}));
  CHECK(SpinSubset({2, 0, 1}).label() == "S0_1_2");
}

TEST_CASE("pauli matrices") {
  const SpinSubset s({0, 1});
  const Eigen::MatrixXcd zx = pauli_matrix(PauliString::parse("Z0 X1"), s);
  CHECK(zx(0, 1) == cplx(1.0));
  CHECK(zx(2, 3) == cplx(-1.0));
  const Eigen::MatrixXcd y = pauli_matrix(PauliString::parse("Y1"), s);
  CHECK(y(0, 1) == -kI);
  CHECK(y(1, 0) == kI);
  CHECK_THROWS(pauli_matrix(PauliString::parse("X2"), s));
}

TEST_CASE("single-spin symmetric reduction") {
  const SpinSubset one({0});
  const auto polar = build_rho_sym(one, table_at(XYModel{0.5, 1e6}, XYModel{0.5, 1e6}, 0.0, 2, 256));
  CHECK(std::abs(polar(0, 0) - 1.0) < 1e-9);
  CHECK(std::abs(polar(1, 1)) < 1e-9);

  const auto t = table_at(XYModel{0.4, 0.3}, XYModel{0.4, 0.9}, 1.7, 2, 512);
  const auto rho = build_rho_sym(one, t);
  const double z = -t.g(0);
  CHECK(std::abs(rho(0, 0) - (1 + z) / 2) < 1e-14);
  CHECK(std::abs(rho(1, 1) - (1 - z) / 2) < 1e-14);
  CHECK(std::abs(rho(0, 1)) < 1e-14);
}

TEST_CASE("symmetric reduction vs ED partial trace (cluster, 10 sites)") {
  const int n = 10;
  const ModelSpec m = ClusterIsingModel{1, 3 * kPi / 8};
  const auto t = build_table(QuenchEvolver({m, m, MomentumGrid::finite(n)}), 0.0, n - 1);
  const auto gs = ed::sector_ground_state(m, n, ed::Sector::kEven);
  for (const auto& sites : std::vector<std::vector<int>>{{0}, {0, 1}, {0, 2}, {0, 1, 2}, {0, 1, 3, 4}}) {
    const auto rho = build_rho_sym(SpinSubset(sites), t);
    CHECK((rho - ed::reduced_density(gs.state, sites)).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("chi for a single XY spin") {
  const ModelSpec m = XYModel{0.5, 0.2};
  const auto t = table_at(m, m, 0.0, 101);
  const auto chi = build_chi_tilde(SpinSubset({0}), t, 100, m);
  const double mx = xy_order(0.5, 0.2);
  CHECK(std::abs(chi(0, 1) - mx / 2) < 1e-3);
  CHECK(std::abs(chi(0, 1) - chi(1, 0)) < 1e-15);
  CHECK(std::abs(chi(0, 0)) < 1e-15);
  CHECK(max_distance(SpinSubset({0}), t, 100, m) == doctest::Approx(chi(0, 1).real()));
  CHECK(std::abs(max_distance(SpinSubset({0}), t, 100, m) - 0.4830) < 1e-3);
}

TEST_CASE("symmetric phase has no broken part") {
  const ModelSpec m = XYModel{0.5, 1.5};
  const auto t = table_at(m, m, 0.0, 103);
  for (const auto& sites : std::vector<std::vector<int>>{{0}, {0, 1}, {0, 1, 2}}) {
    const SpinSubset s(sites);
    CHECK(build_chi_tilde(s, t, 100, m).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(max_distance(s, t, 100, m) < 1e-8);
  }
}

TEST_CASE("cluster pair below the cluster range sees only single-site y order") {
  const ModelSpec m = ClusterIsingModel{1, 3 * kPi / 8};
  const auto t = table_at(m, m, 0.0, 102);
  SliceEvaluator ev(t, 100, m);
  const SpinSubset s({0, 1});
  std::vector<PauliString> odd;
  for (const auto& e : enumerate_basis(s))
    if (e.parity == Parity::kOdd) odd.push_back(e.op);
  const auto v = ev.signed_broken(s, odd);
  for (std::size_t i = 0; i < odd.size(); ++i) {
    const std::string label = odd[i].without_identities().label();
    if (label == "Y0") CHECK(v[i] > 0.5);
    else if (label == "Y1") CHECK(v[i] < -0.5);
    else CHECK(std::abs(v[i]) < 1e-8);
  }
}

TEST_CASE("superposition projections") {
  const ModelSpec m = XYModel{0.5, 0.2};
  const auto t = table_at(m, XYModel{0.5, 0.8}, 0.8, 103);
  const SpinSubset s({0, 1, 2});
  SliceEvaluator ev(t, 100, m);
  const auto sym = ev.rho_sym(s);
  const double r2 = 1.0 / std::sqrt(2.0);
  CHECK((ev.rho({1.0, 0.0}, s) - sym).cwiseAbs().maxCoeff() == 0.0);
  CHECK((ev.rho({r2, r2 * kI}, s) - sym).cwiseAbs().maxCoeff() < 1e-15);
  const auto mx = ev.rho({r2, r2}, s);
  CHECK((mx - sym - ev.chi_tilde(s)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS(ev.rho({1.0, 1.0}, s));

  for (const auto& rho : {sym, mx}) {
    CHECK(std::abs(rho.trace() - 1.0) < 1e-9);
    CHECK(hermitian(rho, 1e-10));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    CHECK(es.eigenvalues().minCoeff() > -1e-8);
  }
  const auto chi = ev.chi_tilde(s);
  CHECK(std::abs(chi.trace()) < 1e-10);
  CHECK(hermitian(chi, 1e-10));
}

TEST_CASE("trace distance") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
  Eigen::MatrixXcd b = a;
  a(0, 0) = 1.0;
  b(1, 1) = 1.0;
  CHECK(trace_distance(a, a) == 0.0);
  CHECK(trace_distance(a, b) == doctest::Approx(1.0));
  CHECK_THROWS(trace_distance(a, Eigen::MatrixXcd::Zero(4, 4)));
}

TEST_CASE("D_S consistency, maximality and positivity") {
  const ModelSpec m0 = XYModel{0.5, 0.2};
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  for (double time : {0.0, 1.5}) {
    const auto t = table_at(m0, XYModel{0.5, 0.8}, time, 103);
    SliceEvaluator ev(t, 100, m0);
    for (const auto& sites : std::vector<std::vector<int>>{{0}, {0, 1}, {0, 2}, {0, 1, 2}}) {
      const SpinSubset s(sites);
      const double d = ev.max_distance(s);
      CHECK(d > 0.0);
      const double r2 = 1.0 / std::sqrt(2.0);
      CHECK(std::abs(d - trace_distance(ev.rho({r2, r2}, s), ev.rho_sym(s))) < 1e-10);
      for (int i = 0; i < 100; ++i) {
        cplx u(nd(rng), nd(rng));
        cplx v(nd(rng), nd(rng));
        const double norm = std::sqrt(std::norm(u) + std::norm(v));
        u /= norm;
        v /= norm;
        CHECK(trace_distance(ev.rho({u, v}, s), ev.rho_sym(s)) <= d + 1e-10);
      }
      // global sign flip of chi
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(-ev.chi_tilde(s), Eigen::EigenvaluesOnly);
      CHECK(std::abs(0.5 * es.eigenvalues().cwiseAbs().sum() - d) < 1e-14);
    }
  }
}

TEST_CASE("cluster degeneracy below the cluster range") {
  const ModelSpec m0 = ClusterIsingModel{1, 5 * kPi / 16};
  for (double time : {0.0, 1.0, 3.0}) {
    const auto t = table_at(m0, ClusterIsingModel{1, 7 * kPi / 16}, time, 103);
    SliceEvaluator ev(t, 100, m0);
    const double d1 = ev.max_distance(SpinSubset({0}));
    CHECK(std::abs(ev.max_distance(SpinSubset({0, 1})) - d1) < 1e-8);
    CHECK(std::abs(ev.max_distance(SpinSubset({0, 2})) - d1) < 1e-8);
  }
}

TEST_CASE("horizon guard") {
  const ModelSpec m = XYModel{0.5, 0.2};
  const auto t = table_at(m, XYModel{0.5, 0.8}, 2.0, 101, 256);
  CHECK_THROWS_AS(max_distance(SpinSubset({0}), t, 100, m, {1.5, false}), UnconvergedError);
  CHECK_NOTHROW(max_distance(SpinSubset({0}), t, 100, m, {1.5, true}));
  CHECK_NOTHROW(max_distance(SpinSubset({0}), t, 100, m, {2.5, false}));
  // the symmetric part never needs the horizon
  CHECK_NOTHROW(build_rho(SuperpositionCoeffs{}, SpinSubset({0}), t, 100, m, {1.0, false}));
}
