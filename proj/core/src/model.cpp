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

#include "quenchdist/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace quenchdist {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute derivative at the converged node.
    double p0 = 1.0;
    double p1 = z;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

}  // namespace

void validate(const ModelSpec& model) {
  std::visit(Overloaded{
                 [](const XYModel& m) {
                   if (!(m.gamma > 0.0 && m.gamma <= 1.0))
                     throw std::invalid_argument("XY gamma must lie in (0, 1]");
                   if (!(m.h >= 0.0) || !std::isfinite(m.h))
                     throw std::invalid_argument("XY field h must be finite and >= 0");
                 },
                 [](const ClusterIsingModel& m) {
                   if (m.cluster_size < 1)
                     throw std::invalid_argument("cluster size N must be >= 1");
                   if (!(m.phi >= 0.0 && m.phi <= kPi / 2 + 1e-15))
                     throw std::invalid_argument("cluster angle phi must lie in [0, pi/2]");
                 }},
             model);
}

bool in_ordered_phase(const ModelSpec& model) {
  return std::visit(Overloaded{[](const XYModel& m) { return m.h <= 1.0; },
                               [](const ClusterIsingModel& m) {
                                 return m.phi >= kPi / 4 - 1e-15;
                               }},
                    model);
}

std::string describe(const ModelSpec& model) {
  std::ostringstream os;
  os.precision(17);
  std::visit(Overloaded{[&](const XYModel& m) {
                          os << "XY(gamma=" << m.gamma << ", h=" << m.h << ")";
                        },
                        [&](const ClusterIsingModel& m) {
                          os << "ClusterIsing(N=" << m.cluster_size << ", phi=" << m.phi
                             << ")";
                        }},
             model);
  return os.str();
}

int broken_translation_sign(const ModelSpec& model, int shift) {
  if (std::holds_alternative<ClusterIsingModel>(model)) return (shift % 2 == 0) ? 1 : -1;
  return 1;
}

Dispersion dispersion(const ModelSpec& model, double k) {
  return std::visit(
      Overloaded{[k](const XYModel& m) {
                   return Dispersion{std::cos(k) - m.h, m.gamma * std::sin(k)};
                 },
                 [k](const ClusterIsingModel& m) {
                   const double c = std::cos(m.phi);
                   const double s = std::sin(m.phi);
                   const double kn = (m.cluster_size + 1) * k;
                   // The +sin(k) sin(phi) sign is the one produced by the
                   // +sin(phi) Y_j Y_{j+1} coupling under Jordan-Wigner.
                   return Dispersion{std::cos(kn) * c - std::cos(k) * s,
                                     std::sin(kn) * c + std::sin(k) * s};
                 }},
      model);
}

double ground_energy(double epsilon, double delta) {
  return -2.0 * std::hypot(epsilon, delta);
}

ModeAmplitude bogoliubov_amplitudes(double epsilon, double delta) {
  const double e = std::hypot(epsilon, delta);
  if (epsilon >= 0.0) {
    // eps - E = -delta^2 / (eps + E) avoids cancellation for small delta;
    // delta = 0 lands on the empty-mode limit (0, 1).
    if (e == 0.0) return {cplx(0.0, 0.0), cplx(1.0, 0.0)};
    const double q = delta / (epsilon + e);
    const double norm = std::sqrt(1.0 + q * q);
    const double sign = delta < 0.0 ? -1.0 : 1.0;
    return {cplx(0.0, -std::abs(q) / norm), cplx(sign / norm, 0.0)};
  }
  const double a = epsilon - e;  // strictly negative here
  const double norm = std::hypot(delta, a);
  return {cplx(0.0, a / norm), cplx(delta / norm, 0.0)};
}

double analytic_order_parameter(const ModelSpec& model) {
  validate(model);
  if (!in_ordered_phase(model))
    throw std::domain_error("order parameter undefined outside the ordered phase: " +
                            describe(model));
  return std::visit(
      Overloaded{[](const XYModel& m) {
                   const double base = std::max(0.0, m.gamma * m.gamma * (1.0 - m.h * m.h));
                   return 2.0 * std::pow(base, 0.125) / std::sqrt(2.0 * (1.0 + m.gamma));
                 },
                 [](const ClusterIsingModel& m) {
                   const double t = std::tan(m.phi);
                   const double base = std::max(0.0, 1.0 - 1.0 / (t * t));
                   return std::pow(base, (m.cluster_size + 2) / 8.0);
                 }},
      model);
}

QuadratureRule parse_quadrature_rule(const std::string& name) {
  if (name == "midpoint") return QuadratureRule::kMidpoint;
  if (name == "gauss_legendre" || name == "gauss-legendre") return QuadratureRule::kGaussLegendre;
  throw std::invalid_argument("unknown quadrature rule '" + name + "'");
}

std::string to_string(QuadratureRule rule) {
  return rule == QuadratureRule::kMidpoint ? "midpoint" : "gauss_legendre";
}

MomentumGrid MomentumGrid::finite(int n_sites) {
  if (n_sites < 2 || n_sites % 2 != 0)
    throw std::invalid_argument("finite momentum grid needs an even n_sites >= 2, got " +
                                std::to_string(n_sites));
  MomentumGrid grid;
  grid.n_sites_ = n_sites;
  const double w = 2.0 / n_sites;
  for (int m = 0; m < n_sites / 2; ++m)
    grid.points_.push_back({kPi * (2 * m + 1) / n_sites, w, w});
  return grid;
}

MomentumGrid MomentumGrid::thermodynamic(int n_points, QuadratureRule rule) {
  if (n_points < 2)
    throw std::invalid_argument("thermodynamic grid needs at least 2 points");
  MomentumGrid grid;
  grid.rule_ = rule;
  grid.points_.reserve(n_points);
  if (rule == QuadratureRule::kMidpoint) {
    const double w = kPi / n_points;
    for (int m = 0; m < n_points; ++m)
      grid.points_.push_back({(m + 0.5) * w, w, 1.0 / n_points});
  } else {
    std::vector<double> x;
    std::vector<double> w;
    gauss_legendre(n_points, x, w);
    for (int m = 0; m < n_points; ++m) {
      const double qw = 0.5 * kPi * w[m];
      grid.points_.push_back({0.5 * kPi * (x[m] + 1.0), qw, qw / kPi});
    }
  }
  return grid;
}

std::string MomentumGrid::describe() const {
  if (is_finite()) return "finite(n_sites=" + std::to_string(n_sites_) + ")";
  return "thermodynamic(M=" + std::to_string(points_.size()) + ", " + to_string(rule_) + ")";
}

MomentumGrid momentum_grid(const GridSpec& spec) {
  return std::visit(Overloaded{[](const FiniteGridSpec& s) { return MomentumGrid::finite(s.n_sites); },
                               [](const ThermodynamicGridSpec& s) {
                                 return MomentumGrid::thermodynamic(s.n_points, s.rule);
                               }},
                    spec);
}

}  // namespace quenchdist
