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

#include <complex>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace quenchdist {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// H = -sum[(1+gamma)/2 XX + (1-gamma)/2 YY] - h sum Z
struct XYModel {
  double gamma = 1.0;
  double h = 0.0;
};

// H = -cos(phi) sum X_j Z_{j+1}..Z_{j+N} X_{j+N+1} + sin(phi) sum Y_j Y_{j+1}
struct ClusterIsingModel {
  int cluster_size = 1;
  double phi = kPi / 4;
};

using ModelSpec = std::variant<XYModel, ClusterIsingModel>;

/// Throws std::invalid_argument when parameters leave the model's domain.
void validate(const ModelSpec& model);

/// True inside the symmetry-broken phase (boundary included: the order
/// parameter is defined there and vanishes).
bool in_ordered_phase(const ModelSpec& model);

std::string describe(const ModelSpec& model);

/// Sign picked up by an odd (parity-breaking) correlator in the maximally
/// broken state when it is translated by `shift` sites: +1 for the
/// ferromagnetic XY order, (-1)^shift for the staggered cluster order.
int broken_translation_sign(const ModelSpec& model, int shift);

struct Dispersion {
  double epsilon = 0.0;
  double delta = 0.0;
};

Dispersion dispersion(const ModelSpec& model, double k);

/// Ground energy of the (k,-k) block: -2 sqrt(eps^2 + delta^2).
double ground_energy(double epsilon, double delta);
inline double ground_energy(Dispersion d) { return ground_energy(d.epsilon, d.delta); }

/// Amplitudes of |1_k 1_-k> (alpha) and |0_k 0_-k> (beta) in the block
/// ground state. alpha is purely imaginary, beta real.
struct ModeAmplitude {
  cplx alpha;
  cplx beta;
};

ModeAmplitude bogoliubov_amplitudes(double epsilon, double delta);
inline ModeAmplitude bogoliubov_amplitudes(Dispersion d) {
  return bogoliubov_amplitudes(d.epsilon, d.delta);
}

/// Closed-form magnitude of the order parameter: <sigma^x> for XY,
/// (-1)^i <sigma^y_i> for the cluster chain. Throws std::domain_error
/// outside the ordered phase.
double analytic_order_parameter(const ModelSpec& model);

enum class QuadratureRule { kMidpoint, kGaussLegendre };

QuadratureRule parse_quadrature_rule(const std::string& name);
std::string to_string(QuadratureRule rule);

struct MomentumPoint {
  double k = 0.0;
  // Raw weight: 2/n_sites on a finite ring, quadrature weight on (0, pi)
  // in the thermodynamic limit (sums to pi).
  double weight = 0.0;
  // Normalized measure replacing 2/N in the momentum sums (sums to 1).
  double measure = 0.0;
};

/// Ordered set of positive momenta with weights.
///
/// Finite grids use the antiperiodic (even fermion parity) modes
/// k = pi (2m + 1) / n_sites, which is the sector holding the even ground
/// state of a periodic spin chain. Thermodynamic grids discretize the
/// normalized integral over (0, pi).
class MomentumGrid {
 public:
  static MomentumGrid finite(int n_sites);
  static MomentumGrid thermodynamic(int n_points,
                                    QuadratureRule rule = QuadratureRule::kMidpoint);

  bool is_finite() const { return n_sites_ > 0; }
  int n_sites() const { return n_sites_; }
  QuadratureRule rule() const { return rule_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<MomentumPoint>& points() const { return points_; }
  const MomentumPoint& operator[](std::size_t i) const { return points_[i]; }

  std::string describe() const;

 private:
  MomentumGrid() = default;

  int n_sites_ = 0;
  QuadratureRule rule_ = QuadratureRule::kMidpoint;
  std::vector<MomentumPoint> points_;
};

/// Same as MomentumGrid::finite / ::thermodynamic; kept as a free function
/// for symmetry with the other module entry points.
struct FiniteGridSpec {
  int n_sites = 0;
};
struct ThermodynamicGridSpec {
  int n_points = 4096;
  QuadratureRule rule = QuadratureRule::kMidpoint;
};
using GridSpec = std::variant<FiniteGridSpec, ThermodynamicGridSpec>;

MomentumGrid momentum_grid(const GridSpec& spec);

}  // namespace quenchdist
