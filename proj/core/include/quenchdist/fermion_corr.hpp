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

#include <iosfwd>
#include <vector>

#include "quenchdist/quench.hpp"

namespace quenchdist {

/// Residues above this abort evaluation: they signal a convention or
/// quadrature bug rather than roundoff.
inline constexpr double kConventionTolerance = 1e-9;

enum class Majorana { kA, kB };

/// Equal-time Majorana two-point functions on a window of signed distances
/// r = i - k:
///   f(r) = <A_i A_k>,  g(r) = <B_i A_k>,  h(r) = <B_i B_k>.
/// f and h share their imaginary part; Re f = delta_{r0}, Re h = -delta_{r0}.
class CorrelatorTable {
 public:
  CorrelatorTable(double t, int r_max, std::vector<double> g, std::vector<double> f_imag);

  double t() const { return t_; }
  int r_max() const { return r_max_; }

  /// Throw std::out_of_range naming r when |r| > r_max.
  cplx f(int r) const;
  double g(int r) const;
  cplx h(int r) const;

  /// <gamma_p gamma_q> for Majoranas at sites i (species a) and k (species b).
  cplx contraction(int site_i, Majorana a, int site_k, Majorana b) const;

 private:
  std::size_t index(int r) const;

  double t_;
  int r_max_;
  std::vector<double> g_;       // indexed by r + r_max
  std::vector<double> f_imag_;  // indexed by r + r_max
};

/// Single-distance evaluations straight from the momentum sums.
double g_func(const EvolvedAmplitudes& amps, int r);
cplx f_func(const EvolvedAmplitudes& amps, int r);
cplx h_func(const EvolvedAmplitudes& amps, int r);

/// One pass over the momentum grid filling |r| <= r_max. Sums run in
/// ascending k for every r, so results do not depend on scheduling.
CorrelatorTable build_table(const EvolvedAmplitudes& amps, int r_max);
CorrelatorTable build_table(const QuenchEvolver& evolver, double t, int r_max);

/// Header `t,r,f_re,f_im,g,h_re,h_im`.
void write_correlator_csv_header(std::ostream& os);
void write_correlator_csv_rows(std::ostream& os, const CorrelatorTable& table);

}  // namespace quenchdist
