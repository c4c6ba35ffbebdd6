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

#include "quenchdist/fermion_corr.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "quenchdist/io.hpp"

namespace quenchdist {

CorrelatorTable::CorrelatorTable(double t, int r_max, std::vector<double> g,
                                 std::vector<double> f_imag)
    : t_(t), r_max_(r_max), g_(std::move(g)), f_imag_(std::move(f_imag)) {
  if (r_max_ < 0 || g_.size() != static_cast<std::size_t>(2 * r_max_ + 1) ||
      f_imag_.size() != g_.size())
    throw std::invalid_argument("CorrelatorTable: inconsistent window size");
}

std::size_t CorrelatorTable::index(int r) const {
  if (r < -r_max_ || r > r_max_)
    throw std::out_of_range("correlator table has no entry for r = " + std::to_string(r) +
                            " (window is |r| <= " + std::to_string(r_max_) + ")");
  return static_cast<std::size_t>(r + r_max_);
}

cplx CorrelatorTable::f(int r) const { return {r == 0 ? 1.0 : 0.0, f_imag_[index(r)]}; }

double CorrelatorTable::g(int r) const { return g_[index(r)]; }

cplx CorrelatorTable::h(int r) const { return {r == 0 ? -1.0 : 0.0, f_imag_[index(r)]}; }

cplx CorrelatorTable::contraction(int site_i, Majorana a, int site_k, Majorana b) const {
  const int r = site_i - site_k;
  if (a == Majorana::kA && b == Majorana::kA) return f(r);
  if (a == Majorana::kB && b == Majorana::kB) return h(r);
  if (a == Majorana::kB) return g(r);
  // <A_i B_k> = -<B_k A_i>, also for i == k since {A_i, B_i} = 0.
  return -g(-r);
}

double g_func(const EvolvedAmplitudes& amps, int r) {
  cplx sum = 0.0;
  for (const auto& m : amps.modes) {
    const double kr = m.k * r;
    const double occ = std::norm(m.beta) - std::norm(m.alpha);
    const cplx cross = std::conj(m.alpha) * m.beta - m.alpha * std::conj(m.beta);
    sum += m.measure * (occ * std::cos(kr) + cplx(0.0, 1.0) * cross * std::sin(kr));
  }
  if (std::abs(sum.imag()) > kConventionTolerance)
    throw std::runtime_error("g(r=" + std::to_string(r) + ") has imaginary residue " +
                             std::to_string(sum.imag()));
  return sum.real();
}

cplx f_func(const EvolvedAmplitudes& amps, int r) {
  cplx sum = 0.0;
  for (const auto& m : amps.modes) {
    const cplx pair = std::conj(m.alpha) * m.beta + m.alpha * std::conj(m.beta);
    sum += m.measure * pair * std::sin(m.k * r);
  }
  const cplx f = (r == 0 ? 1.0 : 0.0) - cplx(0.0, 1.0) * sum;
  if (std::abs(f.real() - (r == 0 ? 1.0 : 0.0)) > kConventionTolerance)
    throw std::runtime_error("f(r=" + std::to_string(r) + ") real part drifted from delta_r0");
  return f;
}

cplx h_func(const EvolvedAmplitudes& amps, int r) {
  return f_func(amps, r) - (r == 0 ? 2.0 : 0.0);
}

CorrelatorTable build_table(const EvolvedAmplitudes& amps, int r_max) {
  if (r_max < 0) throw std::invalid_argument("r_max must be >= 0");
  const std::size_t n = static_cast<std::size_t>(r_max) + 1;
  std::vector<double> even(n, 0.0);    // sum w (|b|^2 - |a|^2) cos kr
  std::vector<double> odd_g(n, 0.0);   // sum w (-2 Im a*b) sin kr
  std::vector<double> odd_f(n, 0.0);   // sum w (-2 Re a*b) sin kr
  for (const auto& m : amps.modes) {
    const double occ = m.measure * (std::norm(m.beta) - std::norm(m.alpha));
    const cplx z = std::conj(m.alpha) * m.beta;
    const double sg = -2.0 * m.measure * z.imag();
    const double sf = -2.0 * m.measure * z.real();
    for (std::size_t r = 0; r < n; ++r) {
      const double kr = m.k * static_cast<double>(r);
      const double c = std::cos(kr);
      const double s = std::sin(kr);
      even[r] += occ * c;
      odd_g[r] += sg * s;
      odd_f[r] += sf * s;
    }
  }
  std::vector<double> g(2 * n - 1);
  std::vector<double> fi(2 * n - 1);
  for (std::size_t r = 0; r < n; ++r) {
    g[r_max + r] = even[r] + odd_g[r];
    g[r_max - r] = even[r] - odd_g[r];
    fi[r_max + r] = odd_f[r];
    fi[r_max - r] = -odd_f[r];
  }
  return CorrelatorTable(amps.t, r_max, std::move(g), std::move(fi));
}

CorrelatorTable build_table(const QuenchEvolver& evolver, double t, int r_max) {
  return build_table(evolver.at(t), r_max);
}

void write_correlator_csv_header(std::ostream& os) { os << "t,r,f_re,f_im,g,h_re,h_im\n"; }

void write_correlator_csv_rows(std::ostream& os, const CorrelatorTable& table) {
  for (int r = -table.r_max(); r <= table.r_max(); ++r) {
    const cplx f = table.f(r);
    const cplx h = table.h(r);
    os << format_double(table.t()) << ',' << r << ',' << format_double(f.real()) << ','
       << format_double(f.imag()) << ',' << format_double(table.g(r)) << ','
       << format_double(h.real()) << ',' << format_double(h.imag()) << '\n';
  }
}

}  // namespace quenchdist
