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

#include "quenchdist/wick.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quenchdist/pfaffian.hpp"

namespace quenchdist {
namespace {

void require_odd(const PauliString& op) {
  if (op.is_identity() || op.parity() != Parity::kOdd)
    throw std::invalid_argument("broken correlator requested for parity-even string " +
                                op.label());
}

double real_part_checked(cplx value, const PauliString& op) {
  if (std::abs(value.imag()) > kConventionTolerance)
    throw std::logic_error("Hermitian string " + op.label() +
                           " has imaginary expectation " + std::to_string(value.imag()));
  return value.real();
}

}  // namespace

Eigen::MatrixXcd contraction_matrix(const MajoranaMonomial& monomial,
                                    const CorrelatorTable& table) {
  const auto n = static_cast<Eigen::Index>(monomial.factors.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index p = 0; p < n; ++p) {
    const auto& fp = monomial.factors[p];
    for (Eigen::Index q = p + 1; q < n; ++q) {
      const auto& fq = monomial.factors[q];
      const cplx c = table.contraction(fp.site, fp.species, fq.site, fq.species);
      m(p, q) = c;
      m(q, p) = -c;
    }
  }
  return m;
}

int required_table_range(const PauliString& op) {
  if (op.is_identity()) return 0;
  return op.max_site() - op.min_site();
}

cplx symmetric_expectation(const PauliString& op, const CorrelatorTable& table) {
  if (op.is_identity()) return {1.0, 0.0};
  if (op.parity() != Parity::kEven)
    throw std::invalid_argument("symmetric expectation of odd string " + op.label() +
                                " vanishes by parity; use broken_expectation");
  const MajoranaMonomial mono = pauli_to_majorana(op);
  if (mono.factors.size() % 2 == 1) return {0.0, 0.0};
  if (mono.factors.empty()) return mono.prefactor;
  Eigen::MatrixXcd m = contraction_matrix(mono, table);
  return mono.prefactor * pfaffian_inplace(m);
}

double broken_cross_correlation(const PauliString& a, const PauliString& b,
                                const CorrelatorTable& table, int R, const ModelSpec& order) {
  require_odd(a);
  require_odd(b);
  const PauliString w = a * b.translated(R);
  return broken_translation_sign(order, R) *
         real_part_checked(symmetric_expectation(w, table), w);
}

double broken_expectation(const PauliString& op, const CorrelatorTable& table, int R,
                          const ModelSpec& order) {
  const double w = broken_cross_correlation(op, op, table, R, order);
  if (w < -kClampTolerance)
    throw FactorizationError("factorized product for " + op.label() + " at R=" +
                             std::to_string(R) + " is negative: " + std::to_string(w));
  return std::sqrt(std::max(w, 0.0));
}

double factorization_drift(const PauliString& op, const CorrelatorTable& table, int R,
                           int delta_R, const ModelSpec& order) {
  return std::abs(broken_expectation(op, table, R, order) -
                  broken_expectation(op, table, R + delta_R, order));
}

double validity_horizon(const PauliString& op, const QuenchEvolver& evolver,
                        const std::vector<double>& times, int R, int delta_R,
                        double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("validity_horizon: threshold must be > 0");
  if (delta_R <= 0) throw std::invalid_argument("validity_horizon: delta_R must be > 0");
  const int r_max = required_table_range(op) + R + delta_R;
  const ModelSpec& order = evolver.protocol().initial;
  for (double t : times) {
    const CorrelatorTable table = build_table(evolver, t, r_max);
    double drift;
    try {
      drift = factorization_drift(op, table, R, delta_R, order);
    } catch (const FactorizationError&) {
      return t;
    }
    if (drift > threshold) return t;
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace quenchdist
