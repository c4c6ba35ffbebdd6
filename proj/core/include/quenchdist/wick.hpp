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

#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "quenchdist/fermion_corr.hpp"
#include "quenchdist/pauli.hpp"
#include "quenchdist/quench.hpp"

namespace quenchdist {

inline constexpr int kDefaultR = 100;
inline constexpr int kDefaultDeltaR = 10;
inline constexpr double kDefaultHorizonThreshold = 1e-9;
/// <W> in [-kClampTolerance, 0) is roundoff and clamps to 0; below aborts.
inline constexpr double kClampTolerance = 1e-9;

/// Raised when a factorized product is negative beyond roundoff.
class FactorizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Antisymmetric matrix of pairwise contractions, (p, q) = <gamma_p gamma_q>
/// for p < q; the lower triangle is the negated upper one.
Eigen::MatrixXcd contraction_matrix(const MajoranaMonomial& monomial,
                                    const CorrelatorTable& table);

/// Largest |r| any contraction of `op` needs from a table.
int required_table_range(const PauliString& op);

/// <op> on the evolved parity-symmetric state. Identity gives 1. Throws
/// std::invalid_argument for odd strings and std::out_of_range when the
/// table window is too narrow.
cplx symmetric_expectation(const PauliString& op, const CorrelatorTable& table);

/// s(R) <a b_{+R}> for odd a, b, where b_{+R} is b translated by R sites and
/// s(R) = broken_translation_sign(order, R) undoes the sign pattern of the
/// ordered state. Tends to <a><b> at large R. Throws std::invalid_argument
/// when the supports overlap.
double broken_cross_correlation(const PauliString& a, const PauliString& b,
                                const CorrelatorTable& table, int R,
                                const ModelSpec& order);

/// |<op>| in the maximally broken state, sqrt(s(R) <op op_{+R}>).
double broken_expectation(const PauliString& op, const CorrelatorTable& table, int R,
                          const ModelSpec& order);

/// |broken_expectation(R) - broken_expectation(R + delta_R)|; the table must
/// cover R + delta_R.
double factorization_drift(const PauliString& op, const CorrelatorTable& table, int R,
                           int delta_R, const ModelSpec& order);

/// First t in `times` whose factorization drift exceeds `threshold`, or
/// +infinity when none does. The order pattern is taken from the initial
/// model. Throws std::invalid_argument for threshold <= 0.
double validity_horizon(const PauliString& op, const QuenchEvolver& evolver,
                        const std::vector<double>& times, int R, int delta_R,
                        double threshold = kDefaultHorizonThreshold);

inline bool is_finite_horizon(double t_star) {
  return t_star < std::numeric_limits<double>::infinity();
}

}  // namespace quenchdist
