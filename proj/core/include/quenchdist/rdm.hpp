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
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "quenchdist/fermion_corr.hpp"
#include "quenchdist/pauli.hpp"
#include "quenchdist/wick.hpp"

namespace quenchdist {

inline constexpr int kDefaultMaxSubsetSize = 4;

/// Ordered set of distinct relative site positions.
class SpinSubset {
 public:
  explicit SpinSubset(std::vector<int> sites, int l_max = kDefaultMaxSubsetSize);

  const std::vector<int>& sites() const { return sites_; }
  int size() const { return static_cast<int>(sites_.size()); }
  int dimension() const { return 1 << sites_.size(); }
  /// max - min of the sites.
  int extent() const { return sites_.back() - sites_.front(); }
  /// "S0_1_2": column label used in distance.csv.
  std::string label() const;

  friend bool operator==(const SpinSubset&, const SpinSubset&) = default;

 private:
  std::vector<int> sites_;
};

struct BasisElement {
  PauliString op;
  Parity parity;
};

/// All 4^l Pauli strings on S, lexicographic in (site, axis) with the first
/// site most significant and axes ordered I, X, Y, Z. Identity factors are
/// kept so every element spans all of S.
std::vector<BasisElement> enumerate_basis(const SpinSubset& subset,
                                          int l_max = kDefaultMaxSubsetSize);

/// Dense 2^l matrix of `op` on S. The first site of S is the most
/// significant tensor factor; index 0 is spin up (Z = +1).
Eigen::MatrixXcd pauli_matrix(const PauliString& op, const SpinSubset& subset);

struct SuperpositionCoeffs {
  cplx u{1.0, 0.0};
  cplx v{0.0, 0.0};
};

/// Throws std::invalid_argument unless |u|^2 + |v|^2 = 1 within 1e-12.
void validate(const SuperpositionCoeffs& c);

/// Raised when a broken-symmetry quantity is requested at t >= t_star.
class UnconvergedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HorizonGuard {
  double t_star = std::numeric_limits<double>::infinity();
  bool allow_unconverged = false;
};

/// Magnitudes below this are treated as exact zeros when attaching signs.
inline constexpr double kBrokenNoiseFloor = 1e-12;

/// Everything computed from one correlator table. Caches parity-even
/// expectations, broken magnitudes and sign probes by translation-normalized
/// keys so that overlapping subsets share Pfaffians. Not thread safe; use one
/// per time slice.
class SliceEvaluator {
 public:
  /// `order` is the model whose ordered pattern the broken state follows.
  SliceEvaluator(const CorrelatorTable& table, int R, ModelSpec order,
                 HorizonGuard guard = {});

  const CorrelatorTable& table() const { return table_; }
  int R() const { return R_; }
  double t() const { return table_.t(); }

  cplx even_expectation(const PauliString& op);
  double broken_magnitude(const PauliString& op);
  double broken_cross(const PauliString& a, const PauliString& b);

  /// Signed broken expectations for the odd strings of `odd_ops` (all on
  /// `subset`), oriented so that the order parameter on the first site of
  /// the subset follows the ordered pattern when it is resolvable, and
  /// otherwise so that the largest entry is positive.
  std::vector<double> signed_broken(const SpinSubset& subset,
                                    const std::vector<PauliString>& odd_ops);

  Eigen::MatrixXcd rho_sym(const SpinSubset& subset);
  Eigen::MatrixXcd chi_tilde(const SpinSubset& subset);
  Eigen::MatrixXcd rho(const SuperpositionCoeffs& c, const SpinSubset& subset);
  double max_distance(const SpinSubset& subset);

 private:
  void check_horizon() const;

  const CorrelatorTable& table_;
  int R_;
  ModelSpec order_;
  HorizonGuard guard_;
  std::map<std::string, cplx> even_cache_;
  std::map<std::string, double> magnitude_cache_;
  std::map<std::string, double> cross_cache_;
};

Eigen::MatrixXcd build_rho_sym(const SpinSubset& subset, const CorrelatorTable& table);
Eigen::MatrixXcd build_chi_tilde(const SpinSubset& subset, const CorrelatorTable& table,
                                 int R, const ModelSpec& order, HorizonGuard guard = {});
Eigen::MatrixXcd build_rho(const SuperpositionCoeffs& c, const SpinSubset& subset,
                           const CorrelatorTable& table, int R, const ModelSpec& order,
                           HorizonGuard guard = {});

/// (1/2) sum |eig(a - b)|. Throws std::invalid_argument on shape mismatch.
double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// (1/2) sum |nu_i| over the spectrum of chi_tilde.
double max_distance(const SpinSubset& subset, const CorrelatorTable& table, int R,
                    const ModelSpec& order, HorizonGuard guard = {});

/// Table window needed to evaluate every string on S at separation R.
int required_table_range(const SpinSubset& subset, int R);

}  // namespace quenchdist
