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

#include "quenchdist/rdm.hpp"

#include <algorithm>
#include <cmath>

namespace quenchdist {
namespace {

Eigen::Matrix2cd single_site(Axis a) {
  const cplx i(0.0, 1.0);
  Eigen::Matrix2cd m;
  switch (a) {
    case Axis::kI: m << 1, 0, 0, 1; break;
    case Axis::kX: m << 0, 1, 1, 0; break;
    case Axis::kY: m << 0, -i, i, 0; break;
    case Axis::kZ: m << 1, 0, 0, -1; break;
  }
  return m;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::Matrix2cd& b) {
  Eigen::MatrixXcd out(a.rows() * 2, a.cols() * 2);
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
  return out;
}

std::string translation_key(const PauliString& a, const PauliString& b) {
  const int base = std::min(a.min_site(), b.min_site());
  return a.without_identities().translated(-base).label() + "|" +
         b.without_identities().translated(-base).label();
}

// Reference odd operator whose sign fixes the global orientation of chi.
PauliString order_parameter_at(const ModelSpec& order, int site, int* desired_sign) {
  if (std::holds_alternative<ClusterIsingModel>(order)) {
    *desired_sign = (site % 2 == 0) ? 1 : -1;
    return PauliString({{site, Axis::kY}});
  }
  *desired_sign = 1;
  return PauliString({{site, Axis::kX}});
}

}  // namespace

SpinSubset::SpinSubset(std::vector<int> sites, int l_max) : sites_(std::move(sites)) {
  if (sites_.empty()) throw std::invalid_argument("SpinSubset: empty");
  if (static_cast<int>(sites_.size()) > l_max)
    throw std::invalid_argument("SpinSubset: size " + std::to_string(sites_.size()) +
                                " exceeds l_max " + std::to_string(l_max));
  std::sort(sites_.begin(), sites_.end());
  if (std::adjacent_find(sites_.begin(), sites_.end()) != sites_.end())
    throw std::invalid_argument("SpinSubset: repeated site");
}

std::string SpinSubset::label() const {
  std::string s = "S";
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    if (i > 0) s += '_';
    s += std::to_string(sites_[i]);
  }
  return s;
}

std::vector<BasisElement> enumerate_basis(const SpinSubset& subset, int l_max) {
  const int l = subset.size();
  if (l > l_max)
    throw std::invalid_argument("enumerate_basis: l = " + std::to_string(l) +
                                " exceeds l_max = " + std::to_string(l_max));
  const int count = 1 << (2 * l);
  std::vector<BasisElement> out;
  out.reserve(count);
  for (int idx = 0; idx < count; ++idx) {
    std::vector<PauliFactor> factors;
    for (int j = 0; j < l; ++j) {
      const int digit = (idx >> (2 * (l - 1 - j))) & 3;
      factors.push_back({subset.sites()[j], static_cast<Axis>(digit)});
    }
    PauliString op(std::move(factors));
    const Parity p = op.parity();
    out.push_back({std::move(op), p});
  }
  return out;
}

Eigen::MatrixXcd pauli_matrix(const PauliString& op, const SpinSubset& subset) {
  for (const auto& f : op.factors())
    if (f.axis != Axis::kI &&
        !std::binary_search(subset.sites().begin(), subset.sites().end(), f.site))
      throw std::invalid_argument("pauli_matrix: " + op.label() + " leaves subset " +
                                  subset.label());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Ones(1, 1);
  for (int site : subset.sites()) {
    Axis a = Axis::kI;
    for (const auto& f : op.factors())
      if (f.site == site) a = f.axis;
    m = kron(m, single_site(a));
  }
  return m;
}

void validate(const SuperpositionCoeffs& c) {
  const double norm = std::norm(c.u) + std::norm(c.v);
  if (std::abs(norm - 1.0) > 1e-12)
    throw std::invalid_argument("superposition coefficients not normalized: |u|^2+|v|^2 = " +
                                std::to_string(norm));
}

SliceEvaluator::SliceEvaluator(const CorrelatorTable& table, int R, ModelSpec order,
                               HorizonGuard guard)
    : table_(table), R_(R), order_(std::move(order)), guard_(guard) {}

void SliceEvaluator::check_horizon() const {
  if (t() >= guard_.t_star && !guard_.allow_unconverged)
    throw UnconvergedError("t = " + std::to_string(t()) + " is past the validity horizon " +
                           std::to_string(guard_.t_star));
}

cplx SliceEvaluator::even_expectation(const PauliString& op) {
  const std::string key = op.normalized().label();
  auto it = even_cache_.find(key);
  if (it != even_cache_.end()) return it->second;
  const cplx v = symmetric_expectation(op, table_);
  even_cache_.emplace(key, v);
  return v;
}

double SliceEvaluator::broken_magnitude(const PauliString& op) {
  const std::string key = op.normalized().label();
  auto it = magnitude_cache_.find(key);
  if (it != magnitude_cache_.end()) return it->second;
  const double v = broken_expectation(op.without_identities(), table_, R_, order_);
  magnitude_cache_.emplace(key, v);
  return v;
}

double SliceEvaluator::broken_cross(const PauliString& a, const PauliString& b) {
  const std::string key = translation_key(a, b);
  auto it = cross_cache_.find(key);
  if (it != cross_cache_.end()) return it->second;
  const double v =
      broken_cross_correlation(a.without_identities(), b.without_identities(), table_, R_, order_);
  cross_cache_.emplace(key, v);
  return v;
}

std::vector<double> SliceEvaluator::signed_broken(const SpinSubset& subset,
                                                  const std::vector<PauliString>& odd_ops) {
  std::vector<double> values(odd_ops.size(), 0.0);
  if (odd_ops.empty()) return values;
  std::size_t pivot = 0;
  for (std::size_t i = 0; i < odd_ops.size(); ++i) {
    values[i] = broken_magnitude(odd_ops[i]);
    if (values[i] > values[pivot]) pivot = i;
  }
  if (values[pivot] <= kBrokenNoiseFloor) return std::vector<double>(odd_ops.size(), 0.0);

  const PauliString pivot_op = odd_ops[pivot].without_identities();
  for (std::size_t i = 0; i < odd_ops.size(); ++i) {
    if (i == pivot) continue;
    if (values[i] <= kBrokenNoiseFloor) {
      values[i] = 0.0;
      continue;
    }
    if (broken_cross(odd_ops[i], pivot_op) < 0.0) values[i] = -values[i];
  }

  int desired = 1;
  const PauliString ref = order_parameter_at(order_, subset.sites().front(), &desired);
  if (broken_magnitude(ref) > 1e-6) {
    const int actual = ref == pivot_op ? 1 : (broken_cross(ref, pivot_op) < 0.0 ? -1 : 1);
    if (actual != desired)
      for (double& v : values) v = -v;
  }
  return values;
}

Eigen::MatrixXcd SliceEvaluator::rho_sym(const SpinSubset& subset) {
  const int dim = subset.dimension();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& e : enumerate_basis(subset)) {
    if (e.parity != Parity::kEven) continue;
    const cplx v = even_expectation(e.op);
    if (std::abs(v.imag()) > kConventionTolerance)
      throw std::logic_error("Hermitian string " + e.op.label() +
                             " has imaginary expectation " + std::to_string(v.imag()));
    rho += v.real() * pauli_matrix(e.op, subset);
  }
  return rho / static_cast<double>(dim);
}

Eigen::MatrixXcd SliceEvaluator::chi_tilde(const SpinSubset& subset) {
  check_horizon();
  const int dim = subset.dimension();
  std::vector<PauliString> odd;
  for (auto& e : enumerate_basis(subset))
    if (e.parity == Parity::kOdd) odd.push_back(std::move(e.op));
  const std::vector<double> values = signed_broken(subset, odd);
  Eigen::MatrixXcd chi = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < odd.size(); ++i)
    if (values[i] != 0.0) chi += values[i] * pauli_matrix(odd[i], subset);
  return chi / static_cast<double>(dim);
}

Eigen::MatrixXcd SliceEvaluator::rho(const SuperpositionCoeffs& c, const SpinSubset& subset) {
  validate(c);
  const double cross = 2.0 * (std::conj(c.u) * c.v).real();
  Eigen::MatrixXcd out = rho_sym(subset);
  if (cross != 0.0) out += cross * chi_tilde(subset);
  return out;
}

double SliceEvaluator::max_distance(const SpinSubset& subset) {
  const Eigen::MatrixXcd chi = chi_tilde(subset);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(chi, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Eigen::MatrixXcd build_rho_sym(const SpinSubset& subset, const CorrelatorTable& table) {
  // R and order are never consulted for parity-even strings.
  SliceEvaluator ev(table, kDefaultR, XYModel{});
  return ev.rho_sym(subset);
}

Eigen::MatrixXcd build_chi_tilde(const SpinSubset& subset, const CorrelatorTable& table,
                                 int R, const ModelSpec& order, HorizonGuard guard) {
  SliceEvaluator ev(table, R, order, guard);
  return ev.chi_tilde(subset);
}

Eigen::MatrixXcd build_rho(const SuperpositionCoeffs& c, const SpinSubset& subset,
                           const CorrelatorTable& table, int R, const ModelSpec& order,
                           HorizonGuard guard) {
  SliceEvaluator ev(table, R, order, guard);
  return ev.rho(c, subset);
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  const Eigen::MatrixXcd d = a - b;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (d + d.adjoint()),
                                                     Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double max_distance(const SpinSubset& subset, const CorrelatorTable& table, int R,
                    const ModelSpec& order, HorizonGuard guard) {
  SliceEvaluator ev(table, R, order, guard);
  return ev.max_distance(subset);
}

int required_table_range(const SpinSubset& subset, int R) { return subset.extent() + R; }

}  // namespace quenchdist
