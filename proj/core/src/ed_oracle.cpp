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

#include "quenchdist/ed_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "quenchdist/io.hpp"
#include "quenchdist/rdm.hpp"

namespace quenchdist::ed {
namespace {

int sites_of(const DenseState& state) {
  const auto dim = static_cast<std::uint64_t>(state.size());
  if (dim == 0 || !std::has_single_bit(dim))
    throw std::invalid_argument("state dimension is not a power of two");
  return std::countr_zero(dim);
}

void check_sites(int n_sites) {
  if (n_sites < 2 || n_sites > kMaxSites)
    throw std::invalid_argument("oracle chain length " + std::to_string(n_sites) +
                                " outside [2, " + std::to_string(kMaxSites) + "]");
}

// Action of a Pauli string on basis states: |s> -> phase(s) |s ^ flip>.
struct PauliAction {
  std::uint32_t flip = 0;
  std::uint32_t sign_mask = 0;  // bits whose value 1 contributes a -1
  cplx base{1.0, 0.0};          // i^{number of Y}

  cplx phase(std::uint32_t s) const {
    return (std::popcount(s & sign_mask) % 2 == 0) ? base : -base;
  }
};

PauliAction action_of(const PauliString& op, int n) {
  PauliAction a;
  for (const auto& f : op.factors()) {
    if (f.site < 0 || f.site >= n)
      throw std::invalid_argument("site " + std::to_string(f.site) + " outside chain of " +
                                  std::to_string(n));
    const std::uint32_t bit = 1u << (n - 1 - f.site);
    switch (f.axis) {
      case Axis::kI: break;
      case Axis::kX: a.flip |= bit; break;
      case Axis::kY:
        a.flip |= bit;
        a.sign_mask |= bit;
        a.base *= cplx(0.0, 1.0);
        break;
      case Axis::kZ: a.sign_mask |= bit; break;
    }
  }
  return a;
}

PauliString wrapped(std::vector<PauliFactor> factors, int n) {
  for (auto& f : factors) f.site = ((f.site % n) + n) % n;
  std::sort(factors.begin(), factors.end(),
            [](const PauliFactor& x, const PauliFactor& y) { return x.site < y.site; });
  return PauliString(std::move(factors));
}

bool in_sector(std::uint32_t s, Sector sector) {
  // P_z = (-1)^{number of down spins}
  return (std::popcount(s) % 2 == 0) == (sector == Sector::kEven);
}

std::vector<std::uint32_t> sector_states(int n, Sector sector) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < (1u << n); ++s)
    if (in_sector(s, sector)) out.push_back(s);
  return out;
}

DenseState embed(const std::vector<std::uint32_t>& states, const Eigen::VectorXd& v, int n) {
  DenseState out = DenseState::Zero(std::size_t{1} << n);
  for (std::size_t i = 0; i < states.size(); ++i) out[states[i]] = v[i];
  return out;
}

Eigen::MatrixXd sector_block(const DenseOperator& h, const std::vector<std::uint32_t>& states) {
  const auto m = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      const cplx v = h(states[i], states[j]);
      if (std::abs(v.imag()) > 1e-12)
        throw std::invalid_argument("Hamiltonian block is not real");
      out(i, j) = v.real();
    }
  return out;
}

SectorGroundState lowest(const std::vector<std::uint32_t>& states, const Eigen::MatrixXd& h,
                         int n) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("sector diagonalization failed");
  const auto& e = es.eigenvalues();
  const double gap = e.size() > 1 ? e[1] - e[0] : std::numeric_limits<double>::infinity();
  if (gap < 1e-10)
    throw std::runtime_error("degenerate sector ground state: E0 = " + std::to_string(e[0]) +
                             ", E1 = " + std::to_string(e[1]));
  return {embed(states, es.eigenvectors().col(0), n), e[0], gap};
}

}  // namespace

std::vector<HamiltonianTerm> hamiltonian_terms(const ModelSpec& model, int n_sites) {
  check_sites(n_sites);
  validate(model);
  std::vector<HamiltonianTerm> terms;
  if (const auto* xy = std::get_if<XYModel>(&model)) {
    for (int j = 0; j < n_sites; ++j) {
      terms.push_back({-(1.0 + xy->gamma) / 2.0,
                       wrapped({{j, Axis::kX}, {j + 1, Axis::kX}}, n_sites)});
      terms.push_back({-(1.0 - xy->gamma) / 2.0,
                       wrapped({{j, Axis::kY}, {j + 1, Axis::kY}}, n_sites)});
      terms.push_back({-xy->h, PauliString({{j, Axis::kZ}})});
    }
  } else {
    const auto& c = std::get<ClusterIsingModel>(model);
    const int range = c.cluster_size + 2;
    if (n_sites < range)
      throw std::invalid_argument("chain of " + std::to_string(n_sites) +
                                  " sites is shorter than the cluster range " +
                                  std::to_string(range));
    for (int j = 0; j < n_sites; ++j) {
      std::vector<PauliFactor> cluster{{j, Axis::kX}};
      for (int m = 1; m <= c.cluster_size; ++m) cluster.push_back({j + m, Axis::kZ});
      cluster.push_back({j + c.cluster_size + 1, Axis::kX});
      terms.push_back({-std::cos(c.phi), wrapped(std::move(cluster), n_sites)});
      terms.push_back({std::sin(c.phi), wrapped({{j, Axis::kY}, {j + 1, Axis::kY}}, n_sites)});
    }
  }
  return terms;
}

DenseOperator build_hamiltonian(const ModelSpec& model, int n_sites) {
  const auto terms = hamiltonian_terms(model, n_sites);
  const std::uint32_t dim = 1u << n_sites;
  DenseOperator h = DenseOperator::Zero(dim, dim);
  for (const auto& term : terms) {
    const PauliAction a = action_of(term.op, n_sites);
    for (std::uint32_t s = 0; s < dim; ++s) h(s ^ a.flip, s) += term.coefficient * a.phase(s);
  }
  return h;
}

DenseOperator parity_operator(int n_sites) {
  check_sites(n_sites);
  const std::uint32_t dim = 1u << n_sites;
  DenseOperator p = DenseOperator::Zero(dim, dim);
  for (std::uint32_t s = 0; s < dim; ++s) p(s, s) = (std::popcount(s) % 2 == 0) ? 1.0 : -1.0;
  return p;
}

DenseState apply_pauli(const PauliString& op, const DenseState& state) {
  const int n = sites_of(state);
  const PauliAction a = action_of(op, n);
  DenseState out(state.size());
  for (std::uint32_t s = 0; s < state.size(); ++s) out[s ^ a.flip] = a.phase(s) * state[s];
  return out;
}

cplx expectation(const DenseState& state, const PauliString& op) {
  return state.dot(apply_pauli(op, state));
}

double parity_expectation(const DenseState& state) {
  double p = 0.0;
  for (std::uint32_t s = 0; s < state.size(); ++s)
    p += (std::popcount(s) % 2 == 0 ? 1.0 : -1.0) * std::norm(state[s]);
  return p;
}

DenseState apply_majorana(int site, Majorana species, const DenseState& state) {
  // A_j = (prod_{m<j} Z_m) X_j,  B_j = (prod_{m<j} Z_m)(-i Y_j)
  std::vector<PauliFactor> f;
  for (int m = 0; m < site; ++m) f.push_back({m, Axis::kZ});
  f.push_back({site, species == Majorana::kA ? Axis::kX : Axis::kY});
  DenseState out = apply_pauli(PauliString(std::move(f)), state);
  if (species == Majorana::kB) out *= cplx(0.0, -1.0);
  return out;
}

cplx majorana_contraction(const DenseState& state, int site_i, Majorana a, int site_k,
                          Majorana b) {
  return state.dot(apply_majorana(site_i, a, apply_majorana(site_k, b, state)));
}

SectorHamiltonian sector_hamiltonian(const ModelSpec& model, int n_sites, Sector sector) {
  const auto terms = hamiltonian_terms(model, n_sites);
  SectorHamiltonian out;
  out.states = sector_states(n_sites, sector);
  std::vector<std::int32_t> index(std::size_t{1} << n_sites, -1);
  for (std::size_t i = 0; i < out.states.size(); ++i)
    index[out.states[i]] = static_cast<std::int32_t>(i);
  const auto m = static_cast<Eigen::Index>(out.states.size());
  out.matrix = Eigen::MatrixXd::Zero(m, m);
  for (const auto& term : terms) {
    const PauliAction a = action_of(term.op, n_sites);
    for (Eigen::Index col = 0; col < m; ++col) {
      const std::uint32_t s = out.states[col];
      const cplx ph = a.phase(s);
      if (ph.imag() != 0.0) throw std::logic_error("non-real Hamiltonian term " + term.op.label());
      out.matrix(index[s ^ a.flip], col) += term.coefficient * ph.real();
    }
  }
  return out;
}

SectorGroundState sector_ground_state(const ModelSpec& model, int n_sites, Sector sector) {
  const SectorHamiltonian sh = sector_hamiltonian(model, n_sites, sector);
  return lowest(sh.states, sh.matrix, n_sites);
}

ParityGroundStates parity_ground_states(const ModelSpec& model, int n_sites) {
  const SectorGroundState e = sector_ground_state(model, n_sites, Sector::kEven);
  const SectorGroundState o = sector_ground_state(model, n_sites, Sector::kOdd);
  return {e.state, o.state, e.energy, o.energy, o.energy - e.energy};
}

ParityGroundStates parity_ground_states(const DenseOperator& h) {
  const auto dim = static_cast<std::uint64_t>(h.rows());
  if (h.rows() != h.cols() || !std::has_single_bit(dim))
    throw std::invalid_argument("Hamiltonian dimension is not a power of two");
  const int n = std::countr_zero(dim);
  const DenseOperator p = parity_operator(n);
  if ((h * p - p * h).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("Hamiltonian does not commute with P_z");
  const auto even = sector_states(n, Sector::kEven);
  const auto odd = sector_states(n, Sector::kOdd);
  const SectorGroundState e = lowest(even, sector_block(h, even), n);
  const SectorGroundState o = lowest(odd, sector_block(h, odd), n);
  return {e.state, o.state, e.energy, o.energy, o.energy - e.energy};
}

SpectralPropagator::SpectralPropagator(const ModelSpec& model, int n_sites,
                                       std::vector<Sector> sectors)
    : n_sites_(n_sites) {
  for (Sector sector : sectors) {
    SectorHamiltonian sh = sector_hamiltonian(model, n_sites, sector);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sh.matrix);
    if (es.info() != Eigen::Success) throw std::runtime_error("sector diagonalization failed");
    blocks_.push_back({std::move(sh.states), es.eigenvectors(), es.eigenvalues()});
  }
}

DenseState SpectralPropagator::evolve(const DenseState& state, double t) const {
  if (t < 0.0) throw std::invalid_argument("evolve: t must be >= 0");
  if (sites_of(state) != n_sites_) throw std::invalid_argument("evolve: chain length mismatch");
  DenseState out = DenseState::Zero(state.size());
  double covered = 0.0;
  for (const auto& b : blocks_) {
    const auto m = static_cast<Eigen::Index>(b.states.size());
    Eigen::VectorXcd local(m);
    for (Eigen::Index i = 0; i < m; ++i) local[i] = state[b.states[i]];
    covered += local.squaredNorm();
    Eigen::VectorXcd coeff = b.vectors.transpose().cast<cplx>() * local;
    for (Eigen::Index i = 0; i < m; ++i) coeff[i] *= std::polar(1.0, -b.values[i] * t);
    const Eigen::VectorXcd back = b.vectors.cast<cplx>() * coeff;
    for (Eigen::Index i = 0; i < m; ++i) out[b.states[i]] = back[i];
  }
  if (std::abs(covered - state.squaredNorm()) > 1e-12)
    throw std::invalid_argument("evolve: state has weight outside the diagonalized sectors");
  return out;
}

double SpectralPropagator::energy(const DenseState& state) const {
  double e = 0.0;
  for (const auto& b : blocks_) {
    const auto m = static_cast<Eigen::Index>(b.states.size());
    Eigen::VectorXcd local(m);
    for (Eigen::Index i = 0; i < m; ++i) local[i] = state[b.states[i]];
    const Eigen::VectorXcd coeff = b.vectors.transpose().cast<cplx>() * local;
    e += (coeff.cwiseAbs2().array() * b.values.array()).sum();
  }
  return e;
}

DenseState evolve(const DenseState& state, const SpectralPropagator& propagator, double t) {
  return propagator.evolve(state, t);
}

Eigen::MatrixXcd reduced_density(const DenseState& state, const std::vector<int>& sites) {
  const int n = sites_of(state);
  if (sites.empty() || sites.size() > 4)
    throw std::invalid_argument("reduced_density: subset size must be 1..4");
  for (std::size_t i = 0; i < sites.size(); ++i)
    if (sites[i] < 0 || sites[i] >= n || (i > 0 && sites[i] <= sites[i - 1]))
      throw std::invalid_argument("reduced_density: sites must be ascending within the chain");
  const int l = static_cast<int>(sites.size());
  std::vector<std::uint32_t> bits(l);
  std::uint32_t mask = 0;
  for (int i = 0; i < l; ++i) {
    bits[i] = 1u << (n - 1 - sites[i]);
    mask |= bits[i];
  }
  auto place = [&](int a) {
    std::uint32_t s = 0;
    for (int i = 0; i < l; ++i)
      if ((a >> (l - 1 - i)) & 1) s |= bits[i];
    return s;
  };
  auto extract = [&](std::uint32_t s) {
    int a = 0;
    for (int i = 0; i < l; ++i) a = (a << 1) | ((s & bits[i]) ? 1 : 0);
    return a;
  };
  const int dim = 1 << l;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint32_t s = 0; s < state.size(); ++s) {
    if (state[s] == cplx(0.0, 0.0)) continue;
    const int a = extract(s);
    const std::uint32_t env = s & ~mask;
    for (int b = 0; b < dim; ++b) rho(a, b) += state[s] * std::conj(state[env | place(b)]);
  }
  return rho;
}

double oracle_distance(const DenseState& state_max, const DenseState& state_sym,
                       const std::vector<int>& sites) {
  return trace_distance(reduced_density(state_max, sites), reduced_density(state_sym, sites));
}

DenseState max_broken_state(const ParityGroundStates& gs, const ModelSpec& order,
                            int n_phases) {
  if (n_phases < 1) throw std::invalid_argument("max_broken_state: n_phases must be >= 1");
  const PauliString ref(
      {{0, std::holds_alternative<ClusterIsingModel>(order) ? Axis::kY : Axis::kX}});
  DenseState best;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int m = 0; m < n_phases; ++m) {
    const double theta = 2.0 * kPi * m / n_phases;
    DenseState s = (gs.even_state + std::polar(1.0, theta) * gs.odd_state) / std::sqrt(2.0);
    const double v = expectation(s, ref).real();
    if (v > best_value) {
      best_value = v;
      best = std::move(s);
    }
  }
  return best;
}

void write_correlator_csv_rows(std::ostream& os, const DenseState& state, double t,
                               int r_max) {
  const int n = sites_of(state);
  if (2 * r_max >= n)
    throw std::invalid_argument("write_correlator_csv_rows: 2 r_max must be below n_sites");
  const int k = r_max;
  for (int r = -r_max; r <= r_max; ++r) {
    const int i = k + r;
    const cplx f = majorana_contraction(state, i, Majorana::kA, k, Majorana::kA);
    const cplx g = majorana_contraction(state, i, Majorana::kB, k, Majorana::kA);
    const cplx h = majorana_contraction(state, i, Majorana::kB, k, Majorana::kB);
    os << format_double(t) << ',' << r << ',' << format_double(f.real()) << ','
       << format_double(f.imag()) << ',' << format_double(g.real()) << ','
       << format_double(h.real()) << ',' << format_double(h.imag()) << '\n';
  }
}

}  // namespace quenchdist::ed
