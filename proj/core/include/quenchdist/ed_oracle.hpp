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
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "quenchdist/fermion_corr.hpp"
#include "quenchdist/model.hpp"
#include "quenchdist/pauli.hpp"

namespace quenchdist::ed {

inline constexpr int kMaxSites = 14;

// Site j is bit (n - 1 - j) of the basis index, so site 0 is the most
// significant tensor factor. Bit value 0 is spin up (Z = +1).
using DenseState = Eigen::VectorXcd;
using DenseOperator = Eigen::MatrixXcd;

struct HamiltonianTerm {
  double coefficient;
  PauliString op;
};

/// Periodic-chain terms of the model. Throws std::invalid_argument when the
/// chain is shorter than one interaction range or longer than kMaxSites.
std::vector<HamiltonianTerm> hamiltonian_terms(const ModelSpec& model, int n_sites);

DenseOperator build_hamiltonian(const ModelSpec& model, int n_sites);
DenseOperator parity_operator(int n_sites);

DenseState apply_pauli(const PauliString& op, const DenseState& state);
cplx expectation(const DenseState& state, const PauliString& op);
double parity_expectation(const DenseState& state);

DenseState apply_majorana(int site, Majorana species, const DenseState& state);
/// <gamma_i gamma_k> with the pipeline's Jordan-Wigner convention.
cplx majorana_contraction(const DenseState& state, int site_i, Majorana a, int site_k,
                          Majorana b);

enum class Sector { kEven, kOdd };

/// Real symmetric block of H on the P_z = +1 (even) or -1 (odd) subspace,
/// with the basis indices it acts on.
struct SectorHamiltonian {
  std::vector<std::uint32_t> states;
  Eigen::MatrixXd matrix;
};
SectorHamiltonian sector_hamiltonian(const ModelSpec& model, int n_sites, Sector sector);

struct SectorGroundState {
  DenseState state;
  double energy;
  double sector_gap;  // to the next level in the same sector
};

/// Throws std::runtime_error when the sector ground state is degenerate.
SectorGroundState sector_ground_state(const ModelSpec& model, int n_sites, Sector sector);

struct ParityGroundStates {
  DenseState even_state;
  DenseState odd_state;
  double even_energy;
  double odd_energy;
  double gap;  // odd_energy - even_energy
};

ParityGroundStates parity_ground_states(const ModelSpec& model, int n_sites);
/// Same from a dense Hamiltonian; H must commute with P_z.
ParityGroundStates parity_ground_states(const DenseOperator& h);

/// exp(-i H t) from a full spectral decomposition of the requested sectors,
/// computed once. States with weight outside those sectors are rejected.
class SpectralPropagator {
 public:
  SpectralPropagator(const ModelSpec& model, int n_sites,
                     std::vector<Sector> sectors = {Sector::kEven, Sector::kOdd});

  int n_sites() const { return n_sites_; }
  DenseState evolve(const DenseState& state, double t) const;
  double energy(const DenseState& state) const;

 private:
  struct Block {
    std::vector<std::uint32_t> states;
    Eigen::MatrixXd vectors;
    Eigen::VectorXd values;
  };
  int n_sites_;
  std::vector<Block> blocks_;
};

DenseState evolve(const DenseState& state, const SpectralPropagator& propagator, double t);

/// Partial trace onto absolute sites (ascending, within the chain, at most
/// 4). The first site is the most significant index; index 0 is spin up.
Eigen::MatrixXcd reduced_density(const DenseState& state, const std::vector<int>& sites);

double oracle_distance(const DenseState& state_max, const DenseState& state_sym,
                       const std::vector<int>& sites);

/// (|e> + e^{i theta} |o>)/sqrt(2) with theta on a 64-point grid chosen to
/// maximize the order parameter on site 0 (X for XY, Y for cluster).
DenseState max_broken_state(const ParityGroundStates& gs, const ModelSpec& order,
                            int n_phases = 64);

/// Rows of the correlator CSV (same header as the pipeline) for
/// |r| <= r_max, measured around site r_max. Requires 2 r_max < n_sites.
void write_correlator_csv_rows(std::ostream& os, const DenseState& state, double t,
                               int r_max);

}  // namespace quenchdist::ed
