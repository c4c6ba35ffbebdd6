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

#include <vector>

#include "quenchdist/model.hpp"

namespace quenchdist {

struct QuenchProtocol {
  ModelSpec initial;
  ModelSpec final_model;
  MomentumGrid grid;
};

/// Entries of exp(-i H_k t) on the (|1_k 1_-k>, |0_k 0_-k>) block.
struct EvolutionMatrix {
  cplx u11, u12, u21, u22;
};

/// Exact propagator of the 2x2 block [[2e, 2i d], [-2i d, -2e]].
///
/// With w = -2 sqrt(e^2 + d^2):
///   U11 = cos(wt) - i (2e/w) sin(wt),  U12 = (2d/w) sin(wt),
///   U21 = -U12,                        U22 = conj(U11).
/// The w -> 0 limit uses sin(wt)/w -> t.
EvolutionMatrix evolution_matrix(Dispersion final_dispersion, double t);

struct EvolvedMode {
  double k;
  double measure;
  cplx alpha;
  cplx beta;
};

struct EvolvedAmplitudes {
  double t = 0.0;
  std::vector<EvolvedMode> modes;
};

/// Precomputes the per-mode data of a protocol (initial amplitudes and final
/// dispersion) so that snapshots at many times are cheap. Immutable after
/// construction; `at` is safe to call concurrently.
class QuenchEvolver {
 public:
  explicit QuenchEvolver(QuenchProtocol protocol);

  const QuenchProtocol& protocol() const { return protocol_; }
  const MomentumGrid& grid() const { return protocol_.grid; }

  EvolvedAmplitudes at(double t) const;

 private:
  struct ModeData {
    double k;
    double measure;
    ModeAmplitude initial;
    Dispersion final_dispersion;
  };

  QuenchProtocol protocol_;
  std::vector<ModeData> modes_;
};

EvolvedAmplitudes evolve_amplitudes(const QuenchProtocol& protocol, double t);

}  // namespace quenchdist
