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

#include "quenchdist/quench.hpp"

#include <cmath>
#include <stdexcept>

namespace quenchdist {

EvolutionMatrix evolution_matrix(Dispersion d, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("evolution time must be >= 0");
  const double w = ground_energy(d);
  const double c = std::cos(w * t);
  const double sinc_t = (w == 0.0) ? t : std::sin(w * t) / w;
  const cplx u11(c, -2.0 * d.epsilon * sinc_t);
  const cplx u12(2.0 * d.delta * sinc_t, 0.0);
  return {u11, u12, -u12, std::conj(u11)};
}

QuenchEvolver::QuenchEvolver(QuenchProtocol protocol) : protocol_(std::move(protocol)) {
  validate(protocol_.initial);
  validate(protocol_.final_model);
  modes_.reserve(protocol_.grid.size());
  for (const auto& p : protocol_.grid.points()) {
    modes_.push_back({p.k, p.measure,
                      bogoliubov_amplitudes(dispersion(protocol_.initial, p.k)),
                      dispersion(protocol_.final_model, p.k)});
  }
}

EvolvedAmplitudes QuenchEvolver::at(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("evolution time must be >= 0");
  EvolvedAmplitudes out;
  out.t = t;
  out.modes.reserve(modes_.size());
  for (const auto& m : modes_) {
    const auto u = evolution_matrix(m.final_dispersion, t);
    out.modes.push_back({m.k, m.measure, u.u11 * m.initial.alpha + u.u12 * m.initial.beta,
                         u.u21 * m.initial.alpha + u.u22 * m.initial.beta});
  }
  return out;
}

EvolvedAmplitudes evolve_amplitudes(const QuenchProtocol& protocol, double t) {
  return QuenchEvolver(protocol).at(t);
}

}  // namespace quenchdist
