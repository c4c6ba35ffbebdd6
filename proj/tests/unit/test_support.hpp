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

#include <random>

#include <Eigen/Dense>

#include "quenchdist/model.hpp"

namespace quenchdist::testing {

// exp(A) by scaling and squaring with a 30-term Taylor series.
inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
  int squarings = 0;
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  const Eigen::MatrixXcd x = a / std::pow(2.0, squarings);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd sum = term;
  for (int n = 1; n <= 30; ++n) {
    term = term * x / static_cast<double>(n);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

inline Eigen::MatrixXcd random_antisymmetric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = cplx(d(rng), d(rng));
      m(j, i) = -m(i, j);
    }
  return m;
}

}  // namespace quenchdist::testing
